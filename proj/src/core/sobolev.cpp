#include "invlab/core/sobolev.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "invlab/core/spectral.hpp"

namespace invlab {
namespace {

std::vector<std::array<int, 3>> multi_indices(int dim, int max_order) {
  std::vector<std::array<int, 3>> out;
  for (int a = 0; a <= max_order; ++a)
    for (int b = 0; b <= max_order - a; ++b)
      for (int c = 0; c <= (dim == 3 ? max_order - a - b : 0); ++c) out.push_back({a, b, c});
  return out;
}

}  // namespace

double weighted_sobolev_norm(const ComplexField& f, const SobolevSpec& spec, const Vec3& kappa) {
  if (spec.s < 0) throw ParameterError("Sobolev order must be non-negative");
  const Grid& g = f.grid();
  const Vec3 c = g.center();
  std::vector<double> weight(g.size(), 1.0);
  if (spec.delta != 0.0) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Vec3 x = g.position(i);
      double r2 = 0.0;
      for (int d = 0; d < g.dim(); ++d) r2 += (x[d] - c[d]) * (x[d] - c[d]);
      weight[i] = std::pow(1.0 + r2, spec.delta);
    }
  }
  double total = 0.0;
  for (const auto& alpha : multi_indices(g.dim(), spec.s)) {
    const bool identity = alpha[0] == 0 && alpha[1] == 0 && alpha[2] == 0;
    const ComplexField d = identity ? f : spectral_derivative(f, alpha, kappa);
    double acc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) acc += std::norm(weight[i] * d[i]);
    total += std::sqrt(acc * g.cell_volume());
  }
  return total;
}

double weighted_sobolev_norm(const ScalarField& f, const SobolevSpec& spec) {
  return weighted_sobolev_norm(to_complex(f), spec);
}

double negative_sobolev_norm(const ComplexField& f, double s) {
  if (!(s >= 0.0)) throw ParameterError("negative Sobolev norm needs s >= 0");
  const Grid& g = f.grid();
  const ComplexSpectrum c = spectrum(f);
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 k = g.wavevector(i);
    const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    acc += std::norm(c[i]) * std::pow(1.0 + k2, -s);
  }
  return std::sqrt(acc * std::pow(g.length(), g.dim()));
}

double negative_sobolev_norm(const ScalarField& f, double s) { return negative_sobolev_norm(to_complex(f), s); }

double bessel_potential_kernel(double r, double s, int dim) {
  const double nu = s - 0.5 * dim;
  if (!(nu > 0.0)) throw ParameterError("Bessel potential kernel needs s > dim/2");
  if (r < 1e-10) return std::tgamma(nu) / (std::pow(4.0 * std::numbers::pi, 0.5 * dim) * std::tgamma(s));
  return std::pow(2.0, 1.0 - s) / (std::pow(2.0 * std::numbers::pi, 0.5 * dim) * std::tgamma(s)) * std::pow(r, nu) *
         std::cyl_bessel_k(nu, r);
}

double source_diff_norm(Complex a1, const Vec3& z1, Complex a2, const Vec3& z2, double s, int dim) {
  if (!(s > 0.5 * dim)) throw ParameterError("point sources lie in H^{-s} only for s > d/2");
  double r2 = 0.0;
  for (int d = 0; d < dim; ++d) r2 += (z1[d] - z2[d]) * (z1[d] - z2[d]);
  const double g0 = bessel_potential_kernel(0.0, s, dim);
  const double gr = bessel_potential_kernel(std::sqrt(r2), s, dim);
  const double sq = (std::norm(a1) + std::norm(a2)) * g0 - 2.0 * std::real(a1 * std::conj(a2)) * gr;
  return std::sqrt(std::max(sq, 0.0));
}

}  // namespace invlab
