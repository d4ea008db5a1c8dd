#include "invlab/experiments/decay.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "invlab/cgo/solutions.hpp"
#include "invlab/core/sobolev.hpp"
#include "invlab/core/spectral.hpp"
#include "invlab/experiments/stats.hpp"

namespace invlab {
namespace {

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

KernelCheck kernel_check(int n, double length, const CVec3& xi, int band, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  if (band < 0 || 2 * band >= n) throw ParameterError("band must lie below the Nyquist index");
  const Grid g(3, n, length);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexSpectrum c(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto m = g.multi_index(i);
    const std::array<int, 3> k{g.signed_frequency(m[0]), g.signed_frequency(m[1]), g.signed_frequency(m[2])};
    if (std::abs(k[0]) <= band && std::abs(k[1]) <= band && std::abs(k[2]) <= band) c[i] = Complex(gauss(rng), gauss(rng));
  }
  const ComplexField f = inverse_spectrum(c);
  const XiOperator op{xi};
  const Vec3 kappa = choose_bloch_shift(g, op);
  const ComplexField w = apply_K_xi(f, op, kappa);
  KernelCheck out;
  out.residual = k_xi_residual(w, f, op, kappa);
  out.seconds = elapsed(t0);
  return out;
}

DecayReport verify_decay_estimates(const DecaySpec& spec) {
  const auto t0 = std::chrono::steady_clock::now();
  const Grid g(3, spec.n, spec.length);
  const Domain dom(g, spec.margin);
  auto scaled = [&](GaussianBump b) {
    for (auto& c : b.center) c *= spec.length;
    return b;
  };
  const double margin = spec.cutoff_fraction * spec.length;
  const ScalarField q = bump_potential(dom, {scaled(spec.q)}, margin, spec.s).field;
  const ComplexField f = to_complex(bump_potential(dom, {scaled(spec.f)}, margin, spec.s).field);

  DecayReport out;
  for (double mag : spec.magnitudes) {
    DecayRow row;
    row.magnitude = mag;
    const double c = mag / std::sqrt(2.0);
    const CVec3 xi{c, Complex(0.0, c), 0.0};
    const XiOperator op{xi};
    const Vec3 kappa = choose_bloch_shift(g, op);
    const ComplexField w = apply_K_xi(f, op, kappa);
    row.k_residual = k_xi_residual(w, f, op, kappa);
    row.k_norm = weighted_sobolev_norm(w, {spec.s, spec.delta}, kappa);
    try {
      const CgoSolution cgo = cgo_solution(q, xi);
      row.psi_hs = sobolev_norm(cgo.psi(), spec.s, cgo.series.kappa);
      row.psi_hs1 = sobolev_norm(cgo.psi(), spec.s + 1, cgo.series.kappa);
      row.cgo_residual = cgo.residual;
      row.terms = cgo.series.terms;
    } catch (const DivergenceError&) {
      row.dropped = true;
    }
    out.rows.push_back(row);
  }
  std::vector<double> x, yk, yp, yp1;
  for (const auto& r : out.rows) {
    if (r.dropped) continue;
    x.push_back(r.magnitude);
    yk.push_back(r.k_norm);
    yp.push_back(r.psi_hs);
    yp1.push_back(r.psi_hs1);
  }
  if (x.size() >= 2) {
    out.slope_k = loglog_slope(x, yk);
    out.slope_psi = loglog_slope(x, yp);
    out.slope_psi1 = loglog_slope(x, yp1);
    out.pass_k = std::abs(out.slope_k + 1.0) <= 0.15;
    out.pass_psi = std::abs(out.slope_psi + 1.0) <= 0.15;
    out.pass_psi1 = out.slope_psi1 >= -0.15;
  }
  out.seconds = elapsed(t0);
  return out;
}

}  // namespace invlab
