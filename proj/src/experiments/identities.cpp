#include "invlab/experiments/identities.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "invlab/forward/dtn.hpp"

namespace invlab {
namespace {

double max_abs(const ComplexTrace& t) {
  double m = 0.0;
  for (const Complex& v : t.values()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

IdentityReport identity_residual_suite(int n_cases, std::uint64_t seed, const IdentitySpec& spec) {
  if (n_cases < 0) throw ParameterError("case count must be non-negative");
  const auto t0 = std::chrono::steady_clock::now();
  const Grid g(3, spec.n, spec.length);
  const Domain dom(g, spec.margin);
  const BoundaryBasis basis(dom);
  const double lo = dom.lower(), w = dom.width();
  const double cutoff = 0.1 * w;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto inner = [&] { return lo + w * (0.3 + 0.4 * unit(rng)); };
  auto random_q = [&] {
    std::vector<GaussianBump> bumps(1 + static_cast<int>(2 * unit(rng)));
    for (auto& b : bumps) {
      b.center = {inner(), inner(), inner()};
      b.width = w * (0.12 + 0.2 * unit(rng));
      b.amplitude = -8.0 + 16.0 * unit(rng);
    }
    return bump_potential(dom, bumps, cutoff).field;
  };
  auto random_trace = [&] {
    const Eigen::VectorXd decay = basis.weights(-2.0);
    Eigen::VectorXcd c(basis.size());
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = Complex(gauss(rng), gauss(rng)) * decay(i);
    return basis.synthesize(c);
  };

  IdentityReport out;
  for (int k = 0; k < n_cases; ++k) {
    const ScalarField q1 = random_q();
    const ScalarField q2 = random_q();
    const PointSource src{Complex(gauss(rng), gauss(rng)), {inner(), inner(), inner()}};
    const ComplexTrace f1 = random_trace();
    const ComplexTrace f2 = random_trace();
    auto s1 = std::make_shared<const DirichletSolver>(dom, q1);
    auto s2 = std::make_shared<const DirichletSolver>(dom, q2);

    IdentityCase c;
    const ComplexTrace d1 = SolverDtn(s1).apply_linear(f1);
    const ComplexTrace d2 = SolverDtn(s2).apply_linear(f1);
    const Complex boundary = boundary_pairing(d1 - d2, f2);
    const Complex volume = alessandrini_volume(dom, q1, q2, s1->solve(f1), s2->solve(f2));
    double scale = std::abs(volume);
    const double h = dom.spacing();
    double cross = 0.0;
    for (std::size_t i = 0; i < f2.size(); ++i) cross += (std::abs(d1[i]) + std::abs(d2[i])) * std::abs(f2[i]);
    scale = std::max(scale, h * h * cross);
    c.alessandrini = std::abs(boundary - volume) / scale;

    const ComplexTrace full = neumann_trace(dom, s1->solve_with_source(src, f1));
    ComplexTrace zero(dom);
    ComplexTrace split = neumann_trace(dom, s1->solve_with_source(src, zero));
    split += d1;
    c.affine = max_abs(full - split) / max_abs(full);

    out.max_alessandrini = std::max(out.max_alessandrini, c.alessandrini);
    out.max_affine = std::max(out.max_affine, c.affine);
    out.cases.push_back(c);
  }
  out.pass = out.max_alessandrini <= spec.tolerance && out.max_affine <= spec.tolerance;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace invlab
