#include "invlab/experiments/separation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "invlab/cgo/solutions.hpp"
#include "invlab/core/sobolev.hpp"

namespace invlab {

SeparationSuiteReport separation_and_theta_suite(const SeparationSpec& spec) {
  const auto t0 = std::chrono::steady_clock::now();
  const Grid g(3, spec.n, spec.length);
  const Domain dom(g, spec.margin);
  GaussianBump bump = spec.q;
  for (auto& c : bump.center) c *= spec.length;
  bump.width *= spec.length;
  const ScalarField q = bump_potential(dom, {bump}, spec.cutoff * spec.length, spec.s).field;
  const BoundaryBasis basis(dom);

  SeparationSuiteReport out;
  out.q_norm = sobolev_norm(q, spec.s);
  out.min_ratio_fraction = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double pad = 0.1 * dom.width();
  auto point = [&] {
    Vec3 z;
    for (auto& c : z) c = dom.lower() + pad + (dom.width() - 2.0 * pad) * unit(rng);
    return z;
  };

  for (int p = 0; p < spec.pairs; ++p) {
    const Vec3 z1 = point();
    const Vec3 z2 = point();
    Vec3 e{z2[0] - z1[0], z2[1] - z1[1], z2[2] - z1[2]};
    const double dist = norm(e);
    for (auto& c : e) c /= dist;
    Vec3 perp = std::abs(e[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    const double proj = perp[0] * e[0] + perp[1] * e[1] + perp[2] * e[2];
    for (int d = 0; d < 3; ++d) perp[d] -= proj * e[d];
    const double np = norm(perp);
    CVec3 xi;
    for (int d = 0; d < 3; ++d) xi[d] = Complex(spec.re_xi * e[d], spec.re_xi * perp[d] / np);

    const WSolution ws = cgo_w_solution(dom, q, xi);
    const ThetaPair theta(ws, z1, z2);
    SeparationRow row;
    row.kronecker = std::max({std::abs(theta.at(0, z1) - 1.0), std::abs(theta.at(0, z2)),
                              std::abs(theta.at(1, z2) - 1.0), std::abs(theta.at(1, z1))});
    const SeparationReport sep = w_separation(ws, z1, z2, spec.constant, out.q_norm);
    row.ratio = sep.ratio;
    row.re_xi_along = sep.re_xi_along;
    if (sep.violated) ++out.bound_violations;
    if (sep.ratio < spec.ratio_floor * sep.re_xi_along) ++out.violations;

    if (p < spec.phi_pairs) {
      row.phi_residual = phi_residual(dom, q, ws);
      // Smooth periodic test function phi with a random phase.
      const double a = 2.0 * std::numbers::pi / spec.length;
      const double ph = 2.0 * std::numbers::pi * unit(rng);
      ScalarField phi(g);
      for (std::size_t i = 0; i < g.size(); ++i) {
        const Vec3 x = g.position(i);
        phi[i] = 1.0 + 0.5 * std::cos(a * x[0] + ph) * std::sin(a * x[1]) + 0.25 * std::cos(a * x[2]);
      }
      auto value = [&](const Vec3& z) {
        return 1.0 + 0.5 * std::cos(a * z[0] + ph) * std::sin(a * z[1]) + 0.25 * std::cos(a * z[2]);
      };
      ComplexField combo = theta.field(0);
      combo *= Complex(value(z1));
      ComplexField t2 = theta.field(1);
      t2 *= Complex(value(z2));
      combo += t2;
      row.bound_ratio = boundary_fractional_norm(basis, restrict_to_boundary(dom, combo), 0.5) / sobolev_norm(phi, spec.s);
      out.max_phi_residual = std::max(out.max_phi_residual, row.phi_residual);
      out.fitted_constant = std::max(out.fitted_constant, row.bound_ratio);
    }
    out.max_kronecker = std::max(out.max_kronecker, row.kronecker);
    out.min_ratio_fraction = std::min(out.min_ratio_fraction, row.ratio / row.re_xi_along);
    out.rows.push_back(row);
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace invlab
