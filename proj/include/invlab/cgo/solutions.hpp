#pragma once

#include <optional>

#include "invlab/cgo/frame.hpp"
#include "invlab/cgo/kernel.hpp"
#include "invlab/core/domain.hpp"

namespace invlab {

struct SeriesOptions {
  double ratio_limit = 0.5;  // successive-term ratio needed to declare convergence
  double tail_tolerance = 1e-12;
  int max_terms = 64;
};

struct NeumannResult {
  ComplexField psi;
  Vec3 kappa{};
  int terms = 0;
  double last_ratio = 0.0;
  double tail = 0.0;
  double fixed_point_residual = 0.0;  // ||psi - K(rhs - q psi)|| / ||psi||
};

/// Neumann series for Delta psi + xi.grad psi + q psi = rhs, psi = sum_m (-K q)^m K rhs.
/// Stops once the term ratio is below ratio_limit and the geometric tail below
/// tail_tolerance (relative); throws DivergenceError when the terms stop contracting.
NeumannResult neumann_solve(const ScalarField& q_ext, const XiOperator& op, const ComplexField& rhs,
                            const std::optional<Vec3>& kappa = std::nullopt, const SeriesOptions& opts = {});

struct CgoOptions {
  std::optional<Vec3> origin;  // phase origin c of e^{xi.(x - c)/2}; default box center
  bool lattice = false;        // lattice-exact symbol for the 7-point operator
  std::optional<Vec3> kappa;
  SeriesOptions series;
};

/// u = e^{xi.(x - c)/2} (1 + psi) solving (Delta + q) u = 0.
struct CgoSolution {
  XiOperator op;
  Vec3 origin{};
  NeumannResult series;
  /// ||(Delta + q) u|| / ||u|| evaluated through the conjugated operator.
  double residual = 0.0;

  const ComplexField& psi() const { return series.psi; }
  Complex exponential(const Vec3& x) const;
  ComplexField u() const;
  /// u(x) with psi interpolated; exact at nodes.
  Complex value_at(const Vec3& x) const;
};

CgoSolution cgo_solution(const ScalarField& q, const CVec3& xi, const CgoOptions& opts = {});

/// w = xi.(x - c) + psi_w solving Delta w + grad log(v^2).grad w = 0 in the
/// domain, where v is the CGO solution for the same xi. The coefficient
/// grad log(v^2) = xi + 2 grad psi_v / (1 + psi_v) is cut off outside the
/// domain so the periodic problem is well posed.
struct WSolution {
  CgoSolution v;
  NeumannResult series;
  double residual = 0.0;     // w-equation residual on the domain, relative
  double psi_v_max = 0.0;    // max |psi_v| on the domain
  const ComplexField& psi_w() const { return series.psi; }
  Complex w_at(const Vec3& x) const;
  ComplexField w() const;
};

WSolution cgo_w_solution(const Domain& domain, const ScalarField& q, const CVec3& xi, const CgoOptions& opts = {});

/// phi = v w on the grid.
ComplexField phi_product(const WSolution& s);
/// ||(Delta + q)(v w)|| / ||v w|| on the domain, with (Delta + q)(v w) expanded as
/// v (Delta w + grad log v^2 . grad w) + w (Delta + q) v and every factor spectral.
double phi_residual(const Domain& domain, const ScalarField& q, const WSolution& s);

/// theta_1 = (v / v(z1)) (w - w(z2)) / (w(z1) - w(z2)) and theta_2 symmetrically.
/// Point values go through the interpolated smooth factors, so theta_i(z_j) = delta_ij
/// holds to rounding.
class ThetaPair {
 public:
  ThetaPair(const WSolution& s, const Vec3& z1, const Vec3& z2);
  Complex at(int i, const Vec3& x) const;
  ComplexField field(int i) const;

 private:
  const WSolution* s_;
  Vec3 z_[2];
  Complex v_[2];
  Complex w_[2];
};

struct SeparationReport {
  double ratio = 0.0;        // |w(z2) - w(z1)| / |z2 - z1|
  double re_xi_along = 0.0;  // Re(xi) . (z2 - z1) / |z2 - z1|
  double predicted = 0.0;    // re_xi_along - C ||q||_{H^s}
  bool violated = false;     // ratio below predicted
};

SeparationReport w_separation(const WSolution& s, const Vec3& z1, const Vec3& z2, double constant,
                              double q_norm);

}  // namespace invlab
