#pragma once

#include <memory>
#include <optional>
#include <string>

#include "invlab/forward/dirichlet.hpp"

namespace invlab {

/// Linear Dirichlet-to-Neumann action f -> Phi0(f) on complex traces.
class DtnOperator {
 public:
  virtual ~DtnOperator() = default;
  virtual const Domain& domain() const = 0;
  virtual ComplexTrace apply_linear(const ComplexTrace& f) const = 0;
};

/// Affine DtN map Phi(f) = Phi(0) + Phi0(f), stored densely in the boundary eigenbasis.
class DtnMap : public DtnOperator {
 public:
  DtnMap(std::shared_ptr<const BoundaryBasis> basis, Eigen::VectorXcd offset, Eigen::MatrixXd linear);

  const Domain& domain() const override { return basis_->domain(); }
  const BoundaryBasis& basis() const { return *basis_; }
  std::shared_ptr<const BoundaryBasis> basis_ptr() const { return basis_; }
  std::size_t size() const { return basis_->size(); }

  /// Offset Phi(0) as basis coefficients.
  const Eigen::VectorXcd& offset() const { return offset_; }
  /// Linear part acting on basis coefficients.
  const Eigen::MatrixXd& linear() const { return linear_; }

  ComplexTrace offset_trace() const { return basis_->synthesize(offset_); }
  ComplexTrace apply(const ComplexTrace& f) const;
  ComplexTrace apply_linear(const ComplexTrace& f) const override;

  /// max |L - L^T| relative to max |L|.
  double symmetry_defect() const;

  DtnMap with_offset(Eigen::VectorXcd offset) const { return DtnMap(basis_, std::move(offset), linear_); }
  DtnMap with_linear(Eigen::MatrixXd linear) const { return DtnMap(basis_, offset_, std::move(linear)); }

 private:
  std::shared_ptr<const BoundaryBasis> basis_;
  Eigen::VectorXcd offset_;
  Eigen::MatrixXd linear_;
};

/// DtN action evaluated by a fresh solve per call; no assembly.
class SolverDtn : public DtnOperator {
 public:
  explicit SolverDtn(std::shared_ptr<const DirichletSolver> solver) : solver_(std::move(solver)) {}
  const Domain& domain() const override { return solver_->domain(); }
  ComplexTrace apply_linear(const ComplexTrace& f) const override;

 private:
  std::shared_ptr<const DirichletSolver> solver_;
};

/// Column-by-column assembly over the boundary basis; the offset is the
/// Neumann trace of the zero-data source solve (zero without a source).
DtnMap assemble_dtn(const DirichletSolver& solver, std::shared_ptr<const BoundaryBasis> basis,
                    const std::optional<PointSource>& src = std::nullopt);

/// Offset of the source-present map alone (one solve).
Eigen::VectorXcd source_offset(const DirichletSolver& solver, const BoundaryBasis& basis, const PointSource& src);

struct DtnNorm {
  double offset = 0.0;  // ||offset_A - offset_B||_{-1/2}
  double linear = 0.0;  // operator norm H^{1/2} -> H^{-1/2} of the linear difference
  double star = 0.0;    // additive convention offset + linear
  double ball_sup = 0.0;  // local maximum of ||(Phi_A - Phi_B)(f)||_{-1/2} over ||f||_{1/2} <= 1
};

/// Largest singular value of W_{-1/2} M W_{+1/2}^{-1} for a symmetric M in the boundary basis.
double weighted_operator_norm(const BoundaryBasis& basis, const Eigen::MatrixXd& m);

DtnNorm dtn_operator_norm(const DtnMap& a, const DtnMap& b);

/// <(Phi0_A - Phi0_B) v1, v2>, bilinear boundary pairing.
Complex alessandrini_pairing(const DtnOperator& a, const DtnOperator& b, const ComplexTrace& v1,
                             const ComplexTrace& v2);

/// Volume side h^3 sum_I (q2 - q1) v1 v2 over interior nodes.
Complex alessandrini_volume(const Domain& domain, const ScalarField& q1, const ScalarField& q2, const ComplexField& v1,
                            const ComplexField& v2);

/// (Phi0[q1] - Phi0[q2]) applied to the trace of a discrete q1-solution v1, by
/// solving (Delta_h + q2) w = (q2 - q1) v1 with w = 0 on the boundary. Exact,
/// and free of the cancellation a difference of two large fluxes would suffer.
ComplexTrace dtn_difference_action(const DirichletSolver& solver_q2, const ScalarField& q1, const ComplexField& v1);

/// DTNM container: magic, version u32, n_boundary u32, grid n u32, margin u32,
/// L f64, offset as n_boundary (re, im) f64 pairs, then the row-major linear matrix.
void write_dtn(const std::string& path, const DtnMap& map);
DtnMap read_dtn(const std::string& path);

}  // namespace invlab
