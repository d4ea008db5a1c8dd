#pragma once

#include <memory>
#include <vector>

#include "invlab/core/domain.hpp"
#include "invlab/forward/potential.hpp"

namespace invlab {

struct SolverOptions {
  double tolerance = 1e-13;  // relative residual of the interior system
  int max_iterations = 400;
};

/// Point-source solution u = a G~(x - z) + u_reg with the node-safe kernel
/// G~ = -1 / (4 pi max(|x - z|, r_min)).
template <class T>
struct SourceSolution {
  PointSource source;
  double r_min = 0.0;
  Field<T> regular;
  /// a G~ + u_reg at the nodes of the closed domain.
  Field<T> total() const;
};

/// Second-order 7-point discretization of (Delta + q) u = g in the domain with
/// Dirichlet data on the boundary nodes.
///
/// The interior system is solved by BiCGSTAB preconditioned with the exact
/// inverse of the Dirichlet Laplacian (a 3-D DST-I); q = 0 is solved directly.
class DirichletSolver {
 public:
  DirichletSolver(const Domain& domain, const ScalarField& q, SolverOptions opts = {});
  ~DirichletSolver();
  DirichletSolver(const DirichletSolver&) = delete;
  DirichletSolver& operator=(const DirichletSolver&) = delete;

  const Domain& domain() const { return domain_; }
  const ScalarField& potential() const { return q_; }
  bool zero_potential() const { return zero_q_; }

  /// Homogeneous solve: (Delta_h + q) u = 0 inside, u = f on the boundary.
  template <class T>
  Field<T> solve(const Trace<T>& f) const;

  /// (Delta_h + q) u = g at interior nodes, u = f on the boundary; g is a grid field.
  template <class T>
  Field<T> solve(const Trace<T>& f, const Field<T>& g) const;

  /// Singularity-subtracted solve of (Delta + q) u = a delta_z with u = f on the boundary.
  template <class T>
  SourceSolution<T> solve_with_source(const PointSource& src, const Trace<T>& f, double min_distance = 0.0) const;

  /// Interior system A x = b on the (side^3) interior unknowns, zero boundary data.
  template <class T>
  std::vector<T> solve_interior(const std::vector<T>& b) const;

  /// (Delta_h + q) u at interior nodes of a grid field (reads boundary nodes), as a grid field.
  template <class T>
  Field<T> apply(const Field<T>& u) const;

  /// Relative residual of the last interior solve and its iteration count.
  double last_residual() const { return last_residual_; }
  int last_iterations() const { return last_iterations_; }

  /// Interior-local index of a flat grid index that lies strictly inside the domain.
  std::size_t local_index(std::size_t flat) const;

  /// Exact Dirichlet-Laplacian inverse on interior vectors (DST-I diagonalization).
  template <class T>
  void apply_laplacian_inverse(std::vector<T>& x) const;
  template <class T>
  void apply_operator(const std::vector<T>& x, std::vector<T>& y) const;

 private:
  struct Plan;
  Domain domain_;
  ScalarField q_;
  SolverOptions opts_;
  bool zero_q_;
  std::vector<double> q_interior_;
  std::vector<double> inv_symbol_;  // 1 / (-(mu_i + mu_j + mu_k) (2N)^3)
  std::unique_ptr<Plan> plan_;
  mutable double last_residual_ = 0.0;
  mutable int last_iterations_ = 0;
};

/// Outward discrete-Green flux (u_b - u_inner) / h at every boundary node.
/// For a discrete solution this is the exact discrete Dirichlet-to-Neumann map.
template <class T>
Trace<T> neumann_trace(const Domain& domain, const Field<T>& u);
template <class T>
Trace<T> neumann_trace(const Domain& domain, const SourceSolution<T>& u);

/// One-sided fourth-order normal derivative of a smooth grid field.
template <class T>
Trace<T> neumann_trace_high_order(const Domain& domain, const Field<T>& u);
/// Fourth-order difference of u_reg plus the analytic normal derivative of a G0.
template <class T>
Trace<T> neumann_trace_high_order(const Domain& domain, const SourceSolution<T>& u);

/// h^3 sum_I v_i (Delta_h G~(. - z))_i: the exact discrete reciprocity weight
/// with <Phi(0), v> = a * reciprocity_weight(v, z) for homogeneous discrete v.
template <class T>
T reciprocity_weight(const Domain& domain, const Field<T>& v, const Vec3& z, double r_min);

struct KernelReport {
  double smallest_eigenvalue = 0.0;  // eigenvalue of Delta_h + q of least magnitude
  double threshold = 0.0;
  bool trivial = false;
  int iterations = 0;
};

/// Smallest-magnitude eigenvalue of the discrete Dirichlet operator by inverse iteration.
/// The default threshold is 1e-8 h^-2.
KernelReport check_kernel_trivial(const Domain& domain, const ScalarField& q, double threshold = -1.0);

}  // namespace invlab
