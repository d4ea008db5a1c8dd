#pragma once

#include <vector>

#include "invlab/forward/dirichlet.hpp"
#include "invlab/forward/dtn.hpp"

namespace invlab {

struct SourceRecoveryOptions {
  std::vector<double> scales{4.0, 8.0, 16.0};  // probes t (e_i + i e_j)
  bool constant_probe = true;
  int starts_per_axis = 3;
  int max_iterations = 600;  // simplex iterations per start
  double tolerance = 1e-10;  // simplex size relative to the domain width
};

struct SourceEstimate {
  Complex a;
  Vec3 z{};
  double residual = 0.0;   // sqrt(J_min / sum |p_m|^2)
  Vec3 spread{};           // per-axis displacement that doubles the objective
  int probes = 0;
  int evaluations = 0;
};

/// Probe parameters t (e_i + i e_j) over the ordered pairs (1,2), (2,3), (3,1), (2,1).
std::vector<CVec3> probe_parameters(const std::vector<double>& scales);

/// Least-squares fit of a delta_z to the boundary offset Phi(0):
/// minimizes sum_m |<Phi(0), v_m> - a v_m(z)|^2 with a eliminated in closed form
/// and z found by Nelder-Mead from a starts^3 grid of Omega. v_m solve the
/// homogeneous problem with the estimated potential and exponential probe data.
SourceEstimate recover_source(const DirichletSolver& solver, const BoundaryBasis& basis, const Eigen::VectorXcd& offset,
                              const SourceRecoveryOptions& opts = {});

}  // namespace invlab
