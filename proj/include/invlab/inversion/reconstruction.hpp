#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "invlab/cgo/frame.hpp"
#include "invlab/cgo/solutions.hpp"
#include "invlab/forward/dtn.hpp"

namespace invlab {

enum class EstimatorMode { born, oracle };

/// Free symbols of the reconstruction: smoothness s, dimension d, bound M,
/// slicing radius rho, cutoff R and the unquantified constants.
struct ReconstructionParams {
  int s = 3;
  int d = 3;
  double M = 1.0;
  double rho = 8.0;
  double R = 0.0;       // 0 selects R automatically
  double C_log = 1.0;   // exponent constant of the noise amplification e^{C R}
  double C1 = 4.0;      // rho >= C1 M + 1
  EstimatorMode mode = EstimatorMode::born;
};

/// Throws ParameterError if rho < C1 M + 1 or another field is out of range.
void validate(const ReconstructionParams& p);

/// Born estimator: pure lattice exponentials e^{xi_j.(x - c)/2} as both traces,
/// value e^{-i eta.c} <(Phi0_ref - Phi0_meas) b1, b2>.
Complex estimate_q_hat_born(const DtnMap& reference, const DtnMap& measured, const CgoFrame& frame,
                            const Vec3& origin);

struct OracleEstimate {
  Complex estimate;     // pairing with the true CGO traces, phase-corrected
  Complex exact;        // grid transform of q2 - q1 at eta
  double volume_term;   // |estimate - exact|
  int terms1 = 0, terms2 = 0;
};

/// Oracle estimator: lattice-exact CGO solutions for q1 (xi1) and q2 (xi2).
/// The pairing <(Phi0[q1] - Phi0[q2]) v1, v2> is evaluated through the discrete
/// Alessandrini identity h^3 sum (q2 - q1) v1 v2, which equals the boundary form
/// exactly for discrete solutions and avoids the e^{|zeta| diam} cancellation of
/// the boundary sum at large rho.
OracleEstimate estimate_q_hat_oracle(const Domain& domain, const ScalarField& q1, const ScalarField& q2,
                                     const CgoFrame& frame, const SeriesOptions& series = {});

/// Same pairing through the boundary: flux of w with (Delta_h + q2) w = (q2 - q1) v1,
/// w = 0 on the boundary, paired with v2. Suitable when e^{|zeta| diam / 2} is moderate.
Complex estimate_q_hat_oracle_boundary(const DirichletSolver& solver_q2, const ScalarField& q1, const CgoFrame& frame,
                                       const SeriesOptions& series = {});

/// Root R0 of (2s - d) log R + C R + 2 log eps = 0, i.e. 1 / R^{2s-d} = e^{C R} eps^2.
double choose_truncation_radius(double epsilon, int s, int d, double C);
/// Closed-form lower bound -2 log eps / (C + (2s - d) / e).
double truncation_radius_lower_bound(double epsilon, int s, int d, double C);

struct FrequencySample {
  Vec3 eta{};
  Complex estimate;
};

struct ReconstructionResult {
  ScalarField dq;
  std::vector<FrequencySample> samples;
  double R = 0.0;
  double rho = 0.0;
  double tail_estimate = 0.0;  // M^2 / R^{2s-d}
  double imag_residue = 0.0;   // max |Im| / max |Re| before the real part is taken
};

using Estimator = std::function<Complex(const CgoFrame&)>;

/// Samples the estimator on the dual-lattice frequencies with |eta| < R, enforces
/// q^(-eta) = conj(q^(eta)), zero-fills the rest and inverts.
ReconstructionResult reconstruct_potential_diff(const Grid& grid, const Estimator& estimator,
                                                const ReconstructionParams& params);

}  // namespace invlab
