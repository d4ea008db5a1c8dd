#pragma once

#include <optional>

#include "invlab/inversion/reconstruction.hpp"
#include "invlab/inversion/source.hpp"

namespace invlab {

/// How the frequency cutoff is picked: fixed params.R, from the measured
/// ||Phi0_meas - Phi0_ref||_*, or from a known data error level.
enum class RadiusMode { fixed, measured, data_error };

struct JointOptions {
  ReconstructionParams params;
  RadiusMode radius_mode = RadiusMode::measured;
  double data_error = 0.0;        // used by RadiusMode::data_error; 0 means radius_cap
  double radius_cap = 0.0;        // upper bound on an automatic R; 0 means none
  double cutoff_margin = 0.0;     // plateau applied to the estimated difference; 0 skips it
  double symmetry_tolerance = 1e-8;
  bool check_kernel = true;
  SourceRecoveryOptions source;
};

struct JointResult {
  Potential q_est;
  ReconstructionResult reconstruction;
  SourceEstimate source;
  DtnNorm data_norm;              // measured versus reference
  double symmetry_defect = 0.0;
  KernelReport kernel;
};

/// Potential first, then source: Delta q from the linear parts against the
/// reference (born mode, or oracle mode when the true potential is supplied),
/// q_est = q1 + Delta q, then the source from the measured offset with q_est.
/// Throws NumericalError if the measured linear part is not symmetric and
/// KernelError if q_est has a non-trivial Dirichlet kernel.
JointResult joint_recovery(const DtnMap& measured, const DtnMap& reference, const Potential& q1,
                           const JointOptions& opts, const ScalarField* q_true = nullptr);

/// Cutoff used by joint_recovery for the given data norm.
double select_radius(const JointOptions& opts, double measured_norm);

}  // namespace invlab
