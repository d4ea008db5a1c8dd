#pragma once

#include <string>
#include <vector>

#include "invlab/experiments/noise.hpp"
#include "invlab/experiments/scenario.hpp"
#include "invlab/inversion/joint.hpp"

namespace invlab {

struct StabilitySpec {
  std::vector<double> epsilons{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  NoiseMode noise = NoiseMode::combined;
  RadiusMode radius_mode = RadiusMode::data_error;
  double radius_cap = 24.0;       // also the cutoff of the noiseless baseline
  bool baseline = true;           // noiseless run in oracle mode
  std::vector<double> fixed_radii;  // optional born runs at fixed R for comparison
  double jitter = 0.1;
  SourceRecoveryOptions source;
};

struct StabilityRow {
  int scenario = 0;
  std::uint64_t seed = 0;
  double epsilon = 0.0;
  std::string run;                // "auto", "baseline" or "fixed"
  double measured_noise = 0.0;    // star norm of the injected perturbation
  double R = 0.0;
  int frequencies = 0;
  double potential_error = 0.0;   // ||dq_est - dq||_{H^-s}
  double source_error = 0.0;      // ||a_hat delta_zhat - a delta_z||_{H^-s}, 0 when not computed
  double position_error = 0.0;    // |z_hat - z|_inf
  double amplitude_error = 0.0;   // |a_hat - a| / |a|
  double source_residual = 0.0;
};

struct StabilityCurve {
  std::vector<StabilityRow> rows;
  std::vector<double> epsilons;
  std::vector<double> potential;  // mean over scenarios per epsilon (auto runs)
  std::vector<double> source;
  double baseline_potential = 0.0, baseline_source = 0.0;
  bool monotone_potential = false, monotone_source = false;
  bool baseline_smallest = false;
  double exponent_potential = 0.0, exponent_source = 0.0;  // fit against -log eps
  double auto_vs_best_fixed = 0.0;  // max over eps of auto error / best fixed error
  bool pass = false;
  double seconds = 0.0;
};

/// Potential channel only: operator noise on the linear part, Delta q error in H^{-s}.
StabilityCurve potential_stability_experiment(const std::vector<Scenario>& scenarios, StabilitySpec spec);

/// Both channels: potential error plus the H^{-s} source error after joint recovery.
StabilityCurve joint_stability_experiment(const std::vector<Scenario>& scenarios, const StabilitySpec& spec);

}  // namespace invlab
