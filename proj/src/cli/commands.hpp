#pragma once

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace invlab::cli {

/// Exit codes shared by every subcommand.
enum ExitCode { kPass = 0, kGateFailure = 1, kUsage = 2, kNumerical = 3 };

/// dtn_out overrides the path of the measured DtN file.
int cmd_forward(const RunConfig& cfg, const std::string& dtn_out = {});

struct ReconstructArgs {
  std::string dtn1, dtn2, ref_q;
  std::string q_true;                 // oracle mode only
  std::optional<std::string> mode;    // overrides the config
  std::optional<double> rho;
  std::optional<std::string> radius;  // auto | noise | <value>
};
int cmd_reconstruct(const RunConfig& cfg, const ReconstructArgs& args);

struct LocalizeArgs {
  std::string dtn, q;
};
int cmd_localize(const RunConfig& cfg, const LocalizeArgs& args);

int cmd_verify(const RunConfig& cfg);

/// Scenarios seed, seed + 1, ... and the stability settings a config describes.
std::vector<Scenario> sweep_scenarios(const RunConfig& cfg);
StabilitySpec sweep_spec(const RunConfig& cfg);
/// Writes {prefix}_sweep.csv and returns its path.
std::string write_sweep_csv(const RunConfig& cfg, const StabilityCurve& c);
int cmd_sweep(const RunConfig& cfg);

}  // namespace invlab::cli
