#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "invlab/experiments/decay.hpp"
#include "invlab/experiments/consistency.hpp"
#include "invlab/experiments/identities.hpp"
#include "invlab/experiments/noise.hpp"
#include "invlab/experiments/scenario.hpp"
#include "invlab/experiments/separation.hpp"
#include "invlab/experiments/stability.hpp"

namespace invlab::cli {

/// Invalid or unknown configuration entry; the message carries the key path.
class ConfigError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

struct OutputConfig {
  std::string dir = ".";
  std::string prefix = "invlab";
};

struct VerifyConfig {
  bool decay = true;
  bool identities = true;
  bool separation = true;
  bool consistency = true;
  bool truncation = true;
  int identity_cases = 50;
  int separation_pairs = 100;
};

struct RunConfig {
  std::uint64_t seed = 1;
  ScenarioSpec scenario = default_scenario_spec();
  std::vector<GaussianBump> bumps;        // explicit truth bumps; empty draws from the perturbation spec
  std::optional<PointSource> source;      // explicit source; empty draws from the source spec
  RadiusMode radius_mode = RadiusMode::measured;
  double radius_cap = 24.0;
  SourceRecoveryOptions probes;
  NoiseModel noise;
  std::vector<double> epsilons{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  int scenarios = 3;
  OutputConfig output;
  VerifyConfig verify;
  std::string hash;                       // SHA-256 of the document bytes
};

/// Parses a YAML document; every key is checked against the schema and every
/// physical parameter against the module preconditions.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Default configuration, as a YAML document.
std::string default_config_text();

std::string sha256_hex(const std::string& bytes);

/// The scenario a config describes: explicit bumps and source when given, otherwise drawn from the seed.
Scenario make_scenario(const RunConfig& cfg, std::uint64_t seed);

}  // namespace invlab::cli
