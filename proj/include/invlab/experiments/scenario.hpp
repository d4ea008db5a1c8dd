#pragma once

#include <cstdint>
#include <vector>

#include "invlab/inversion/reconstruction.hpp"

namespace invlab {

/// Random Gaussian bumps; lengths and centers in units of the box length.
struct PerturbationSpec {
  int count = 1;
  double amp_min = 3.0, amp_max = 5.0;
  double width_min = 0.25, width_max = 0.3;
  double center_min = 0.4, center_max = 0.6;
};

struct SourceSpec {
  double amp_min = 0.5, amp_max = 1.5;  // |a|; the phase is uniform
  double region_min = 0.35, region_max = 0.65;
};

struct ScenarioSpec {
  int n = 32;
  int margin = 4;
  double length = 1.0;
  double cutoff = 0.08;  // plateau margin in units of L
  std::vector<GaussianBump> reference{{{0.45, 0.5, 0.55}, 0.25, 3.0}};
  PerturbationSpec perturbation;
  SourceSpec source;
  ReconstructionParams params;
};

/// Defaults of the stability scenarios: s = 3, rho = 8, C_log = 2 and an M that
/// dominates the H^3 norm of the generated potentials.
ScenarioSpec default_scenario_spec();

struct Scenario {
  std::uint64_t seed = 0;
  Domain domain;
  Potential q1;  // reference
  Potential q2;  // truth
  PointSource source;
  ReconstructionParams params;
  double cutoff = 0.0;  // absolute plateau margin
};

/// Deterministic in the seed. Validates the potentials against params.M and the
/// source against the domain.
Scenario generate_scenario(const ScenarioSpec& spec, std::uint64_t seed);

}  // namespace invlab
