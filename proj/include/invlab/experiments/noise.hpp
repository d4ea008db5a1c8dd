#pragma once

#include <cstdint>

#include "invlab/forward/dtn.hpp"

namespace invlab {

/// operator: symmetric random perturbation of the linear part (rank up to 64) with star norm eps.
/// trace: random perturbation of the offset with H^{-1/2} norm eps.
/// combined: eps / 2 in each, so the star norm of the difference is eps.
enum class NoiseMode { operator_only, trace_only, combined };

struct NoiseModel {
  double epsilon = 0.0;
  NoiseMode mode = NoiseMode::combined;
  std::uint64_t seed = 0;
};

struct NoiseReport {
  double target = 0.0;
  DtnNorm measured;  // noisy versus clean
};

/// Returns the clean map plus calibrated noise; deterministic in the seed.
DtnMap inject_noise(const DtnMap& clean, const NoiseModel& noise, NoiseReport* report = nullptr);

NoiseMode parse_noise_mode(const std::string& s);
const char* to_string(NoiseMode m);

}  // namespace invlab
