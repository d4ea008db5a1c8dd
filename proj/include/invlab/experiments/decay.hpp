#pragma once

#include <cstdint>
#include <vector>

#include "invlab/forward/potential.hpp"

namespace invlab {

struct KernelCheck {
  double residual = 0.0;  // ||Delta w + xi.grad w - f|| / ||f||
  double seconds = 0.0;
};

/// Applies K_xi to a random band-limited field (modes with |k| <= band dual
/// spacings, random amplitudes) and measures the spectral residual.
KernelCheck kernel_check(int n, double length, const CVec3& xi, int band, std::uint64_t seed);

struct DecaySpec {
  int n = 64;
  double length = 6.283185307179586;
  int margin = 8;
  double cutoff_fraction = 0.1;  // plateau margin as a fraction of L
  GaussianBump f{{0.5, 0.5, 0.5}, 0.5, 1.0};     // centers in units of L
  GaussianBump q{{0.47, 0.51, 0.52}, 0.5, 1.0};
  std::vector<double> magnitudes{8, 16, 32, 64, 128};
  int s = 2;
  double delta = -0.5;
};

struct DecayRow {
  double magnitude = 0.0;
  double k_norm = 0.0;      // ||K_xi f||_{H^s_delta}
  double psi_hs = 0.0;      // ||psi||_{H^s}
  double psi_hs1 = 0.0;     // ||psi||_{H^{s+1}}
  double k_residual = 0.0;
  double cgo_residual = 0.0;
  int terms = 0;
  bool dropped = false;     // series diverged at this |xi|
};

struct DecayReport {
  std::vector<DecayRow> rows;
  double slope_k = 0.0, slope_psi = 0.0, slope_psi1 = 0.0;
  bool pass_k = false, pass_psi = false, pass_psi1 = false;
  double seconds = 0.0;
};

/// Dyadic |xi| sweep with xi = |xi| (e1 + i e2) / sqrt 2. Pass iff the first two
/// slopes are -1 +- 0.15 and the third is >= -0.15.
DecayReport verify_decay_estimates(const DecaySpec& spec);

}  // namespace invlab
