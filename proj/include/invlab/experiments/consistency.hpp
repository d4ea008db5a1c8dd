#pragma once

#include <cstdint>
#include <vector>

#include "invlab/forward/potential.hpp"

namespace invlab {

struct ConsistencySpec {
  int n = 32;
  int margin = 4;
  double length = 1.0;
  std::vector<GaussianBump> q1{{{0.45, 0.5, 0.55}, 0.3, 2.0}};  // in units of L
  std::vector<GaussianBump> dq{{{0.55, 0.45, 0.5}, 0.3, 5.0}};
  double cutoff = 0.08;
  std::vector<double> rhos{8, 16, 32};
  int etas = 10;
  int eta_band = 2;            // eta components drawn from {-band..band} dual spacings
  double slope_tolerance = 0.2;
  std::uint64_t seed = 7;
};

struct ConsistencyRow {
  Vec3 eta{};
  double rho = 0.0;
  Complex estimate;
  Complex exact;
  double error = 0.0;  // |estimate - exact|
};

struct ConsistencyReport {
  std::vector<ConsistencyRow> rows;
  std::vector<double> rms;  // RMS error over the sampled eta, per rho
  double slope = 0.0;       // log-log slope of rms against rho
  bool pass = false;
  double seconds = 0.0;
};

/// Oracle-mode estimator against the grid transform of q2 - q1 over a rho sweep.
ConsistencyReport estimator_consistency(const ConsistencySpec& spec);

}  // namespace invlab
