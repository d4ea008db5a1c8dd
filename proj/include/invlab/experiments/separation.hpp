#pragma once

#include <cstdint>
#include <vector>

#include "invlab/forward/potential.hpp"

namespace invlab {

struct SeparationSpec {
  int n = 64;
  int margin = 8;
  double length = 1.0;
  GaussianBump q{{0.45, 0.5, 0.55}, 0.15, 5.0};  // centers in units of L
  double cutoff = 0.08;        // plateau margin in units of L
  double re_xi = 64.0;         // Re(xi) along the pair direction
  double constant = 0.0;       // C in the predicted bound Re(xi).e - C ||q||_{H^s}
  double ratio_floor = 0.5;    // gate: ratio >= ratio_floor * Re(xi).e
  int pairs = 100;
  int phi_pairs = 5;           // pairs that also get the (v w) residual and the boundary bound
  int s = 2;
  std::uint64_t seed = 1;
};

struct SeparationRow {
  double ratio = 0.0;          // |w(z2) - w(z1)| / |z2 - z1|
  double re_xi_along = 0.0;
  double kronecker = 0.0;      // max |theta_i(z_j) - delta_ij|
  double phi_residual = -1.0;  // -1 when not evaluated
  double bound_ratio = -1.0;   // ||phi(z1) theta1 + phi(z2) theta2||_{H^1/2} / ||phi||_{H^s}
};

struct SeparationSuiteReport {
  std::vector<SeparationRow> rows;
  double max_kronecker = 0.0;
  double max_phi_residual = 0.0;
  double min_ratio_fraction = 0.0;  // min ratio / re_xi_along
  int violations = 0;               // ratio below ratio_floor * re_xi_along
  int bound_violations = 0;         // ratio below the predicted bound with the configured C
  double fitted_constant = 0.0;     // max bound_ratio over the evaluated pairs
  double q_norm = 0.0;
  double seconds = 0.0;
};

/// Random point pairs in the domain; per pair xi = re_xi (e + i e_perp) with e the
/// pair direction, so Re(xi) . e = re_xi (the pair rotated onto the first axis).
SeparationSuiteReport separation_and_theta_suite(const SeparationSpec& spec);

}  // namespace invlab
