#pragma once

#include <cstdint>
#include <vector>

namespace invlab {

struct IdentityCase {
  double alessandrini = 0.0;  // |boundary - volume| / pairing scale
  double affine = 0.0;        // ||Phi(f) - Phi(0) - Phi0(f)||_inf / ||Phi(f)||_inf
};

struct IdentityReport {
  std::vector<IdentityCase> cases;
  double max_alessandrini = 0.0;
  double max_affine = 0.0;
  bool pass = false;  // both maxima <= tolerance
  double seconds = 0.0;
};

struct IdentitySpec {
  int n = 32;
  int margin = 4;
  double length = 1.0;
  double tolerance = 1e-10;
};

/// Random potential pairs, sources and smooth boundary data on the discrete
/// problem; checks the Alessandrini identity and the affine law of the DtN map.
IdentityReport identity_residual_suite(int n_cases, std::uint64_t seed, const IdentitySpec& spec = {});

}  // namespace invlab
