#include "invlab/experiments/consistency.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "invlab/experiments/stats.hpp"
#include "invlab/inversion/reconstruction.hpp"

namespace invlab {

ConsistencyReport estimator_consistency(const ConsistencySpec& spec) {
  const auto t0 = std::chrono::steady_clock::now();
  const Grid g(3, spec.n, spec.length);
  const Domain dom(g, spec.margin);
  auto scaled = [&](std::vector<GaussianBump> bumps) {
    for (auto& b : bumps) {
      for (auto& c : b.center) c *= spec.length;
      b.width *= spec.length;
    }
    return bumps;
  };
  std::vector<GaussianBump> all = scaled(spec.q1);
  for (const auto& b : scaled(spec.dq)) all.push_back(b);
  const ScalarField q1 = bump_potential(dom, scaled(spec.q1), spec.cutoff * spec.length).field;
  const ScalarField q2 = bump_potential(dom, all, spec.cutoff * spec.length).field;

  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<int> comp(-spec.eta_band, spec.eta_band);
  const double dk = g.dual_spacing();
  ConsistencyReport out;
  std::vector<double> sum(spec.rhos.size(), 0.0);
  for (int m = 0; m < spec.etas; ++m) {
    Vec3 eta{0, 0, 0};
    do {
      for (auto& c : eta) c = dk * comp(rng);
    } while (eta[0] == 0.0 && eta[1] == 0.0 && eta[2] == 0.0 && spec.eta_band > 0);
    for (std::size_t r = 0; r < spec.rhos.size(); ++r) {
      const OracleEstimate e = estimate_q_hat_oracle(dom, q1, q2, make_frame(eta, spec.rhos[r]));
      out.rows.push_back({eta, spec.rhos[r], e.estimate, e.exact, e.volume_term});
      sum[r] += e.volume_term * e.volume_term;
    }
  }
  for (double s : sum) out.rms.push_back(std::sqrt(s / std::max(spec.etas, 1)));
  if (spec.rhos.size() >= 2) {
    out.slope = loglog_slope(spec.rhos, out.rms);
    out.pass = std::abs(out.slope + 1.0) <= spec.slope_tolerance;
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace invlab
