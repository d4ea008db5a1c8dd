#include "invlab/experiments/scenario.hpp"

#include <numbers>
#include <random>

namespace invlab {

ScenarioSpec default_scenario_spec() {
  ScenarioSpec spec;
  spec.params.s = 3;
  spec.params.d = 3;
  spec.params.M = 3e5;
  spec.params.C1 = 2e-5;
  spec.params.rho = 8.0;
  spec.params.C_log = 2.0;
  return spec;
}

Scenario generate_scenario(const ScenarioSpec& spec, std::uint64_t seed) {
  validate(spec.params);
  const Grid g(3, spec.n, spec.length);
  const Domain dom(g, spec.margin);
  const double L = spec.length;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto between = [&](double a, double b) { return a + (b - a) * unit(rng); };

  auto scaled = [&](GaussianBump b) {
    for (auto& c : b.center) c *= L;
    b.width *= L;
    return b;
  };
  std::vector<GaussianBump> reference;
  for (const auto& b : spec.reference) reference.push_back(scaled(b));
  std::vector<GaussianBump> truth = reference;
  const PerturbationSpec& p = spec.perturbation;
  for (int k = 0; k < p.count; ++k) {
    GaussianBump b;
    for (auto& c : b.center) c = between(p.center_min, p.center_max);
    b.width = between(p.width_min, p.width_max);
    b.amplitude = between(p.amp_min, p.amp_max);
    truth.push_back(scaled(b));
  }
  const SourceSpec& ss = spec.source;
  PointSource src;
  const double mag = between(ss.amp_min, ss.amp_max);
  src.amplitude = std::polar(mag, 2.0 * std::numbers::pi * unit(rng));
  for (auto& c : src.position) c = L * between(ss.region_min, ss.region_max);

  Scenario s{seed, dom, bump_potential(dom, reference, spec.cutoff * L, spec.params.s),
             bump_potential(dom, truth, spec.cutoff * L, spec.params.s), src, spec.params, spec.cutoff * L};
  s.q1.bound_M = spec.params.M;
  s.q2.bound_M = spec.params.M;
  validate_potential(dom, s.q1);
  validate_potential(dom, s.q2);
  validate_source(dom, src, 2.0 * dom.spacing());
  return s;
}

}  // namespace invlab
