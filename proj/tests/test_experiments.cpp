#include <doctest.h>

#include <cmath>

#include "invlab/core/sobolev.hpp"
#include "invlab/experiments/decay.hpp"
#include "invlab/experiments/identities.hpp"
#include "invlab/experiments/noise.hpp"
#include "invlab/experiments/scenario.hpp"
#include "invlab/experiments/stats.hpp"

using namespace invlab;

TEST_CASE("log-log slope and monotonicity") {
  const std::vector<double> x{1, 2, 4, 8};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, -1.5));
  CHECK(loglog_slope(x, y) == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK_THROWS_AS(loglog_slope({1, 2}, {1, 0}), ParameterError);
  CHECK(monotone_non_increasing({1.0, 1.05, 0.5}, 0.1));
  CHECK_FALSE(monotone_non_increasing({1.0, 1.2, 0.5}, 0.1));
}

TEST_CASE("noise is calibrated and deterministic") {
  const Domain dom(Grid(3, 16, 1.0), 2);
  const DirichletSolver solver(dom, ScalarField(dom.grid()));
  auto basis = std::make_shared<const BoundaryBasis>(dom);
  const DtnMap clean = assemble_dtn(solver, basis, PointSource{{1, 0}, {0.5, 0.5, 0.5}});
  for (NoiseMode mode : {NoiseMode::operator_only, NoiseMode::trace_only, NoiseMode::combined}) {
    NoiseReport rep;
    const DtnMap noisy = inject_noise(clean, {1e-2, mode, 3}, &rep);
    CHECK(std::abs(rep.measured.star - 1e-2) <= 0.05e-2);
    CHECK(noisy.symmetry_defect() < 1e-10);
    const DtnMap again = inject_noise(clean, {1e-2, mode, 3});
    CHECK((again.linear() - noisy.linear()).norm() == 0.0);
    CHECK((again.offset() - noisy.offset()).norm() == 0.0);
  }
  CHECK_THROWS_AS(inject_noise(clean, {1.0, NoiseMode::combined, 3}), ParameterError);
  CHECK_THROWS_AS(parse_noise_mode("loud"), ParameterError);
}

TEST_CASE("scenarios are deterministic in the seed") {
  const ScenarioSpec spec = default_scenario_spec();
  const Scenario a = generate_scenario(spec, 11);
  const Scenario b = generate_scenario(spec, 11);
  const Scenario c = generate_scenario(spec, 12);
  CHECK(std::equal(a.q2.field.values().begin(), a.q2.field.values().end(), b.q2.field.values().begin()));
  CHECK(a.source.amplitude == b.source.amplitude);
  CHECK(a.source.position == b.source.position);
  CHECK_FALSE(a.source.position == c.source.position);
  CHECK(sobolev_norm(a.q2.field, spec.params.s) <= spec.params.M);
}

TEST_CASE("identity residuals") {
  const IdentityReport r = identity_residual_suite(3, 5);
  CHECK(r.max_alessandrini <= 1e-10);
  CHECK(r.max_affine <= 1e-10);
  CHECK(r.pass);
}

TEST_CASE("K_xi check on a small grid") {
  const KernelCheck k = kernel_check(16, 1.0, {Complex(12, 0), Complex(0, 12), 0.0}, 3, 9);
  CHECK(k.residual <= 1e-12);
}
