#include <doctest.h>

#include <cmath>
#include <numbers>

#include "invlab/core/spectral.hpp"
#include "invlab/inversion/reconstruction.hpp"
#include "invlab/inversion/source.hpp"

using namespace invlab;
using std::numbers::pi;

TEST_CASE("truncation radius") {
  // root of 3 log R + R + 2 log 1e-3 = 0, by an independent bisection
  const double frozen = 7.694135364784173;
  const double r = choose_truncation_radius(1e-3, 3, 3, 1.0);
  CHECK(r == doctest::Approx(frozen).epsilon(1e-10));
  CHECK(r >= truncation_radius_lower_bound(1e-3, 3, 3, 1.0));
  CHECK(choose_truncation_radius(1e-6, 3, 3, 1.0) > r);
  CHECK_THROWS_AS(choose_truncation_radius(1.0, 3, 3, 1.0), ParameterError);
  CHECK_THROWS_AS(choose_truncation_radius(1e-3, 1, 3, 1.0), ParameterError);
}

TEST_CASE("reconstruction parameter preconditions") {
  ReconstructionParams p;
  p.M = 10;
  p.C1 = 1;
  p.rho = 20;
  CHECK_NOTHROW(validate(p));
  p.rho = 5;
  CHECK_THROWS_AS(validate(p), ParameterError);
  p.rho = 20;
  p.s = 1;
  CHECK_THROWS_AS(validate(p), ParameterError);
}

TEST_CASE("Fourier inversion of an exact estimator") {
  const Grid g(3, 16, 1.0);
  const auto dq = sample<double>(g, [](const Vec3& x) { return std::cos(2 * pi * x[0]) - 0.5 * std::sin(2 * pi * x[2]); });
  ReconstructionParams p;
  p.M = 1;
  p.C1 = 1;
  p.rho = 8;
  p.R = 1.5 * 2 * pi;
  const ReconstructionResult r =
      reconstruct_potential_diff(g, [&](const CgoFrame& f) { return fourier_transform_at(dq, f.eta); }, p);
  CHECK(r.samples.size() == 19u);  // lattice points with |k|^2 <= 2
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(r.dq[i] - dq[i]) < 1e-12);
  CHECK(r.imag_residue < 1e-12);
}

TEST_CASE("probe parameters are null vectors") {
  const auto probes = probe_parameters({4.0, 8.0, 16.0});
  CHECK(probes.size() == 12u);
  for (const auto& t : probes) CHECK(std::abs(dot(t, t)) < 1e-12);
}

TEST_CASE("noiseless source localization without a potential") {
  const Domain dom(Grid(3, 32, 1.0), 4);
  const DirichletSolver solver(dom, ScalarField(dom.grid()));
  const BoundaryBasis basis(dom);
  const PointSource src{{0.8, -0.6}, {0.46, 0.55, 0.41}};
  const SourceEstimate est = recover_source(solver, basis, source_offset(solver, basis, src));
  double dz = 0.0;
  for (int d = 0; d < 3; ++d) dz = std::max(dz, std::abs(est.z[d] - src.position[d]));
  CHECK(dz <= 2 * dom.spacing());
  CHECK(std::abs(est.a - src.amplitude) / std::abs(src.amplitude) <= 1e-2);
  CHECK(est.probes == 13);
}
