#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "invlab/forward/dirichlet.hpp"
#include "invlab/forward/dtn.hpp"
#include "invlab/forward/potential.hpp"

using namespace invlab;

namespace {

Domain small_domain() { return Domain(Grid(3, 16, 1.0), 2); }

}  // namespace

TEST_CASE("discrete harmonic quadratics are reproduced exactly") {
  const Domain dom = small_domain();
  const DirichletSolver solver(dom, ScalarField(dom.grid()));
  auto exact = [](const Vec3& x) { return x[0] * x[0] - x[1] * x[1] + x[0] * x[1] * x[2]; };
  const ScalarField u = solver.solve(trace_of<double>(dom, exact));
  for (std::size_t k = 0; k < dom.interior_size(); k += 13) {
    const std::size_t i = dom.interior_node(k);
    CHECK(std::abs(u[i] - exact(dom.grid().position(i))) < 1e-12);
  }
}

TEST_CASE("Neumann trace of a linear field") {
  const Domain dom = small_domain();
  const auto u = sample<double>(dom.grid(), [](const Vec3& x) { return x[0]; });
  const BoundaryTrace t = neumann_trace(dom, u);
  const auto& nodes = dom.boundary_nodes();
  for (std::size_t b = 0; b < nodes.size(); ++b) {
    const double expected = nodes[b].axis == 0 ? nodes[b].sign : 0.0;
    CHECK(std::abs(t[b] - expected) < 1e-12);
  }
}

TEST_CASE("smallest Dirichlet eigenvalue matches the discrete formula") {
  const Domain dom = small_domain();
  const double h = dom.spacing();
  const int N = dom.intervals();
  const double s = std::sin(std::numbers::pi / (2.0 * N));
  const double lambda = -12.0 * s * s / (h * h);
  const KernelReport k0 = check_kernel_trivial(dom, ScalarField(dom.grid()));
  CHECK(k0.smallest_eigenvalue == doctest::Approx(lambda).epsilon(1e-8));
  CHECK(k0.trivial);
  // a constant potential inside the domain shifts the spectrum
  auto q = sample<double>(dom.grid(), [&](const Vec3& x) { return dom.distance_to_boundary(x) > 0 ? 5.0 : 0.0; });
  const KernelReport k1 = check_kernel_trivial(dom, q);
  CHECK(k1.smallest_eigenvalue == doctest::Approx(lambda + 5.0).epsilon(1e-8));
}

TEST_CASE("DtN map is symmetric and survives a DTNM round trip") {
  const Domain dom = small_domain();
  const Potential q = bump_potential(dom, {{{0.5, 0.45, 0.55}, 0.15, 4.0}}, 0.1);
  const DirichletSolver solver(dom, q.field);
  auto basis = std::make_shared<const BoundaryBasis>(dom);
  const DtnMap map = assemble_dtn(solver, basis, PointSource{{0.7, -0.2}, {0.45, 0.5, 0.52}});
  CHECK(map.symmetry_defect() < 1e-10);

  const std::string path = "test_forward_roundtrip.dtnm";
  write_dtn(path, map);
  const DtnMap back = read_dtn(path);
  CHECK(back.domain() == dom);
  CHECK((back.linear() - map.linear()).norm() == 0.0);
  CHECK((back.offset() - map.offset()).norm() == 0.0);

  // corrupt the magic: the reader must refuse before touching the payload
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(0);
    f.write("XXXX", 4);
  }
  CHECK_THROWS_AS(read_dtn(path), FormatError);
  std::remove(path.c_str());
}

TEST_CASE("source offset obeys discrete reciprocity and Gauss flux") {
  const Domain dom = small_domain();
  const DirichletSolver solver(dom, ScalarField(dom.grid()));
  const BoundaryBasis basis(dom);
  const PointSource src{{1.3, 0.4}, {0.47, 0.52, 0.5}};
  const Eigen::VectorXcd offset = source_offset(solver, basis, src);
  // v = 1 is discrete-harmonic; its pairing with Phi(0) carries the total flux a
  const BoundaryTrace one = trace_of<double>(dom, [](const Vec3&) { return 1.0; });
  const Complex pairing = (offset.transpose() * basis.coefficients(one).cast<Complex>()).value();
  const ScalarField v = solver.solve(one);
  const SourceSolution<Complex> u = solver.solve_with_source(src, ComplexTrace(dom));
  const double w = reciprocity_weight(dom, v, src.position, u.r_min);
  CHECK(std::abs(pairing - src.amplitude * w) < 1e-10);
  CHECK(std::abs(pairing - src.amplitude) / std::abs(src.amplitude) < 0.05);
}

TEST_CASE("geometry and bound validation") {
  const Domain dom = small_domain();
  CHECK_THROWS_AS(validate_source(dom, {{1, 0}, {0.13, 0.5, 0.5}}, 2 * dom.spacing()), GeometryError);
  CHECK_THROWS_AS(validate_source(dom, {{0, 0}, {0.5, 0.5, 0.5}}, 0.0), ParameterError);
  Potential q = bump_potential(dom, {{{0.5, 0.5, 0.5}, 0.15, 4.0}}, 0.1, 2);
  q.bound_M = 1e-3;
  CHECK_THROWS_AS(validate_potential(dom, q), ParameterError);
  Potential leak = zero_potential(dom.grid());
  leak.field[0] = 1.0;
  CHECK_THROWS_AS(validate_potential(dom, leak), GeometryError);
}
