#include <doctest.h>

#include <cmath>
#include <numbers>

#include "invlab/cgo/solutions.hpp"
#include "invlab/forward/potential.hpp"

using namespace invlab;
using std::numbers::pi;

TEST_CASE("continuum symbol of Delta + xi.grad") {
  const XiOperator op{{Complex(3, 1), Complex(0, 2), Complex(-1, 0)}};
  const Vec3 k{1.0, 2.0, -0.5};
  const Complex xik = Complex(3, 1) * 1.0 + Complex(0, 2) * 2.0 + Complex(-1, 0) * -0.5;
  CHECK(std::abs(op.symbol(k) - (-(1.0 + 4.0 + 0.25) + Complex(0, 1) * xik)) < 1e-14);
}

TEST_CASE("K_xi inverts the operator on band-limited data") {
  const Grid g(3, 16, 1.0);
  const CVec3 xi{Complex(20, 0), Complex(0, 20), Complex(0, 0)};
  const XiOperator op{xi};
  const Vec3 kappa = choose_bloch_shift(g, op);
  CHECK(symbol_minimum(g, op, kappa).value > 0.0);
  const auto f = sample<Complex>(g, [](const Vec3& x) {
    return std::polar(1.0, 2 * pi * (x[0] + 2 * x[2])) + 0.5 * std::cos(2 * pi * 3 * x[1]);
  });
  const ComplexField w = apply_K_xi(f, op, kappa);
  CHECK(k_xi_residual(w, f, op, kappa) < 1e-12);
}

TEST_CASE("frame identities") {
  const CgoFrame f = make_frame({2 * pi, -4 * pi, 0.0}, 16.0);
  CHECK(frame_defect(f) < 1e-14);
  CHECK(std::abs(dot(f.xi1, f.xi1)) < 1e-10);
  CHECK(std::abs(dot(f.xi2, f.xi2)) < 1e-10);
  for (int d = 0; d < 3; ++d) CHECK(std::abs(f.xi1[d] + f.xi2[d] - Complex(0, -2 * f.eta[d])) < 1e-12);
  CHECK(norm(f.alpha) == doctest::Approx(16.0));
}

TEST_CASE("lattice null vectors are exactly discrete-harmonic") {
  const double h = 1.0 / 16;
  const CVec3 xi = lattice_null_vector({Complex(8, 0), Complex(0, 8), Complex(0, 0)}, h);
  CHECK(std::abs(lattice_null_defect(xi, h)) < 1e-12);
}

TEST_CASE("zero potential gives the pure exponential") {
  const Grid g(3, 16, 1.0);
  const CgoSolution u = cgo_solution(ScalarField(g), {Complex(10, 0), Complex(0, 10), Complex(0, 0)});
  CHECK(max_abs(u.psi()) < 1e-14);
  CHECK(u.residual < 1e-12);
}

TEST_CASE("CGO residual for a bump potential") {
  const Domain dom(Grid(3, 32, 1.0), 4);
  const Potential q = bump_potential(dom, {{{0.5, 0.48, 0.52}, 0.12, 6.0}}, 0.08);
  const CgoSolution u = cgo_solution(q.field, {Complex(16 * std::sqrt(2.0), 0), Complex(0, 16 * std::sqrt(2.0)), 0.0});
  CHECK(u.residual < 1e-6);
  CHECK(u.series.last_ratio < 0.5);
}
