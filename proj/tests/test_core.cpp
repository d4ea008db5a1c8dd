#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "invlab/core/cutoff.hpp"
#include "invlab/core/domain.hpp"
#include "invlab/core/field_io.hpp"
#include "invlab/core/interpolate.hpp"
#include "invlab/core/sobolev.hpp"
#include "invlab/core/spectral.hpp"

using namespace invlab;
using std::numbers::pi;

TEST_CASE("grid geometry and wavenumbers") {
  const Grid g(3, 16, 2.0);
  CHECK(g.spacing() == doctest::Approx(0.125));
  CHECK(g.cell_volume() == doctest::Approx(0.125 * 0.125 * 0.125));
  CHECK(g.signed_frequency(8) == 8);
  CHECK(g.signed_frequency(9) == -7);
  CHECK(g.wavenumber(15) == doctest::Approx(-pi));
  const auto ijk = g.multi_index(g.index({3, 5, 7}));
  CHECK(ijk == std::array<int, 3>{3, 5, 7});
  CHECK_THROWS_AS(ScalarField(g, std::vector<double>(7)), DimensionError);
}

TEST_CASE("mean-convention spectrum of a cosine") {
  const Grid g(3, 16, 1.0);
  const auto f = sample<double>(g, [](const Vec3& x) { return std::cos(2 * pi * x[0]); });
  const ComplexSpectrum c = spectrum(f);
  CHECK(std::abs(c[g.index({1, 0, 0})] - 0.5) < 1e-14);
  CHECK(std::abs(c[g.index({15, 0, 0})] - 0.5) < 1e-14);
  CHECK(std::abs(c[0]) < 1e-14);
  const ComplexField back = inverse_spectrum(c);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(back[i] - f[i]) < 1e-13);
  // continuum transform at the lattice frequency equals L^3 c_k
  CHECK(std::abs(fourier_transform_at(f, {2 * pi, 0, 0}) - 0.5) < 1e-13);
}

TEST_CASE("spectral derivative of a plane wave") {
  const Grid g(3, 16, 1.0);
  const auto f = sample<Complex>(g, [](const Vec3& x) { return std::polar(1.0, 2 * pi * (2 * x[1] - x[2])); });
  const ComplexField d = spectral_derivative(f, {0, 1, 0});
  for (std::size_t i = 0; i < g.size(); i += 37) CHECK(std::abs(d[i] - Complex(0, 4 * pi) * f[i]) < 1e-11);
}

TEST_CASE("Sobolev norms of a single mode") {
  const Grid g(3, 16, 1.0);
  const auto f = sample<double>(g, [](const Vec3& x) { return std::cos(2 * pi * x[0]); });
  // ||d^j cos|| = (2 pi)^j / sqrt 2, only pure x-derivatives survive
  const double k = 2 * pi;
  CHECK(sobolev_norm(f, 2) == doctest::Approx((1 + k + k * k) / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(negative_sobolev_norm(f, 2.0) == doctest::Approx(std::sqrt(0.5) / (1 + k * k)).epsilon(1e-12));
}

TEST_CASE("Bessel-potential closed forms") {
  // G_4 in three dimensions is e^{-r} / (8 pi)
  for (double r : {0.0, 0.1, 0.7}) {
    CHECK(bessel_potential_kernel(r, 2.0, 3) == doctest::Approx(std::exp(-r) / (8 * pi)).epsilon(1e-8));
  }
  const double r = 0.3;
  const double expected = std::sqrt((1 - std::exp(-r)) / (4 * pi));
  CHECK(source_diff_norm(1.0, {0, 0, 0}, 1.0, {r, 0, 0}, 2.0) == doctest::Approx(expected).epsilon(1e-8));
  CHECK(source_diff_norm(2.0, {0.1, 0.2, 0.3}, 2.0, {0.1, 0.2, 0.3}, 2.0) == doctest::Approx(0.0));
}

TEST_CASE("smoothstep and plateau") {
  CHECK(smoothstep7(-1.0) == 0.0);
  CHECK(smoothstep7(2.0) == 1.0);
  CHECK(smoothstep7(0.5) == doctest::Approx(0.5));
  CHECK(plateau({0.5, 0.5, 0.5}, 3, 0.0, 1.0, 0.1) == 1.0);
  CHECK(plateau({0.05, 0.5, 0.5}, 3, 0.0, 1.0, 0.1) == 0.0);
}

TEST_CASE("Lagrange interpolation reproduces cubics") {
  const Grid g(3, 16, 1.0);
  const auto f = sample<double>(g, [](const Vec3& x) { return x[0] * x[0] * x[0] - 2 * x[1] * x[2] + x[2]; });
  const Vec3 x{0.4321, 0.517, 0.6003};
  CHECK(interpolate(f, x) == doctest::Approx(x[0] * x[0] * x[0] - 2 * x[1] * x[2] + x[2]).epsilon(1e-12));
  CHECK(interpolate(f, g.position(g.index({5, 6, 7}))) == f[g.index({5, 6, 7})]);
}

TEST_CASE("boundary basis is orthonormal") {
  const Domain dom(Grid(3, 16, 1.0), 2);
  const BoundaryBasis basis(dom);
  CHECK(basis.size() == 6u * 11u * 11u);
  for (std::size_t k : {0ul, 17ul, 400ul}) {
    const Eigen::VectorXd c = basis.coefficients(basis.mode(k));
    CHECK(std::abs(c[static_cast<Eigen::Index>(k)] - 1.0) < 1e-13);
    CHECK(c.norm() == doctest::Approx(1.0));
  }
  // pairing of traces equals the Euclidean product of coefficients
  const auto a = trace_of<double>(dom, [](const Vec3& x) { return x[0] + x[1] * x[1]; });
  const auto b = trace_of<double>(dom, [](const Vec3& x) { return std::sin(3 * x[2]); });
  CHECK(boundary_pairing(a, b) == doctest::Approx(basis.coefficients(a).dot(basis.coefficients(b))).epsilon(1e-12));
  const Eigen::VectorXd w = basis.weights(-0.5);
  CHECK(w[0] == doctest::Approx(std::pow(1 + basis.eigenvalue(0), -0.25)));
}

TEST_CASE("SFLD round trip and header validation") {
  const Grid g(3, 8, 1.5);
  const auto f = sample<Complex>(g, [](const Vec3& x) { return Complex(x[0] - x[2], x[1] * 3); });
  std::stringstream ss;
  write_field(ss, f);
  const FieldHeader h = read_field_header(ss);
  CHECK(h.n == 8u);
  CHECK(h.length == 1.5);
  CHECK(h.complex);
  std::stringstream bad("XXXX garbage");
  CHECK_THROWS_AS(read_field_header(bad), FormatError);
}
