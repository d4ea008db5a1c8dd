#include "invlab/core/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace invlab {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

Grid::Grid(int dim, int n, double length) : dim_(dim), n_(n), length_(length) {
  if (dim != 2 && dim != 3) throw ParameterError("grid dimension must be 2 or 3, got " + std::to_string(dim));
  if (!is_power_of_two(n) || n < 4) throw ParameterError("points per axis must be a power of two >= 4, got " + std::to_string(n));
  if (!(length > 0.0) || !std::isfinite(length)) throw ParameterError("box length must be positive");
  size_ = 1;
  for (int d = 0; d < dim; ++d) size_ *= static_cast<std::size_t>(n);
}

double Grid::cell_volume() const { return std::pow(spacing(), dim_); }

std::array<int, 3> Grid::multi_index(std::size_t flat) const {
  std::array<int, 3> ijk{0, 0, 0};
  for (int d = dim_ - 1; d >= 0; --d) {
    ijk[d] = static_cast<int>(flat % n_);
    flat /= n_;
  }
  return ijk;
}

Vec3 Grid::position(std::size_t flat) const {
  const auto ijk = multi_index(flat);
  const double h = spacing();
  Vec3 x{0, 0, 0};
  for (int d = 0; d < dim_; ++d) x[d] = ijk[d] * h;
  return x;
}

double Grid::dual_spacing() const { return 2.0 * std::numbers::pi / length_; }

double Grid::wavenumber(int j) const { return dual_spacing() * signed_frequency(j); }

Vec3 Grid::wavevector(std::size_t flat) const {
  const auto ijk = multi_index(flat);
  Vec3 k{0, 0, 0};
  for (int d = 0; d < dim_; ++d) k[d] = wavenumber(ijk[d]);
  return k;
}

Vec3 Grid::center() const {
  Vec3 c{0, 0, 0};
  for (int d = 0; d < dim_; ++d) c[d] = 0.5 * length_;
  return c;
}

ComplexField to_complex(const ScalarField& f) {
  ComplexField out(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i];
  return out;
}

ScalarField real_part(const ComplexField& f) {
  ScalarField out(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i].real();
  return out;
}

ScalarField imag_part(const ComplexField& f) {
  ScalarField out(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i].imag();
  return out;
}

ComplexField multiply(const ComplexField& a, const ComplexField& b) {
  a.check_same(b);
  ComplexField out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

ComplexField multiply(const ScalarField& a, const ComplexField& b) {
  if (!(a.grid() == b.grid())) throw DimensionError("fields live on different grids");
  ComplexField out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

double l2_norm(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return std::sqrt(s * f.grid().cell_volume());
}

double l2_norm(const ComplexField& f) {
  double s = 0.0;
  for (const auto& v : f.values()) s += std::norm(v);
  return std::sqrt(s * f.grid().cell_volume());
}

double max_abs(const ComplexField& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace invlab
