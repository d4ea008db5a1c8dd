#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "invlab/core/errors.hpp"

namespace invlab {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<Complex, 3>;

/// Uniform periodic tensor grid on the box [0, L]^dim with n nodes per axis.
///
/// Node i sits at x = i * h with h = L / n; the node at x = L is identified
/// with x = 0. Samples are stored row-major, the first axis varying slowest.
class Grid {
 public:
  Grid(int dim, int n, double length);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / n_; }
  std::size_t size() const { return size_; }
  double cell_volume() const;

  /// Flat index of a multi-index (only the first dim() entries are read).
  std::size_t index(const std::array<int, 3>& ijk) const {
    std::size_t idx = 0;
    for (int d = 0; d < dim_; ++d) idx = idx * n_ + static_cast<std::size_t>(ijk[d]);
    return idx;
  }
  std::array<int, 3> multi_index(std::size_t flat) const;

  /// Physical position of a node; unused trailing components are zero.
  Vec3 position(std::size_t flat) const;

  /// Angular wavenumber of FFT bin j along one axis: 2 pi j' / L with j' in (-n/2, n/2].
  double wavenumber(int j) const;
  /// Signed integer frequency of FFT bin j.
  int signed_frequency(int j) const { return j <= n_ / 2 ? j : j - n_; }
  /// Angular wavevector of the flat FFT bin.
  Vec3 wavevector(std::size_t flat) const;
  /// Spacing of the dual lattice, 2 pi / L.
  double dual_spacing() const;

  Vec3 center() const;

  bool operator==(const Grid& other) const = default;

 private:
  int dim_;
  int n_;
  double length_;
  std::size_t size_;
};

/// Grid-sampled function with value semantics.
template <class T>
class Field {
 public:
  using value_type = T;

  explicit Field(const Grid& grid) : grid_(grid), values_(grid.size(), T{}) {}
  Field(const Grid& grid, std::vector<T> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
      throw DimensionError("field has " + std::to_string(values_.size()) + " samples, grid expects " +
                           std::to_string(grid_.size()));
    }
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const T> values() const { return values_; }
  std::span<T> values() { return values_; }
  const T& operator[](std::size_t i) const { return values_[i]; }
  T& operator[](std::size_t i) { return values_[i]; }

  Field& operator+=(const Field& o) {
    check_same(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  Field& operator-=(const Field& o) {
    check_same(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  template <class S>
  Field& operator*=(S s) {
    for (auto& v : values_) v *= s;
    return *this;
  }
  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  template <class S>
  friend Field operator*(S s, Field a) {
    return a *= s;
  }

  void check_same(const Field& o) const {
    if (!(grid_ == o.grid_)) throw DimensionError("fields live on different grids");
  }

 private:
  Grid grid_;
  std::vector<T> values_;
};

using ScalarField = Field<double>;
using ComplexField = Field<Complex>;

ComplexField to_complex(const ScalarField& f);
ScalarField real_part(const ComplexField& f);
ScalarField imag_part(const ComplexField& f);
/// Pointwise product.
ComplexField multiply(const ComplexField& a, const ComplexField& b);
ComplexField multiply(const ScalarField& a, const ComplexField& b);

/// Samples a callable f(Vec3) at every node.
template <class T, class F>
Field<T> sample(const Grid& grid, F&& f) {
  Field<T> out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = static_cast<T>(f(grid.position(i)));
  return out;
}

/// Discrete L2 norm sqrt(h^d sum |f|^2).
double l2_norm(const ScalarField& f);
double l2_norm(const ComplexField& f);
double max_abs(const ComplexField& f);

bool is_power_of_two(int n);

}  // namespace invlab
