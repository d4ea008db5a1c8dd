#include "invlab/core/domain.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace invlab {

Domain::Domain(const Grid& grid, int margin) : grid_(grid), margin_(margin) {
  if (grid.dim() != 3) throw DimensionError("the physical domain is only realized in three dimensions");
  if (margin < 1 || grid.n() - 2 * margin < 4) {
    throw ParameterError("domain margin " + std::to_string(margin) + " leaves too few nodes");
  }
  const int n_side = side();
  const int lo = margin_;
  const int hi = grid.n() - margin_;
  boundary_.reserve(6 * static_cast<std::size_t>(n_side) * n_side);
  for (int axis = 0; axis < 3; ++axis) {
    const int t1 = axis == 0 ? 1 : 0;
    const int t2 = axis == 2 ? 1 : 2;
    for (int sgn : {-1, +1}) {
      const int face = sgn < 0 ? lo : hi;
      for (int p = 1; p <= n_side; ++p) {
        for (int r = 1; r <= n_side; ++r) {
          std::array<int, 3> ijk{};
          ijk[axis] = face;
          ijk[t1] = lo + p;
          ijk[t2] = lo + r;
          std::array<int, 3> in = ijk;
          in[axis] -= sgn;
          boundary_.push_back({grid.index(ijk), grid.index(in), axis, sgn});
        }
      }
    }
  }
}

Vec3 Domain::center() const {
  const double c = 0.5 * (lower() + upper());
  return {c, c, c};
}

std::size_t Domain::interior_size() const {
  const auto s = static_cast<std::size_t>(side());
  return s * s * s;
}

std::size_t Domain::interior_node(std::size_t local) const {
  const auto s = static_cast<std::size_t>(side());
  const int k = static_cast<int>(local % s);
  const int j = static_cast<int>((local / s) % s);
  const int i = static_cast<int>(local / (s * s));
  return grid_.index({margin_ + 1 + i, margin_ + 1 + j, margin_ + 1 + k});
}

bool Domain::contains(const Vec3& x) const {
  for (int d = 0; d < 3; ++d)
    if (!(x[d] > lower() && x[d] < upper())) return false;
  return true;
}

double Domain::distance_to_boundary(const Vec3& x) const {
  double dist = std::numeric_limits<double>::infinity();
  for (int d = 0; d < 3; ++d) dist = std::min({dist, x[d] - lower(), upper() - x[d]});
  return dist;
}

template <class T>
Trace<T>::Trace(const Domain& domain, std::vector<T> values) : domain_(domain), values_(std::move(values)) {
  if (values_.size() != domain_.boundary_size()) {
    throw DimensionError("trace has " + std::to_string(values_.size()) + " samples, boundary expects " +
                         std::to_string(domain_.boundary_size()));
  }
}

template class Trace<double>;
template class Trace<Complex>;

template <class T>
Trace<T> restrict_to_boundary(const Domain& domain, const Field<T>& f) {
  if (!(f.grid() == domain.grid())) throw DimensionError("field and domain use different grids");
  Trace<T> out(domain);
  const auto& nodes = domain.boundary_nodes();
  for (std::size_t b = 0; b < nodes.size(); ++b) out[b] = f[nodes[b].node];
  return out;
}

template Trace<double> restrict_to_boundary(const Domain&, const Field<double>&);
template Trace<Complex> restrict_to_boundary(const Domain&, const Field<Complex>&);

ComplexTrace to_complex(const BoundaryTrace& t) {
  ComplexTrace out(t.domain());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = t[i];
  return out;
}

BoundaryBasis::BoundaryBasis(const Domain& domain) : domain_(domain) {
  const int N = domain.intervals();
  const int s = domain.side();
  const double h = domain.spacing();
  sine_.resize(s, s);
  for (int j = 0; j < s; ++j)
    for (int p = 0; p < s; ++p) sine_(j, p) = std::sqrt(2.0 / N) * std::sin(std::numbers::pi * (j + 1) * (p + 1) / N);
  Eigen::VectorXd mu(s);
  for (int j = 0; j < s; ++j) {
    const double sj = std::sin(0.5 * std::numbers::pi * (j + 1) / N);
    mu[j] = 4.0 * sj * sj / (h * h);
  }
  eigenvalues_.resize(static_cast<Eigen::Index>(size()));
  Eigen::Index k = 0;
  for (int face = 0; face < 6; ++face)
    for (int j = 0; j < s; ++j)
      for (int r = 0; r < s; ++r) eigenvalues_[k++] = mu[j] + mu[r];
}

Eigen::VectorXd BoundaryBasis::weights(double order) const {
  return (1.0 + eigenvalues_.array()).pow(0.5 * order).matrix();
}

namespace {

template <class Scalar, class Vec>
Vec face_transform(const Eigen::MatrixXd& sine, const Scalar* in, std::size_t count, double scale) {
  const Eigen::Index s = sine.rows();
  Vec out(static_cast<Eigen::Index>(count));
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  for (Eigen::Index face = 0; face < 6; ++face) {
    Eigen::Map<const Mat> f(in + face * s * s, s, s);
    Mat c = scale * (sine.cast<Scalar>() * f * sine.cast<Scalar>());
    Eigen::Map<Mat>(out.data() + face * s * s, s, s) = c;
  }
  return out;
}

}  // namespace

Eigen::VectorXd BoundaryBasis::coefficients(const BoundaryTrace& t) const {
  if (!(t.domain() == domain_)) throw DimensionError("trace does not match the boundary basis");
  return face_transform<double, Eigen::VectorXd>(sine_, t.values().data(), size(), domain_.spacing());
}

Eigen::VectorXcd BoundaryBasis::coefficients(const ComplexTrace& t) const {
  if (!(t.domain() == domain_)) throw DimensionError("trace does not match the boundary basis");
  return face_transform<Complex, Eigen::VectorXcd>(sine_, t.values().data(), size(), domain_.spacing());
}

BoundaryTrace BoundaryBasis::synthesize(const Eigen::VectorXd& c) const {
  if (static_cast<std::size_t>(c.size()) != size()) throw DimensionError("coefficient vector has the wrong length");
  const Eigen::VectorXd v = face_transform<double, Eigen::VectorXd>(sine_, c.data(), size(), 1.0 / domain_.spacing());
  return BoundaryTrace(domain_, std::vector<double>(v.data(), v.data() + v.size()));
}

ComplexTrace BoundaryBasis::synthesize(const Eigen::VectorXcd& c) const {
  if (static_cast<std::size_t>(c.size()) != size()) throw DimensionError("coefficient vector has the wrong length");
  const Eigen::VectorXcd v =
      face_transform<Complex, Eigen::VectorXcd>(sine_, c.data(), size(), 1.0 / domain_.spacing());
  return ComplexTrace(domain_, std::vector<Complex>(v.data(), v.data() + v.size()));
}

BoundaryTrace BoundaryBasis::mode(std::size_t k) const {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size()));
  c[static_cast<Eigen::Index>(k)] = 1.0;
  return synthesize(c);
}

double boundary_fractional_norm(const BoundaryBasis& basis, const BoundaryTrace& t, double order) {
  if (std::abs(std::abs(order) - 0.5) > 1e-15) throw ParameterError("boundary norm order must be +1/2 or -1/2");
  return (basis.weights(order).array() * basis.coefficients(t).array()).matrix().norm();
}

double boundary_fractional_norm(const BoundaryBasis& basis, const ComplexTrace& t, double order) {
  if (std::abs(std::abs(order) - 0.5) > 1e-15) throw ParameterError("boundary norm order must be +1/2 or -1/2");
  return (basis.weights(order).cast<Complex>().array() * basis.coefficients(t).array()).matrix().norm();
}

}  // namespace invlab
