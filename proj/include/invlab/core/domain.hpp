#pragma once

#include <Eigen/Dense>
#include <vector>

#include "invlab/core/grid.hpp"

namespace invlab {

/// The physical region: the closed sub-box of nodes margin..n-margin on every
/// axis of a 3-D grid. Its N = n - 2 margin intervals have the grid spacing.
class Domain {
 public:
  /// A face node of the Dirichlet boundary together with its stencil partner.
  struct BoundaryNode {
    std::size_t node;   // flat grid index of the face node
    std::size_t inner;  // flat grid index of the interior neighbour along the normal
    int axis;
    int sign;  // outward normal is sign * e_axis
  };

  Domain(const Grid& grid, int margin);

  const Grid& grid() const { return grid_; }
  int margin() const { return margin_; }
  int intervals() const { return grid_.n() - 2 * margin_; }
  /// Interior nodes per axis, N - 1.
  int side() const { return intervals() - 1; }
  double spacing() const { return grid_.spacing(); }
  double lower() const { return margin_ * spacing(); }
  double upper() const { return (grid_.n() - margin_) * spacing(); }
  double width() const { return intervals() * spacing(); }
  Vec3 center() const;

  std::size_t interior_size() const;
  std::size_t boundary_size() const { return boundary_.size(); }
  /// Flat grid index of the interior node with local coordinates 0..side()-1.
  std::size_t interior_node(std::size_t local) const;
  const std::vector<BoundaryNode>& boundary_nodes() const { return boundary_; }

  bool contains(const Vec3& x) const;
  double distance_to_boundary(const Vec3& x) const;

  bool operator==(const Domain& o) const { return grid_ == o.grid_ && margin_ == o.margin_; }

 private:
  Grid grid_;
  int margin_;
  std::vector<BoundaryNode> boundary_;
};

/// Samples on the face-interior nodes of the six faces, ordered x-, x+, y-,
/// y+, z-, z+ and row-major within a face over the two tangential axes.
/// Edge and corner nodes carry no data: the 7-point stencil never reads them.
template <class T>
class Trace {
 public:
  explicit Trace(const Domain& domain) : domain_(domain), values_(domain.boundary_size(), T{}) {}
  Trace(const Domain& domain, std::vector<T> values);

  const Domain& domain() const { return domain_; }
  std::size_t size() const { return values_.size(); }
  std::span<const T> values() const { return values_; }
  std::span<T> values() { return values_; }
  const T& operator[](std::size_t i) const { return values_[i]; }
  T& operator[](std::size_t i) { return values_[i]; }

  Trace& operator+=(const Trace& o) {
    check_same(o);
    for (std::size_t i = 0; i < size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  Trace& operator-=(const Trace& o) {
    check_same(o);
    for (std::size_t i = 0; i < size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  template <class S>
  Trace& operator*=(S s) {
    for (auto& v : values_) v *= s;
    return *this;
  }
  friend Trace operator+(Trace a, const Trace& b) { return a += b; }
  friend Trace operator-(Trace a, const Trace& b) { return a -= b; }

  void check_same(const Trace& o) const {
    if (!(domain_ == o.domain_)) throw DimensionError("traces live on different boundaries");
  }

 private:
  Domain domain_;
  std::vector<T> values_;
};

using BoundaryTrace = Trace<double>;
using ComplexTrace = Trace<Complex>;

/// Restriction of a grid field to the boundary nodes.
template <class T>
Trace<T> restrict_to_boundary(const Domain& domain, const Field<T>& f);

/// Boundary samples of a callable g(Vec3).
template <class T, class F>
Trace<T> trace_of(const Domain& domain, F&& g) {
  Trace<T> out(domain);
  const auto& nodes = domain.boundary_nodes();
  for (std::size_t b = 0; b < nodes.size(); ++b) out[b] = static_cast<T>(g(domain.grid().position(nodes[b].node)));
  return out;
}

/// Bilinear boundary pairing h^2 sum f g (no conjugation).
template <class A, class B>
auto boundary_pairing(const Trace<A>& f, const Trace<B>& g) {
  if (!(f.domain() == g.domain())) throw DimensionError("traces live on different boundaries");
  decltype(A{} * B{}) acc{};
  for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * g[i];
  const double h = f.domain().spacing();
  return acc * (h * h);
}

ComplexTrace to_complex(const BoundaryTrace& t);

/// Orthonormal eigenbasis of the discrete face Laplacian (Dirichlet at face
/// edges), face by face: phi_jk = (2 / (N h)) sin(pi j p / N) sin(pi k r / N).
/// Coefficients are taken with the boundary L2 pairing, so the coefficient map
/// is an isometry and the Euclidean product of coefficients is the L2 pairing.
class BoundaryBasis {
 public:
  explicit BoundaryBasis(const Domain& domain);

  const Domain& domain() const { return domain_; }
  std::size_t size() const { return domain_.boundary_size(); }
  /// Face Laplacian eigenvalue of mode k (non-negative).
  double eigenvalue(std::size_t k) const { return eigenvalues_[k]; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  /// (1 + lambda_k)^{order / 2}, so that sum w_k^2 |c_k|^2 is the squared H^order norm.
  Eigen::VectorXd weights(double order) const;

  Eigen::VectorXd coefficients(const BoundaryTrace& t) const;
  Eigen::VectorXcd coefficients(const ComplexTrace& t) const;
  BoundaryTrace synthesize(const Eigen::VectorXd& c) const;
  ComplexTrace synthesize(const Eigen::VectorXcd& c) const;
  BoundaryTrace mode(std::size_t k) const;

 private:
  Domain domain_;
  Eigen::MatrixXd sine_;  // symmetric orthogonal DST-I matrix
  Eigen::VectorXd eigenvalues_;
};

/// H^{+-1/2}(boundary) norm: sqrt(sum (1 + lambda_k)^{order} |c_k|^2), order = +-1/2.
double boundary_fractional_norm(const BoundaryBasis& basis, const BoundaryTrace& t, double order);
double boundary_fractional_norm(const BoundaryBasis& basis, const ComplexTrace& t, double order);

}  // namespace invlab
