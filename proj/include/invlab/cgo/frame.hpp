#pragma once

#include "invlab/core/grid.hpp"

namespace invlab {

/// Bilinear dot a.b (no conjugation).
Complex dot(const CVec3& a, const CVec3& b);
Complex dot(const CVec3& a, const Vec3& b);
/// Hermitian length sqrt(sum |a_d|^2).
double norm(const CVec3& a);
double norm(const Vec3& a);
CVec3 real_to_complex(const Vec3& v);

/// Frequency geometry of one Fourier sample: alpha, eta, zeta mutually
/// orthogonal, |alpha| = rho, |zeta|^2 = |eta|^2 + rho^2, and
/// xi1 = zeta + i alpha - i eta, xi2 = -zeta - i alpha - i eta.
struct CgoFrame {
  Vec3 eta{};
  double rho = 0.0;
  Vec3 alpha{};
  Vec3 zeta{};
  CVec3 xi1{};
  CVec3 xi2{};
};

/// Deterministic frame: alpha along the first basis vector not parallel to eta,
/// orthogonalized against eta; zeta along eta^ x alpha^. Requires dim = 3.
CgoFrame make_frame(const Vec3& eta, double rho, int dim = 3);

/// Largest violation of the frame identities (orthogonality, lengths, xi sums, null vectors),
/// relative to |zeta|^2.
double frame_defect(const CgoFrame& f);

/// Discrete null vector: sum_d (2 cosh(xi_d h / 2) - 2) = 0, so e^{xi.x/2}
/// is exactly harmonic for the 7-point Laplacian with spacing h.
Complex lattice_null_defect(const CVec3& xi, double h);

/// Lattice-exact counterpart of a frame: the pair closest (Gauss-Newton,
/// minimum-norm steps) to (xi1, xi2) with both discrete null conditions and
/// xi1 + xi2 = -2 i eta holding exactly.
struct LatticePair {
  CVec3 xi1{};
  CVec3 xi2{};
};
LatticePair lattice_pair(const CgoFrame& frame, double h);

/// Lattice-exact null vector near xi with the real part held fixed in direction.
CVec3 lattice_null_vector(const CVec3& xi, double h);

}  // namespace invlab
