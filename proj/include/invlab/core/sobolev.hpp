#pragma once

#include "invlab/core/grid.hpp"

namespace invlab {

/// Smoothness order and polynomial weight exponent of H^s_delta.
struct SobolevSpec {
  int s = 0;
  double delta = 0.0;
};

/// sum_{|alpha| <= s} || (1 + |x - c|^2)^delta d^alpha v ||_{L2}, derivatives taken
/// spectrally and c the box center. delta = 0 gives the plain H^s norm.
double weighted_sobolev_norm(const ComplexField& f, const SobolevSpec& spec, const Vec3& kappa = {0, 0, 0});
double weighted_sobolev_norm(const ScalarField& f, const SobolevSpec& spec);

inline double sobolev_norm(const ComplexField& f, int s, const Vec3& kappa = {0, 0, 0}) {
  return weighted_sobolev_norm(f, SobolevSpec{s, 0.0}, kappa);
}
inline double sobolev_norm(const ScalarField& f, int s) { return weighted_sobolev_norm(f, SobolevSpec{s, 0.0}); }

/// Discrete H^{-s} norm, sqrt( L^d sum_k |c_k|^2 (1 + |k|^2)^{-s} ) over the dual lattice.
double negative_sobolev_norm(const ScalarField& f, double s);
double negative_sobolev_norm(const ComplexField& f, double s);

/// Bessel-potential kernel G_{2s}(r) = (2 pi)^{-d} int e^{i eta.x} (1 + |eta|^2)^{-s} d eta, |x| = r.
double bessel_potential_kernel(double r, double s, int dim);

/// || a1 delta_{z1} - a2 delta_{z2} ||_{H^{-s}(R^d)}, evaluated in closed form
/// through the Bessel-potential kernel. Requires s > dim / 2.
double source_diff_norm(Complex a1, const Vec3& z1, Complex a2, const Vec3& z2, double s, int dim = 3);

}  // namespace invlab
