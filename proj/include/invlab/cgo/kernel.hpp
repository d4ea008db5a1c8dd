#pragma once

#include "invlab/core/spectral.hpp"

namespace invlab {

/// Symbol of Delta + xi.grad acting on e^{i k.x}: continuum -|k|^2 + i xi.k, or
/// the lattice form sum_d (2 cosh((xi_d / 2 + i k_d) h) - 2) / h^2 - e^{-xi.x/2}
/// Delta_h e^{xi.x/2} - for the 7-point Laplacian with spacing h.
struct XiOperator {
  CVec3 xi{};
  bool lattice = false;
  double h = 0.0;

  Complex symbol(const Vec3& k) const;
};

/// Bloch shift from {0, pi/L}^3 that keeps the symbol farthest from zero on the
/// shifted lattice. The unshifted lattice always contains the pole k = 0.
Vec3 choose_bloch_shift(const Grid& grid, const XiOperator& op);

/// Smallest |symbol| on the lattice shifted by kappa, and where it occurs.
struct SymbolMinimum {
  double value = 0.0;
  Vec3 k{};
};
SymbolMinimum symbol_minimum(const Grid& grid, const XiOperator& op, const Vec3& kappa);

/// Faddeev-type solve of Delta w + xi.grad w = f on the Bloch-shifted lattice:
/// multiplies the spectrum by 1 / symbol. Throws PoleError when the symbol
/// vanishes on the lattice.
ComplexField apply_K_xi(const ComplexField& f, const XiOperator& op, const Vec3& kappa);
ComplexField apply_K_xi(const ComplexField& f, const CVec3& xi, const Vec3& kappa);

/// Applies Delta + xi.grad (the symbol itself) on the Bloch lattice.
ComplexField apply_xi_operator(const ComplexField& w, const XiOperator& op, const Vec3& kappa);

/// ||Delta w + xi.grad w - f|| / ||f||, evaluated spectrally.
double k_xi_residual(const ComplexField& w, const ComplexField& f, const XiOperator& op, const Vec3& kappa);

}  // namespace invlab
