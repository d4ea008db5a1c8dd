#pragma once

#include <functional>
#include <mutex>

#include "invlab/core/grid.hpp"

namespace invlab {

/// Fourier-series coefficients on the dual lattice {2 pi k / L}, stored in FFT bin order.
///
/// Mean convention: c_k = n^{-d} sum_x f(x) e^{-i k.x}, so a constant field 1 has
/// c_0 = 1 and cos(2 pi x_1 / L) has c_{+-1} = 1/2. The continuum transform
/// f^(eta) = int f e^{-i eta.x} dx of a box-supported field equals L^d c_k.
using ComplexSpectrum = ComplexField;

ComplexSpectrum spectrum(const ScalarField& f);
ComplexSpectrum spectrum(const ComplexField& f);
ComplexField inverse_spectrum(const ComplexSpectrum& c);

/// Guards FFTW planning, which is not thread safe.
std::mutex& fftw_planner_mutex();

/// Raw unnormalized transforms, in place; sign -1 is forward.
void fft_inplace(const Grid& grid, std::span<Complex> data, int sign);

/// f^(eta) = h^d sum_x f(x) e^{-i eta.x} at an arbitrary real frequency.
Complex fourier_transform_at(const ScalarField& f, const Vec3& eta);
Complex fourier_transform_at(const ComplexField& f, const Vec3& eta);

/// Fourier multiplier acting on Bloch-periodic fields.
///
/// The field is read as f = e^{i kappa.x} p with p periodic on the box; the
/// multiplier symbol is evaluated at the shifted frequencies k + kappa and the
/// result is returned in the same Bloch form. kappa = 0 gives the ordinary
/// periodic multiplier. A compactly supported field is a valid input for any
/// kappa.
using Symbol = std::function<Complex(const Vec3&)>;
ComplexField apply_multiplier(const ComplexField& f, const Symbol& symbol, const Vec3& kappa = {0, 0, 0});

/// Spectral partial derivative d^alpha f of a Bloch-periodic field.
ComplexField spectral_derivative(const ComplexField& f, const std::array<int, 3>& alpha,
                                 const Vec3& kappa = {0, 0, 0});

/// Spectral gradient components d_1 f ... d_dim f.
std::array<ComplexField, 3> spectral_gradient(const ComplexField& f, const Vec3& kappa = {0, 0, 0});

/// Spectral Laplacian.
ComplexField spectral_laplacian(const ComplexField& f, const Vec3& kappa = {0, 0, 0});

}  // namespace invlab
