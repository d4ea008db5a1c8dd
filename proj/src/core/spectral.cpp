#include "invlab/core/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace invlab {
namespace {

fftw_plan plan_for(int dim, int n, int sign) {
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  std::lock_guard lock(fftw_planner_mutex());
  const auto key = std::make_tuple(dim, n, sign);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  int dims[3] = {n, n, n};
  std::size_t total = 1;
  for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(n);
  auto* buf = fftw_alloc_complex(total);
  fftw_plan p = fftw_plan_dft(dim, dims, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  cache.emplace(key, p);
  return p;
}

Complex phase(const Vec3& k, const Vec3& x) { return std::polar(1.0, k[0] * x[0] + k[1] * x[1] + k[2] * x[2]); }

bool is_zero(const Vec3& v) { return v[0] == 0.0 && v[1] == 0.0 && v[2] == 0.0; }

}  // namespace

// Execution through the new-array interface is thread safe; planning is not.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

void fft_inplace(const Grid& grid, std::span<Complex> data, int sign) {
  if (data.size() != grid.size()) throw DimensionError("transform buffer does not match grid");
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan_for(grid.dim(), grid.n(), sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD), ptr, ptr);
}

ComplexSpectrum spectrum(const ComplexField& f) {
  ComplexField c = f;
  fft_inplace(f.grid(), c.values(), -1);
  c *= 1.0 / static_cast<double>(f.size());
  return c;
}

ComplexSpectrum spectrum(const ScalarField& f) { return spectrum(to_complex(f)); }

ComplexField inverse_spectrum(const ComplexSpectrum& c) {
  ComplexField f = c;
  fft_inplace(c.grid(), f.values(), +1);
  return f;
}

Complex fourier_transform_at(const ComplexField& f, const Vec3& eta) {
  const Grid& g = f.grid();
  Complex acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == Complex{}) continue;
    acc += f[i] * std::conj(phase(eta, g.position(i)));
  }
  return acc * g.cell_volume();
}

Complex fourier_transform_at(const ScalarField& f, const Vec3& eta) { return fourier_transform_at(to_complex(f), eta); }

ComplexField apply_multiplier(const ComplexField& f, const Symbol& symbol, const Vec3& kappa) {
  const Grid& g = f.grid();
  const bool shifted = !is_zero(kappa);
  ComplexField work = f;
  if (shifted) {
    for (std::size_t i = 0; i < g.size(); ++i) work[i] *= std::conj(phase(kappa, g.position(i)));
  }
  fft_inplace(g, work.values(), -1);
  const double inv = 1.0 / static_cast<double>(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    Vec3 k = g.wavevector(i);
    for (int d = 0; d < 3; ++d) k[d] += kappa[d];
    work[i] *= symbol(k) * inv;
  }
  fft_inplace(g, work.values(), +1);
  if (shifted) {
    for (std::size_t i = 0; i < g.size(); ++i) work[i] *= phase(kappa, g.position(i));
  }
  return work;
}

ComplexField spectral_derivative(const ComplexField& f, const std::array<int, 3>& alpha, const Vec3& kappa) {
  const int dim = f.grid().dim();
  const int n = f.grid().n();
  return apply_multiplier(
      f,
      [&](const Vec3& k) {
        Complex s = 1.0;
        for (int d = 0; d < dim; ++d) {
          // The Nyquist bin of an odd derivative has no consistent sign; drop it.
          if (alpha[d] % 2 == 1 && kappa[d] == 0.0 && std::abs(k[d]) >= 0.5 * n * f.grid().dual_spacing() - 1e-12) return Complex{};
          for (int p = 0; p < alpha[d]; ++p) s *= Complex(0.0, k[d]);
        }
        return s;
      },
      kappa);
}

std::array<ComplexField, 3> spectral_gradient(const ComplexField& f, const Vec3& kappa) {
  std::array<ComplexField, 3> out{ComplexField(f.grid()), ComplexField(f.grid()), ComplexField(f.grid())};
  for (int d = 0; d < f.grid().dim(); ++d) {
    std::array<int, 3> a{0, 0, 0};
    a[d] = 1;
    out[d] = spectral_derivative(f, a, kappa);
  }
  return out;
}

ComplexField spectral_laplacian(const ComplexField& f, const Vec3& kappa) {
  return apply_multiplier(
      f, [](const Vec3& k) { return Complex(-(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]), 0.0); }, kappa);
}

}  // namespace invlab
