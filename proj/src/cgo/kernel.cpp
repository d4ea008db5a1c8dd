#include "invlab/cgo/kernel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "invlab/cgo/frame.hpp"

namespace invlab {

Complex XiOperator::symbol(const Vec3& k) const {
  if (!lattice) {
    const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    return Complex(-k2, 0.0) + Complex(0.0, 1.0) * dot(xi, k);
  }
  Complex s = 0.0;
  for (int d = 0; d < 3; ++d) s += 2.0 * std::cosh((0.5 * xi[d] + Complex(0.0, k[d])) * h) - 2.0;
  return s / (h * h);
}

SymbolMinimum symbol_minimum(const Grid& grid, const XiOperator& op, const Vec3& kappa) {
  SymbolMinimum best{std::numeric_limits<double>::infinity(), {}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Vec3 k = grid.wavevector(i);
    for (int d = 0; d < 3; ++d) k[d] += kappa[d];
    const double v = std::abs(op.symbol(k));
    if (v < best.value) best = {v, k};
  }
  return best;
}

Vec3 choose_bloch_shift(const Grid& grid, const XiOperator& op) {
  const double half = std::numbers::pi / grid.length();
  Vec3 best{};
  double best_value = -1.0;
  for (int mask = 0; mask < (1 << grid.dim()); ++mask) {
    Vec3 kappa{0, 0, 0};
    for (int d = 0; d < grid.dim(); ++d)
      if (mask & (1 << d)) kappa[d] = half;
    const double v = symbol_minimum(grid, op, kappa).value;
    if (v > best_value * (1.0 + 1e-12)) {
      best_value = v;
      best = kappa;
    }
  }
  return best;
}

ComplexField apply_K_xi(const ComplexField& f, const XiOperator& op, const Vec3& kappa) {
  const Grid& g = f.grid();
  const double tol = 1e-12 * std::max(1.0, norm(op.xi)) * g.dual_spacing();
  auto phase = [&](std::size_t i) {
    const Vec3 x = g.position(i);
    return std::polar(1.0, kappa[0] * x[0] + kappa[1] * x[1] + kappa[2] * x[2]);
  };
  ComplexField work = f;
  for (std::size_t i = 0; i < g.size(); ++i) work[i] *= std::conj(phase(i));
  fft_inplace(g, work.values(), -1);
  double cmax = 0.0;
  for (const auto& c : work.values()) cmax = std::max(cmax, std::abs(c));
  const double inv = 1.0 / static_cast<double>(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    Vec3 k = g.wavevector(i);
    for (int d = 0; d < 3; ++d) k[d] += kappa[d];
    const Complex p = op.symbol(k);
    if (std::abs(p) <= tol) {
      // A pole only matters where the data has content.
      if (std::abs(work[i]) <= 1e-13 * cmax) {
        work[i] = 0.0;
        continue;
      }
      std::ostringstream os;
      os << "K_xi pole on the lattice at k = (" << k[0] << ", " << k[1] << ", " << k[2] << ")";
      throw PoleError(os.str());
    }
    work[i] *= inv / p;
  }
  fft_inplace(g, work.values(), +1);
  for (std::size_t i = 0; i < g.size(); ++i) work[i] *= phase(i);
  return work;
}

ComplexField apply_K_xi(const ComplexField& f, const CVec3& xi, const Vec3& kappa) {
  return apply_K_xi(f, XiOperator{xi, false, 0.0}, kappa);
}

ComplexField apply_xi_operator(const ComplexField& w, const XiOperator& op, const Vec3& kappa) {
  return apply_multiplier(w, [&](const Vec3& k) { return op.symbol(k); }, kappa);
}

double k_xi_residual(const ComplexField& w, const ComplexField& f, const XiOperator& op, const Vec3& kappa) {
  ComplexField r = apply_xi_operator(w, op, kappa);
  r -= f;
  const double nf = l2_norm(f);
  return nf == 0.0 ? l2_norm(r) : l2_norm(r) / nf;
}

}  // namespace invlab
