#include "invlab/core/interpolate.hpp"

#include <cmath>

namespace invlab {
namespace {

// Weights of the stencil base-1 .. base+2 at fractional offset t in [0, 1).
std::array<double, 4> lagrange4(double t) {
  std::array<double, 4> w{};
  const double nodes[4] = {-1.0, 0.0, 1.0, 2.0};
  for (int a = 0; a < 4; ++a) {
    double p = 1.0;
    for (int b = 0; b < 4; ++b)
      if (b != a) p *= (t - nodes[b]) / (nodes[a] - nodes[b]);
    w[a] = p;
  }
  return w;
}

}  // namespace

template <class T>
T interpolate(const Field<T>& f, const Vec3& x) {
  const Grid& g = f.grid();
  const int n = g.n();
  std::array<int, 3> base{0, 0, 0};
  std::array<std::array<double, 4>, 3> w{};
  for (int d = 0; d < 3; ++d) w[d] = {0.0, 1.0, 0.0, 0.0};
  for (int d = 0; d < g.dim(); ++d) {
    const double s = x[d] / g.spacing();
    const double fl = std::floor(s);
    base[d] = static_cast<int>(fl);
    w[d] = lagrange4(s - fl);
  }
  auto wrap = [n](int i) { return ((i % n) + n) % n; };
  T acc{};
  const int span2 = g.dim() == 3 ? 4 : 1;
  for (int a = 0; a < 4; ++a) {
    if (w[0][a] == 0.0) continue;
    for (int b = 0; b < 4; ++b) {
      if (w[1][b] == 0.0) continue;
      for (int c = 0; c < span2; ++c) {
        const double wc = g.dim() == 3 ? w[2][c] : 1.0;
        if (wc == 0.0) continue;
        const std::array<int, 3> ijk{wrap(base[0] + a - 1), wrap(base[1] + b - 1),
                                     g.dim() == 3 ? wrap(base[2] + c - 1) : 0};
        acc += (w[0][a] * w[1][b] * wc) * f[g.index(ijk)];
      }
    }
  }
  return acc;
}

template double interpolate(const Field<double>&, const Vec3&);
template Complex interpolate(const Field<Complex>&, const Vec3&);

}  // namespace invlab
