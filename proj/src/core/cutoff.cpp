#include "invlab/core/cutoff.hpp"

#include <cmath>

namespace invlab {

double smoothstep7(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double t4 = t * t * t * t;
  return t4 * (35.0 + t * (-84.0 + t * (70.0 - 20.0 * t)));
}

double plateau(const Vec3& x, int dim, double lower, double upper, double margin) {
  double p = 1.0;
  for (int d = 0; d < dim; ++d) {
    p *= smoothstep7((x[d] - lower - margin) / margin) * smoothstep7((upper - margin - x[d]) / margin);
  }
  return p;
}

ScalarField cutoff_profile(const Grid& grid, double lower, double upper, double margin) {
  if (!(margin > 0.0) || !(4.0 * margin < upper - lower)) {
    throw ParameterError("cutoff margin must lie in (0, width / 4)");
  }
  return sample<double>(grid, [&](const Vec3& x) { return plateau(x, grid.dim(), lower, upper, margin); });
}

template <class T>
Field<T> apply_cutoff(const Field<T>& f, double lower, double upper, double margin) {
  const ScalarField chi = cutoff_profile(f.grid(), lower, upper, margin);
  Field<T> out = f;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= chi[i];
  return out;
}

template <class T>
Field<T> apply_cutoff(const Field<T>& f, double margin) {
  return apply_cutoff(f, 0.0, f.grid().length(), margin);
}

template Field<double> apply_cutoff(const Field<double>&, double);
template Field<Complex> apply_cutoff(const Field<Complex>&, double);
template Field<double> apply_cutoff(const Field<double>&, double, double, double);
template Field<Complex> apply_cutoff(const Field<Complex>&, double, double, double);

}  // namespace invlab
