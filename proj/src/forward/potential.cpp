#include "invlab/forward/potential.hpp"

#include <cmath>
#include <numbers>

#include "invlab/core/cutoff.hpp"
#include "invlab/core/sobolev.hpp"

namespace invlab {

Potential bump_potential(const Domain& domain, const std::vector<GaussianBump>& bumps, double cutoff_margin, int s) {
  const Grid& g = domain.grid();
  ScalarField raw = sample<double>(g, [&](const Vec3& x) {
    double v = 0.0;
    for (const auto& b : bumps) {
      double r2 = 0.0;
      for (int d = 0; d < 3; ++d) r2 += (x[d] - b.center[d]) * (x[d] - b.center[d]);
      v += b.amplitude * std::exp(-0.5 * r2 / (b.width * b.width));
    }
    return v;
  });
  return Potential{apply_cutoff(raw, domain.lower(), domain.upper(), cutoff_margin), s};
}

Potential zero_potential(const Grid& grid) { return Potential{ScalarField(grid), 0, 0.0}; }

void validate_potential(const Domain& domain, const Potential& q) {
  if (!(q.field.grid() == domain.grid())) throw DimensionError("potential and domain use different grids");
  for (std::size_t i = 0; i < q.field.size(); ++i) {
    if (q.field[i] != 0.0 && !domain.contains(domain.grid().position(i))) {
      throw GeometryError("potential is not supported inside the domain");
    }
  }
  if (std::isfinite(q.bound_M)) {
    const double norm = sobolev_norm(q.field, q.s);
    if (norm > q.bound_M) {
      throw ParameterError("potential H^" + std::to_string(q.s) + " norm " + std::to_string(norm) +
                           " exceeds the bound M = " + std::to_string(q.bound_M));
    }
  }
}

void validate_source(const Domain& domain, const PointSource& src, double min_distance) {
  if (src.amplitude == Complex{}) throw ParameterError("source amplitude must be nonzero");
  if (!domain.contains(src.position) || domain.distance_to_boundary(src.position) <= min_distance) {
    throw GeometryError("source position lies within " + std::to_string(min_distance) + " of the boundary");
  }
}

double newtonian_kernel(double r) { return -1.0 / (4.0 * std::numbers::pi * r); }

}  // namespace invlab
