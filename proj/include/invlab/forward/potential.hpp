#pragma once

#include <limits>
#include <vector>

#include "invlab/core/domain.hpp"

namespace invlab {

struct GaussianBump {
  Vec3 center{0, 0, 0};
  double width = 0.1;
  double amplitude = 1.0;
};

/// Real potential sampled on the grid, with the smoothness order and bound it is advertised with.
struct Potential {
  ScalarField field;
  int s = 2;
  double bound_M = std::numeric_limits<double>::infinity();
};

/// Sum of Gaussian bumps times the plateau of the domain with the given cutoff margin,
/// so the result vanishes within `cutoff_margin` of the domain faces.
Potential bump_potential(const Domain& domain, const std::vector<GaussianBump>& bumps, double cutoff_margin,
                         int s = 2);

Potential zero_potential(const Grid& grid);

/// Throws GeometryError if q is nonzero outside the open domain, and
/// ParameterError if its H^s norm exceeds bound_M.
void validate_potential(const Domain& domain, const Potential& q);

/// Point source a delta_z; the amplitude is a complex scalar.
struct PointSource {
  Complex amplitude{1.0, 0.0};
  Vec3 position{0, 0, 0};
};

/// Throws if a = 0 or z lies within min_distance of the domain boundary.
void validate_source(const Domain& domain, const PointSource& src, double min_distance);

/// Free-space Newtonian kernel G(r) = -1 / (4 pi r), Laplacian delta.
double newtonian_kernel(double r);

}  // namespace invlab
