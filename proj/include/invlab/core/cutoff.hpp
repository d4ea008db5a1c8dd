#pragma once

#include "invlab/core/grid.hpp"

namespace invlab {

/// Order-7 smoothstep: 0 for t <= 0, 1 for t >= 1, C^3 at both seams.
double smoothstep7(double t);

/// Plateau profile on [lower, upper]^dim: 0 within `margin` of the region
/// faces, 1 beyond 2 * margin, smoothstep ramp in between.
double plateau(const Vec3& x, int dim, double lower, double upper, double margin);

ScalarField cutoff_profile(const Grid& grid, double lower, double upper, double margin);

/// Multiplies by the plateau of the whole box [0, L]^dim. Requires 0 < margin < L / 4.
template <class T>
Field<T> apply_cutoff(const Field<T>& f, double margin);

/// Multiplies by the plateau of the sub-box [lower, upper]^dim.
template <class T>
Field<T> apply_cutoff(const Field<T>& f, double lower, double upper, double margin);

}  // namespace invlab
