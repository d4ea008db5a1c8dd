#pragma once

#include "invlab/core/grid.hpp"

namespace invlab {

/// Tensor 4-point Lagrange interpolation (periodic index wrap). Reproduces the
/// node value exactly when x sits on a node.
template <class T>
T interpolate(const Field<T>& f, const Vec3& x);

}  // namespace invlab
