#pragma once

#include "convbody/bodies.hpp"
#include "convbody/thetabody.hpp"

namespace convbody {

/// Π*(K) on a grid: radius 1/|P_{u⊥}K| per direction, centered at the origin.
RadialBody polar_projection_body(const ConvexBody& k, const SphereGrid& grid);

/// |K|^{n−1} · |Π*(K)| with the grid's quadrature error.
RadialVolume petty_zhang_functional(const ConvexBody& k, const SphereGrid& grid);

/// Radial function of conv(A ∪ B) on the shared grid.
RadialBody hull_union(const RadialBody& a, const RadialBody& b);

}  // namespace convbody
