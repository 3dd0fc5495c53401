#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "convbody/bodies.hpp"

namespace convbody {

using Rng = std::mt19937_64;

/// Independent stream seed for item `index` of a run seeded with `seed`.
uint64_t derive_seed(uint64_t seed, uint64_t index);

/// Convex hull of 3n..6n standard Gaussian points.
ConvexBody random_gaussian_hull(int n, Rng& rng);
/// [−1,1]^n scaled by a random factor and cut by random halfspaces.
ConvexBody random_cut_cube(int n, Rng& rng);
/// One of the two families above (random interval for n = 1). Retries
/// degenerate draws up to 10 times, then throws DegenerateBody.
ConvexBody random_body(int n, Rng& rng);
std::pair<ConvexBody, ConvexBody> random_pair(int n, uint64_t seed);

/// Random convex polygon rescaled to unit area.
ConvexBody random_unit_polygon(Rng& rng);

/// Random well-conditioned linear map (condition number below ~10).
AffineMap random_linear_map(int n, Rng& rng);

}  // namespace convbody
