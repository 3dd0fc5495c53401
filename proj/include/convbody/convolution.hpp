#pragma once

#include <cstdint>
#include <vector>

#include "convbody/bodies.hpp"

namespace convbody {

inline constexpr uint64_t kDefaultSeed = 42;

/// f(x) = |K ∩ (x − L)| with a standard error. The error is zero except on the
/// ball ∩ polytope route, which samples the ball (seeded, same samples for every x).
struct OverlapEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

OverlapEstimate intersection_volume_estimate(const ConvexBody& k, const ConvexBody& l,
                                             const Vector& x, uint64_t seed = kDefaultSeed);
double intersection_volume(const ConvexBody& k, const ConvexBody& l, const Vector& x);

/// True when f is computed exactly (everything except ball ∩ polytope in n >= 2).
bool overlap_is_exact(const ConvexBody& k, const ConvexBody& l);

struct Maximum {
  double M = 0.0;
  Vector xstar;
};

/// Global maximum of f. f^{1/n} is concave on K + L, so a multi-start
/// Nelder–Mead search suffices. Throws NoOverlap when M < 1e-14.
Maximum max_intersection(const ConvexBody& k, const ConvexBody& l);

/// K and L with K translated so that the maximizer of f sits at the origin.
struct NormalizedPair {
  ConvexBody K;
  ConvexBody L;
  double M = 0.0;
  Vector maximizer_residual;  // argmax after translation, ideally 0
  Vector shift;               // K was translated by -shift

  int dim() const { return K.dim(); }
  double f(const Vector& x) const { return intersection_volume(K, L, x); }
};

NormalizedPair normalize(const ConvexBody& k, const ConvexBody& l);

/// d+/dt f(tu) at t = 0 by forward differences with one Richardson halving.
/// Nonpositive; small positive estimates are clamped to 0.
double directional_derivative(const NormalizedPair& pair, const Vector& u);

/// χ_{K1} ∗ … ∗ χ_{Km}(x) as the volume of the lifted polytope in R^{(m−1)n}.
/// Lifted dimension must not exceed 6; balls are rejected for m >= 3.
double mfold_value(const std::vector<ConvexBody>& bodies, const Vector& x);

struct NormalizedTuple {
  std::vector<ConvexBody> bodies;  // bodies[0] translated by -shift
  double M = 0.0;
  Vector maximizer_residual;
  Vector shift;

  int dim() const { return bodies.front().dim(); }
  int m() const { return static_cast<int>(bodies.size()); }
  double f(const Vector& x) const { return mfold_value(bodies, x); }
};

NormalizedTuple mfold_normalize(const std::vector<ConvexBody>& bodies);

/// d+/dt of the m-fold convolution along u at the origin.
double mfold_directional_derivative(const NormalizedTuple& tuple, const Vector& u);

}  // namespace convbody
