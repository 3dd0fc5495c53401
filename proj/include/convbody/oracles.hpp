#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>

#include "convbody/bodies.hpp"

// Independent references for tests and validation. The core library never
// calls into this header.
namespace convbody::oracles {

struct OracleResult {
  double value = 0.0;
  std::string method;          // "closed-form", "quadrature" or "monte-carlo"
  double error_estimate = 0.0;
};

/// |K+_θK|^{1/n} / (2|K|^{1/n}) for parallel cubes.
double cube_quotient(int n, double theta);

/// R in [0, 1] with 2ω_{n−1}∫_R^1 (1−s²)^{(n−1)/2} ds = θω_n. Two unit
/// balls give a θ-body of radius 2R.
double ball_R(int n, double theta);

/// (1 − θ^{1/n})·C(2n,n)^{1/n}/2, the simplex pair K = −L.
double simplex_quotient(int n, double theta);

/// Hit-or-miss volume in a box. Zero hits report 0 with the box volume as error.
OracleResult mc_volume(const std::function<bool(const Vector&)>& membership,
                       const BoundingBox& box, int samples, uint64_t seed);

/// Triple convolution of the indicator of [0, 1]; support [0, 3], peak 3/4.
double bspline3_value(double x);
/// Endpoints of {B >= 3θ/4}.
std::pair<double, double> bspline3_levelset(double theta);

}  // namespace convbody::oracles
