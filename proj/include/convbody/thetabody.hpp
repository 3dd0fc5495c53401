#pragma once

#include <optional>
#include <vector>

#include "convbody/convolution.hpp"
#include "convbody/sphere_grid.hpp"

namespace convbody {

/// Star body sampled along a fixed direction grid from a fixed center.
/// Unbounded directions carry an infinite radius and a set flag.
struct RadialBody {
  int dim = 0;
  Vector center;
  SphereGrid grid;
  std::vector<double> radii;
  std::vector<char> unbounded;
  std::optional<double> theta;

  bool bounded() const;
  double max_radius() const;  // over bounded directions
  Vector boundary_point(int i) const { return center + radii[i] * grid.direction(i); }
};

/// The t >= 0 with f(tu) = θM. Throws Convergence if the root finder does not
/// settle within the configured iteration cap.
double theta_radius(const NormalizedPair& pair, double theta, const Vector& u);

RadialBody theta_body(const NormalizedPair& pair, double theta, const SphereGrid& grid);

/// θ-bodies for several θ at once; brackets are reused along increasing θ.
std::vector<RadialBody> theta_profile(const NormalizedPair& pair, const std::vector<double>& thetas,
                                      const SphereGrid& grid);

struct RadialVolume {
  double value = 0.0;
  double std_error = 0.0;  // Monte-Carlo error of random grids; 0 otherwise
};

/// (1/n)·Σ w_i r_i^n; +inf when any direction is unbounded.
RadialVolume radial_volume(const RadialBody& rb);

RadialBody mfold_theta_body(const NormalizedTuple& tuple, double theta, const SphereGrid& grid);

/// C₁(K, L) from radius M / |d+f| per direction.
RadialBody limit_body(const NormalizedPair& pair, const SphereGrid& grid);
RadialBody mfold_limit_body(const NormalizedTuple& tuple, const SphereGrid& grid);

struct InclusionVerdict {
  bool included = true;
  double worst_violation = 0.0;  // max over directions of r1/s1 − r2/s2
  int worst_index = -1;
  double slack = 0.0;            // allowed violation
};

/// Checks rb1/s1 ⊆ rb2/s2 per direction within 1e-6 of the largest radius.
InclusionVerdict scaled_radial_compare(const RadialBody& rb1, const RadialBody& rb2, double s1,
                                       double s2);

}  // namespace convbody
