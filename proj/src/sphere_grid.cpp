#include "convbody/sphere_grid.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "convbody/bodies.hpp"
#include "convbody/errors.hpp"

namespace convbody {

const char* to_string(GridKind kind) {
  switch (kind) {
    case GridKind::Antipodal: return "antipodal";
    case GridKind::UniformAngle: return "uniform-angle";
    case GridKind::SeededRandom: return "seeded-random";
  }
  return "unknown";
}

int SphereGrid::default_size(int n) {
  if (n == 1) return 2;
  if (n == 2) return 4096;
  return 20000;
}

SphereGrid SphereGrid::make(int n, int size, uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "grid dimension must be positive");
  if (size <= 0) size = default_size(n);
  SphereGrid g;
  g.dim_ = n;
  g.seed_ = seed;
  if (n == 1) {
    g.kind_ = GridKind::Antipodal;
    g.directions_.resize(2, 1);
    g.directions_ << 1.0, -1.0;
    g.weights_ = {1.0, 1.0};
    return g;
  }
  if (size < 2) throw Error(ErrorKind::InvalidArgument, "grid needs at least 2 directions");
  g.directions_.resize(size, n);
  if (n == 2) {
    g.kind_ = GridKind::UniformAngle;
    for (int k = 0; k < size; ++k) {
      const double phi = 2 * std::numbers::pi * k / size;
      g.directions_(k, 0) = std::cos(phi);
      g.directions_(k, 1) = std::sin(phi);
    }
    g.weights_.assign(size, 2 * std::numbers::pi / size);
    return g;
  }
  g.kind_ = GridKind::SeededRandom;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int k = 0; k < size; ++k) {
    double len = 0.0;
    do {
      for (int c = 0; c < n; ++c) g.directions_(k, c) = gauss(rng);
      len = g.directions_.row(k).norm();
    } while (len < 1e-12);
    g.directions_.row(k) /= len;
  }
  g.weights_.assign(size, n * unit_ball_volume(n) / size);
  return g;
}

}  // namespace convbody
