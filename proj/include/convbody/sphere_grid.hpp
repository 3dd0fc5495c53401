#pragma once

#include <cstdint>
#include <vector>

#include "convbody/types.hpp"

namespace convbody {

enum class GridKind { Antipodal, UniformAngle, SeededRandom };

const char* to_string(GridKind kind);

/// Directions on S^{n-1} with quadrature weights summing to the surface
/// measure n·ω_n. n = 1 uses {−1, +1}; n = 2 a uniform-angle grid; n >= 3
/// seeded Gaussian-normalized directions with equal weights.
class SphereGrid {
 public:
  static SphereGrid make(int n, int size = 0, uint64_t seed = 42);
  static int default_size(int n);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(weights_.size()); }
  GridKind kind() const { return kind_; }
  uint64_t seed() const { return seed_; }
  bool is_random() const { return kind_ == GridKind::SeededRandom; }

  const PointMatrix& directions() const { return directions_; }
  Vector direction(int i) const { return directions_.row(i).transpose(); }
  const std::vector<double>& weights() const { return weights_; }

  bool same_as(const SphereGrid& other) const {
    return dim_ == other.dim_ && kind_ == other.kind_ && size() == other.size() &&
           seed_ == other.seed_;
  }

 private:
  int dim_ = 0;
  GridKind kind_ = GridKind::Antipodal;
  uint64_t seed_ = 0;
  PointMatrix directions_;
  std::vector<double> weights_;
};

}  // namespace convbody
