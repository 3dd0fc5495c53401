#include "convbody/random_bodies.hpp"

#include <cmath>

#include "convbody/errors.hpp"

namespace convbody {

uint64_t derive_seed(uint64_t seed, uint64_t index) {
  // splitmix64 finalizer over the combined state
  uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

ConvexBody random_gaussian_hull(int n, Rng& rng) {
  std::uniform_int_distribution<int> count(3 * n, 6 * n);
  std::normal_distribution<double> gauss;
  const int k = count(rng);
  PointMatrix pts(k, n);
  for (int i = 0; i < k; ++i) {
    for (int c = 0; c < n; ++c) pts(i, c) = gauss(rng);
  }
  return ConvexBody::from_vertices(pts);
}

ConvexBody random_cut_cube(int n, Rng& rng) {
  std::uniform_real_distribution<double> scale(0.5, 2.0);
  std::uniform_real_distribution<double> depth(0.3, 0.9);
  std::uniform_int_distribution<int> cuts(1, 2 * n);
  std::normal_distribution<double> gauss;
  const double s = scale(rng);
  const int k = cuts(rng);
  PointMatrix a = PointMatrix::Zero(2 * n + k, n);
  Vector b(2 * n + k);
  for (int i = 0; i < n; ++i) {
    a(2 * i, i) = 1.0;
    a(2 * i + 1, i) = -1.0;
    b(2 * i) = b(2 * i + 1) = s;
  }
  for (int j = 0; j < k; ++j) {
    Vector u(n);
    for (int c = 0; c < n; ++c) u(c) = gauss(rng);
    u.normalize();
    a.row(2 * n + j) = u.transpose();
    b(2 * n + j) = depth(rng) * s * u.lpNorm<1>();  // support of s·[−1,1]^n
  }
  return ConvexBody::from_halfspaces(a, b);
}

ConvexBody random_body(int n, Rng& rng) {
  for (int attempt = 0; attempt < 10; ++attempt) {
    try {
      if (n == 1) {
        std::normal_distribution<double> gauss;
        std::uniform_real_distribution<double> len(0.5, 2.0);
        const double lo = gauss(rng);
        return ConvexBody::interval(lo, lo + len(rng));
      }
      std::bernoulli_distribution coin(0.5);
      return coin(rng) ? random_gaussian_hull(n, rng) : random_cut_cube(n, rng);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateBody && e.kind() != ErrorKind::Resource) throw;
    }
  }
  throw Error(ErrorKind::DegenerateBody, "random body generator kept producing degenerate bodies");
}

std::pair<ConvexBody, ConvexBody> random_pair(int n, uint64_t seed) {
  Rng rng(seed);
  ConvexBody k = random_body(n, rng);
  ConvexBody l = random_body(n, rng);
  return {k, l};
}

ConvexBody random_unit_polygon(Rng& rng) {
  ConvexBody p = random_body(2, rng);
  return scale(p, 1.0 / std::sqrt(p.volume()));
}

AffineMap random_linear_map(int n, Rng& rng) {
  std::normal_distribution<double> gauss;
  std::normal_distribution<double> shift(0.0, 0.5);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = gauss(rng);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& sv = svd.singularValues();
    if (sv(n - 1) > 0 && sv(0) / sv(n - 1) < 10.0) {
      Vector t(n);
      for (int i = 0; i < n; ++i) t(i) = shift(rng);
      return AffineMap(m, t);
    }
  }
  return AffineMap::identity(n);
}

}  // namespace convbody
