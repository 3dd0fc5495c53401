#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "convbody/bodies.hpp"
#include "convbody/random_bodies.hpp"

namespace testing_support {

using convbody::ConvexBody;
using convbody::PointMatrix;
using convbody::Vector;

inline constexpr std::array<uint64_t, 3> kSeeds{1, 42, 2024};

inline double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Area of the convex hull of planar points, Andrew's monotone chain.
inline double hull_area(std::vector<std::array<double, 2>> p) {
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return 0.0;
  auto cross = [](const auto& o, const auto& a, const auto& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<std::array<double, 2>> h(2 * p.size());
  size_t k = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (size_t i = p.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i - 1]) <= 0) --k;
    h[k++] = p[i - 1];
  }
  h.resize(k - 1);
  double a = 0.0;
  for (size_t i = 0; i < h.size(); ++i) {
    const auto& u = h[i];
    const auto& v = h[(i + 1) % h.size()];
    a += u[0] * v[1] - u[1] * v[0];
  }
  return 0.5 * std::abs(a);
}

// Area of the overlap of two unit disks at center distance d.
inline double lens_area(double d) {
  if (d >= 2) return 0.0;
  return 2 * std::acos(d / 2) - 0.5 * d * std::sqrt(4 - d * d);
}

// Length of [a0,a1] ∩ (x − [b0,b1]).
inline double interval_overlap(double a0, double a1, double b0, double b1, double x) {
  return std::max(0.0, std::min(a1, x - b0) - std::max(a0, x - b1));
}

// Triangle of area 1 with centroid at the origin.
inline ConvexBody unit_triangle() {
  PointMatrix v(3, 2);
  v << 0, 0, 1, 0, 0, 1;
  const auto t = ConvexBody::from_vertices(v * std::sqrt(2.0));
  Vector c(2);
  c << std::sqrt(2.0) / 3, std::sqrt(2.0) / 3;
  return convbody::translate(t, -c);
}

inline ConvexBody regular_polygon(int k, double radius = 1.0) {
  PointMatrix v(k, 2);
  for (int i = 0; i < k; ++i) {
    const double a = 2 * M_PI * i / k;
    v(i, 0) = radius * std::cos(a);
    v(i, 1) = radius * std::sin(a);
  }
  return ConvexBody::from_vertices(v);
}

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline Vector random_unit(int n, convbody::Rng& rng) {
  std::normal_distribution<double> g;
  Vector u(n);
  for (int i = 0; i < n; ++i) u(i) = g(rng);
  return u.normalized();
}

}  // namespace testing_support
