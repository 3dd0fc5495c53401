#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <map>
#include <random>
#include <tuple>

#include "convbody/config.hpp"
#include "convbody/convolution.hpp"
#include "convbody/errors.hpp"
#include "polytope.hpp"

namespace convbody {
namespace {

double interval_overlap(double lo1, double hi1, double lo2, double hi2) {
  return std::max(0.0, std::min(hi1, hi2) - std::max(lo1, lo2));
}

std::pair<double, double> as_interval(const ConvexBody& b) {
  if (b.is_ball()) return {b.center()(0) - b.radius(), b.center()(0) + b.radius()};
  return {b.vertices()(0, 0), b.vertices()(1, 0)};
}

// Part of an n-ball of radius r beyond a hyperplane at signed distance a
// from its center.
double cap_volume(int n, double r, double a) {
  const double full = unit_ball_volume(n) * std::pow(r, n);
  if (a >= r) return 0.0;
  if (a <= -r) return full;
  if (a < 0) return full - cap_volume(n, r, -a);
  const double x = 1.0 - (a / r) * (a / r);
  return 0.5 * full * boost::math::ibeta((n + 1) / 2.0, 0.5, x);
}

double ball_ball(int n, const Vector& c1, double r1, const Vector& c2, double r2) {
  const double d = (c1 - c2).norm();
  if (d >= r1 + r2) return 0.0;
  if (d <= std::abs(r1 - r2)) return unit_ball_volume(n) * std::pow(std::min(r1, r2), n);
  const double a1 = (d * d + r1 * r1 - r2 * r2) / (2 * d);
  return cap_volume(n, r1, a1) + cap_volume(n, r2, d - a1);
}

// Uniform samples in the unit n-ball, cached per (n, count, seed).
const std::vector<double>& unit_ball_samples(int n, long count, uint64_t seed) {
  thread_local std::map<std::tuple<int, long, uint64_t>, std::vector<double>> cache;
  auto key = std::make_tuple(n, count, seed);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif;
  std::vector<double> pts(static_cast<size_t>(count) * n);
  for (long s = 0; s < count; ++s) {
    double len = 0.0;
    double* p = pts.data() + s * n;
    for (int c = 0; c < n; ++c) {
      p[c] = gauss(rng);
      len += p[c] * p[c];
    }
    const double rad = std::pow(unif(rng), 1.0 / n) / std::sqrt(len);
    for (int c = 0; c < n; ++c) p[c] *= rad;
  }
  return cache.emplace(key, std::move(pts)).first->second;
}

// |B(c, r) ∩ {y : sign·A y <= b - sign·A·origin}| by sampling the ball. The
// polytope test is A (origin + sign·y) <= b, which covers both K ∩ (x − L)
// orientations.
OverlapEstimate ball_polytope_mc(const Vector& c, double r, const PointMatrix& a,
                                 const Vector& b, const Vector& origin, double sign,
                                 uint64_t seed) {
  const int n = static_cast<int>(c.size());
  const long count = kTolerances.mc_samples;
  const auto& pts = unit_ball_samples(n, count, seed);
  const int m = static_cast<int>(a.rows());
  // Offsets rewritten for the sampled variable z, y = c + r z.
  const Vector base = b - a * (origin + sign * c);
  const PointMatrix az = a * (sign * r);
  long hits = 0;
  for (long s = 0; s < count; ++s) {
    const double* z = pts.data() + s * n;
    bool in = true;
    for (int i = 0; i < m && in; ++i) {
      double v = 0.0;
      for (int k = 0; k < n; ++k) v += az(i, k) * z[k];
      in = v <= base(i);
    }
    hits += in;
  }
  const double vol = unit_ball_volume(n) * std::pow(r, n);
  const double p = static_cast<double>(hits) / count;
  return {vol * p, vol * std::sqrt(p * (1 - p) / count)};
}

}  // namespace

bool overlap_is_exact(const ConvexBody& k, const ConvexBody& l) {
  return k.dim() == 1 || k.is_ball() == l.is_ball();
}

OverlapEstimate intersection_volume_estimate(const ConvexBody& k, const ConvexBody& l,
                                             const Vector& x, uint64_t seed) {
  const int n = k.dim();
  if (l.dim() != n || x.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "intersection_volume: dimensions differ");
  }
  if (n == 1) {
    const auto [klo, khi] = as_interval(k);
    const auto [llo, lhi] = as_interval(l);
    return {interval_overlap(klo, khi, x(0) - lhi, x(0) - llo), 0.0};
  }
  if (k.is_ball() && l.is_ball()) {
    return {ball_ball(n, k.center(), k.radius(), x - l.center(), l.radius()), 0.0};
  }
  if (k.is_ball()) {
    // y in K, x - y in L:  A_L (x - y) <= b_L.
    return ball_polytope_mc(k.center(), k.radius(), l.normals(), l.offsets(), x, -1.0, seed);
  }
  if (l.is_ball()) {
    // y = x - c_L - r z in x - L; test A_K y <= b_K.
    return ball_polytope_mc(-l.center(), l.radius(), k.normals(), k.offsets(), x, 1.0, seed);
  }

  const auto& lp = l.polytope();
  const int ml = static_cast<int>(lp.normals.rows());
  // x − L = {y : (−a_j)·y <= b_j − a_j·x}.
  thread_local std::vector<double> a;
  thread_local std::vector<double> b;
  if (n == 2 || n == 3) {
    a.assign(static_cast<size_t>(ml) * n, 0.0);
    b.assign(ml, 0.0);
    for (int j = 0; j < ml; ++j) {
      double ax = 0.0;
      for (int c = 0; c < n; ++c) {
        a[j * n + c] = -lp.normals(j, c);
        ax += lp.normals(j, c) * x(c);
      }
      b[j] = lp.offsets(j) - ax;
    }
    const double v = n == 2 ? detail::clip_area_2d(k.polytope(), a, b)
                            : detail::clip_volume_3d(k.polytope(), a, b);
    return {v, 0.0};
  }
  const auto& kp = k.polytope();
  const int mk = static_cast<int>(kp.normals.rows());
  a.assign(static_cast<size_t>(mk + ml) * n, 0.0);
  b.assign(mk + ml, 0.0);
  for (int i = 0; i < mk; ++i) {
    for (int c = 0; c < n; ++c) a[i * n + c] = kp.normals(i, c);
    b[i] = kp.offsets(i);
  }
  for (int j = 0; j < ml; ++j) {
    double ax = 0.0;
    for (int c = 0; c < n; ++c) {
      a[(mk + j) * n + c] = -lp.normals(j, c);
      ax += lp.normals(j, c) * x(c);
    }
    b[mk + j] = lp.offsets(j) - ax;
  }
  return {detail::halfspace_volume(a, b, n), 0.0};
}

double intersection_volume(const ConvexBody& k, const ConvexBody& l, const Vector& x) {
  return intersection_volume_estimate(k, l, x).value;
}

}  // namespace convbody
