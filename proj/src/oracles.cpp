#include "convbody/oracles.hpp"

#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace convbody::oracles {
namespace {

constexpr int kNodes = 64;

struct GaussLegendre {
  std::vector<double> x, w;
  GaussLegendre() {
    // legendre_p_zeros returns the nonnegative half.
    const auto zeros = boost::math::legendre_p_zeros<double>(kNodes);
    for (double z : zeros) {
      const double dp = boost::math::legendre_p_prime<double>(kNodes, z);
      const double wt = 2.0 / ((1 - z * z) * dp * dp);
      x.push_back(z);
      w.push_back(wt);
      if (z != 0.0) {
        x.push_back(-z);
        w.push_back(wt);
      }
    }
  }
};

const GaussLegendre& rule() {
  static const GaussLegendre gl;
  return gl;
}

template <class F>
double gl_panel(const F& f, double a, double b) {
  const auto& r = rule();
  const double h = 0.5 * (b - a);
  const double m = 0.5 * (a + b);
  double s = 0.0;
  for (size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(m + h * r.x[i]);
  return h * s;
}

template <class F>
double adaptive(const F& f, double a, double b, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = gl_panel(f, a, m);
  const double right = gl_panel(f, m, b);
  if (depth >= 40 || std::abs(left + right - whole) <= tol) return left + right;
  return adaptive(f, a, m, left, 0.5 * tol, depth + 1) +
         adaptive(f, m, b, right, 0.5 * tol, depth + 1);
}

double omega(int n) {
  if (n == 0) return 1.0;
  return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1);
}

// 2ω_{n−1}∫_R^1 (1−s²)^{(n−1)/2} ds
double ball_cap(int n, double r) {
  if (r >= 1.0) return 0.0;
  auto f = [n](double s) { return std::pow(std::max(0.0, 1 - s * s), 0.5 * (n - 1)); };
  const double whole = gl_panel(f, r, 1.0);
  return 2 * omega(n - 1) * adaptive(f, r, 1.0, whole, 1e-12, 0);
}

}  // namespace

double cube_quotient(int n, double theta) {
  if (n < 1 || !(theta >= 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("cube_quotient: need n >= 1 and theta in [0, 1]");
  }
  if (theta == 0.0) return 1.0;
  if (theta == 1.0) return 0.0;
  const double l = -std::log(theta);
  double term = 1.0, sum = 0.0;
  for (int k = 0; k < n; ++k) {
    sum += term;
    term *= l / (k + 1);
  }
  return std::pow(std::max(0.0, 1 - theta * sum), 1.0 / n);
}

double ball_R(int n, double theta) {
  if (n < 1 || !(theta >= 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("ball_R: need n >= 1 and theta in [0, 1]");
  }
  if (theta == 0.0) return 1.0;
  if (theta == 1.0) return 0.0;
  const double target = theta * omega(n);
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (ball_cap(n, mid) > target) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double simplex_quotient(int n, double theta) {
  if (n < 1 || !(theta >= 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("simplex_quotient: need n >= 1 and theta in [0, 1]");
  }
  double c = 1.0;
  for (int i = 1; i <= n; ++i) c = c * (n + i) / i;
  return (1 - std::pow(theta, 1.0 / n)) * std::pow(c, 1.0 / n) / 2;
}

OracleResult mc_volume(const std::function<bool(const Vector&)>& membership,
                       const BoundingBox& box, int samples, uint64_t seed) {
  if (samples < 1000) throw std::invalid_argument("mc_volume: need at least 1000 samples");
  const int n = static_cast<int>(box.lo.size());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vector x(n);
  long hits = 0;
  for (int s = 0; s < samples; ++s) {
    for (int c = 0; c < n; ++c) x(c) = box.lo(c) + unif(rng) * (box.hi(c) - box.lo(c));
    if (membership(x)) ++hits;
  }
  const double bv = box.volume();
  OracleResult r;
  r.method = "monte-carlo";
  if (hits == 0) {
    r.value = 0.0;
    r.error_estimate = bv;
    return r;
  }
  const double p = static_cast<double>(hits) / samples;
  r.value = bv * p;
  r.error_estimate = bv * std::sqrt(p * (1 - p) / samples);
  return r;
}

double bspline3_value(double x) {
  if (x <= 0.0 || x >= 3.0) return 0.0;
  if (x < 1.0) return 0.5 * x * x;
  if (x < 2.0) return 0.5 * (-2 * x * x + 6 * x - 3);
  return 0.5 * (3 - x) * (3 - x);
}

std::pair<double, double> bspline3_levelset(double theta) {
  if (!(theta >= 0.0 && theta < 1.0)) {
    throw std::invalid_argument("bspline3_levelset: need theta in [0, 1)");
  }
  const double c = 0.75 * theta;
  const double left = c <= 0.5 ? std::sqrt(2 * c) : 0.5 * (3 - std::sqrt(3 - 4 * c));
  return {left, 3 - left};
}

}  // namespace convbody::oracles
