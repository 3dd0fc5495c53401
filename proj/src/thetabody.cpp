#include "convbody/thetabody.hpp"

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>

#include "convbody/config.hpp"
#include "convbody/errors.hpp"
#include "lp.hpp"

namespace convbody {
namespace {

using Overlap = std::function<double(const Vector&)>;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Radius of {f >= θM} along u, searched in [0, hi]; scale sets the absolute
// root tolerance.
double level_radius(const Overlap& f, double M, int power, double theta, const Vector& u,
                    double hi, double scale) {
  const auto& tol = kTolerances;
  const double width = tol.root_rel_tol * scale;
  if (theta == 0.0) {
    double lo = 0.0;
    int it = 0;
    while (hi - lo > width) {
      if (++it > tol.root_max_iter) throw Error(ErrorKind::Convergence, "support bisection stalled");
      const double mid = 0.5 * (lo + hi);
      if (f(mid * u) > 0.0) lo = mid;
      else hi = mid;
    }
    return 0.5 * (lo + hi);
  }
  const double target = std::pow(theta * M, 1.0 / power);
  auto g = [&](double t) { return std::pow(std::max(0.0, f(t * u)), 1.0 / power) - target; };
  const double ga = g(0.0);
  const double gb = g(hi);
  if (ga <= 0.0) return 0.0;
  if (gb >= 0.0) return hi;
  std::uintmax_t iters = static_cast<std::uintmax_t>(tol.root_max_iter);
  auto done = [width](double a, double b) { return std::abs(b - a) <= width; };
  const auto r = boost::math::tools::toms748_solve(g, 0.0, hi, ga, gb, done, iters);
  if (iters >= static_cast<std::uintmax_t>(tol.root_max_iter)) {
    throw Error(ErrorKind::Convergence, "theta radius did not converge in 200 iterations");
  }
  return 0.5 * (r.first + r.second);
}

void check_theta(double theta) {
  if (!(theta >= 0.0 && theta < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "theta must lie in [0, 1)");
  }
}

void check_grid(const SphereGrid& grid, int n) {
  if (grid.dim() != n) throw Error(ErrorKind::DimensionMismatch, "grid dimension differs from bodies");
}

RadialBody empty_body(const SphereGrid& grid) {
  RadialBody rb;
  rb.dim = grid.dim();
  rb.center = Vector::Zero(grid.dim());
  rb.grid = grid;
  rb.radii.assign(grid.size(), 0.0);
  rb.unbounded.assign(grid.size(), 0);
  return rb;
}

double pair_bound(const NormalizedPair& pair, const Vector& u) {
  return support(pair.K, u) + support(pair.L, u);
}

// Exact radius of K+L along u where a closed route exists: an LP over
// (a, t) with a ∈ K, tu − a ∈ L for polytopes, the quadratic for balls.
std::optional<double> sum_radius(const NormalizedPair& pair, const Vector& u) {
  const auto& k = pair.K;
  const auto& l = pair.L;
  const int n = pair.dim();
  if (k.is_ball() && l.is_ball()) {
    const Vector c = k.center() + l.center();
    const double r = k.radius() + l.radius();
    const double cu = c.dot(u);
    return cu + std::sqrt(std::max(0.0, cu * cu - c.squaredNorm() + r * r));
  }
  if (k.is_ball() || l.is_ball()) return std::nullopt;
  const Eigen::Index mk = k.normals().rows(), ml = l.normals().rows();
  PointMatrix a = PointMatrix::Zero(mk + ml, n + 1);
  Vector b(mk + ml);
  a.topLeftCorner(mk, n) = k.normals();
  b.head(mk) = k.offsets();
  a.bottomLeftCorner(ml, n) = -l.normals();
  a.bottomRightCorner(ml, 1) = l.normals() * u;
  b.tail(ml) = l.offsets();
  Vector c = Vector::Zero(n + 1);
  c(n) = 1.0;
  const auto res = detail::maximize(c, a, b);
  if (res.status != detail::LpStatus::Optimal) return std::nullopt;
  return res.value;
}

double tuple_bound(const NormalizedTuple& t, const Vector& u) {
  double s = 0.0;
  for (const auto& b : t.bodies) s += support(b, u);
  return s;
}

RadialBody build_limit(const Overlap& f, double M, double diam, const SphereGrid& grid,
                       const std::function<double(const Vector&)>& bound) {
  RadialBody rb = empty_body(grid);
  const double f0 = f(Vector::Zero(grid.dim()));
  for (int i = 0; i < grid.size(); ++i) {
    const Vector u = grid.direction(i);
    const double h = kTolerances.derivative_step * bound(u);
    const double d1 = (f(h * u) - f0) / h;
    const double d2 = (f(0.5 * h * u) - f0) / (0.5 * h);
    const double d = std::min(0.0, 2 * d2 - d1);
    if (std::abs(d) < kTolerances.unbounded_derivative * M / diam) {
      rb.radii[i] = kInf;
      rb.unbounded[i] = 1;
    } else {
      rb.radii[i] = M / std::abs(d);
    }
  }
  return rb;
}

}  // namespace

bool RadialBody::bounded() const {
  return std::none_of(unbounded.begin(), unbounded.end(), [](char c) { return c != 0; });
}

double RadialBody::max_radius() const {
  double m = 0.0;
  for (size_t i = 0; i < radii.size(); ++i) {
    if (!unbounded[i]) m = std::max(m, radii[i]);
  }
  return m;
}

double theta_radius(const NormalizedPair& pair, double theta, const Vector& u) {
  check_theta(theta);
  if (theta == 0.0) {
    if (const auto r = sum_radius(pair, u)) return *r;
  }
  const double hi = pair_bound(pair, u);
  auto f = [&](const Vector& x) { return pair.f(x); };
  return level_radius(f, pair.M, pair.dim(), theta, u, hi, hi);
}

RadialBody theta_body(const NormalizedPair& pair, double theta, const SphereGrid& grid) {
  check_theta(theta);
  check_grid(grid, pair.dim());
  RadialBody rb = empty_body(grid);
  rb.theta = theta;
  for (int i = 0; i < grid.size(); ++i) rb.radii[i] = theta_radius(pair, theta, grid.direction(i));
  return rb;
}

std::vector<RadialBody> theta_profile(const NormalizedPair& pair, const std::vector<double>& thetas,
                                      const SphereGrid& grid) {
  check_grid(grid, pair.dim());
  for (double t : thetas) check_theta(t);
  std::vector<int> order(thetas.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return thetas[a] < thetas[b]; });

  std::vector<RadialBody> out(thetas.size(), empty_body(grid));
  for (size_t k = 0; k < thetas.size(); ++k) out[k].theta = thetas[k];
  auto f = [&](const Vector& x) { return pair.f(x); };
  const int n = pair.dim();
  for (int i = 0; i < grid.size(); ++i) {
    const Vector u = grid.direction(i);
    const double bound = pair_bound(pair, u);
    double upper = bound;
    for (int k : order) {
      // The previous radius brackets the next one from above.
      double hi = std::min(bound, upper * (1 + 1e-9) + 1e-15 * bound);
      const double target = thetas[k] * pair.M;
      if (thetas[k] > 0.0 && f(hi * u) > target) hi = bound;
      std::optional<double> exact;
      if (thetas[k] == 0.0) exact = sum_radius(pair, u);
      const double r = exact ? *exact : level_radius(f, pair.M, n, thetas[k], u, hi, bound);
      out[k].radii[i] = r;
      upper = r;
    }
  }
  return out;
}

RadialVolume radial_volume(const RadialBody& rb) {
  if (!rb.bounded()) return {kInf, 0.0};
  const int n = rb.dim;
  const auto& w = rb.grid.weights();
  const int size = rb.grid.size();
  double sum = 0.0;
  for (int i = 0; i < size; ++i) sum += w[i] * std::pow(rb.radii[i], n);
  RadialVolume v{sum / n, 0.0};
  if (rb.grid.is_random()) {
    // Equal weights: the estimate is (total weight / n) × mean(r^n).
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    double mean = 0.0;
    double sq = 0.0;
    for (int i = 0; i < size; ++i) {
      const double x = std::pow(rb.radii[i], n);
      mean += x;
      sq += x * x;
    }
    mean /= size;
    const double var = std::max(0.0, sq / size - mean * mean);
    v.std_error = total / n * std::sqrt(var / (size - 1));
  }
  return v;
}

RadialBody mfold_theta_body(const NormalizedTuple& tuple, double theta, const SphereGrid& grid) {
  check_theta(theta);
  check_grid(grid, tuple.dim());
  RadialBody rb = empty_body(grid);
  rb.theta = theta;
  auto f = [&](const Vector& x) { return tuple.f(x); };
  const int power = (tuple.m() - 1) * tuple.dim();
  for (int i = 0; i < grid.size(); ++i) {
    const Vector u = grid.direction(i);
    const double hi = tuple_bound(tuple, u);
    rb.radii[i] = level_radius(f, tuple.M, power, theta, u, hi, hi);
  }
  return rb;
}

RadialBody limit_body(const NormalizedPair& pair, const SphereGrid& grid) {
  check_grid(grid, pair.dim());
  const double diam = bounding_box(pair.K).diagonal() + bounding_box(pair.L).diagonal();
  auto f = [&](const Vector& x) { return pair.f(x); };
  return build_limit(f, pair.M, diam, grid, [&](const Vector& u) { return pair_bound(pair, u); });
}

RadialBody mfold_limit_body(const NormalizedTuple& tuple, const SphereGrid& grid) {
  check_grid(grid, tuple.dim());
  double diam = 0.0;
  for (const auto& b : tuple.bodies) diam += bounding_box(b).diagonal();
  auto f = [&](const Vector& x) { return tuple.f(x); };
  return build_limit(f, tuple.M, diam, grid, [&](const Vector& u) { return tuple_bound(tuple, u); });
}

InclusionVerdict scaled_radial_compare(const RadialBody& rb1, const RadialBody& rb2, double s1,
                                       double s2) {
  if (!rb1.grid.same_as(rb2.grid) || rb1.radii.size() != rb2.radii.size()) {
    throw Error(ErrorKind::InvalidArgument, "radial bodies live on different grids");
  }
  if ((rb1.center - rb2.center).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorKind::InvalidArgument, "radial bodies have different centers");
  }
  if (!(s1 > 0) || !(s2 > 0)) throw Error(ErrorKind::InvalidArgument, "scales must be positive");
  InclusionVerdict v;
  v.slack = kTolerances.radial_compare * std::max(rb1.max_radius() / s1, rb2.max_radius() / s2);
  v.worst_violation = -kInf;
  for (size_t i = 0; i < rb1.radii.size(); ++i) {
    double gap;
    if (rb2.unbounded[i]) {
      gap = -kInf;
    } else if (rb1.unbounded[i]) {
      gap = kInf;
    } else {
      gap = rb1.radii[i] / s1 - rb2.radii[i] / s2;
    }
    if (gap > v.worst_violation) {
      v.worst_violation = gap;
      v.worst_index = static_cast<int>(i);
    }
  }
  v.included = v.worst_violation <= v.slack;
  return v;
}

}  // namespace convbody
