#include "convbody/convolution.hpp"

#include <cmath>

#include "convbody/config.hpp"
#include "convbody/errors.hpp"
#include "nelder_mead.hpp"
#include "polytope.hpp"

namespace convbody {
namespace {

constexpr int kMaxLiftedDim = 6;

double diameter_bound(const std::vector<ConvexBody>& bodies) {
  double d = 0.0;
  for (const auto& b : bodies) d += bounding_box(b).diagonal();
  return d;
}

// Centroid-ish start plus axis offsets at three scales, at least min_starts.
std::vector<Vector> make_starts(const Vector& c, double diam, int min_starts) {
  const int n = static_cast<int>(c.size());
  std::vector<Vector> starts{c};
  for (double s : {0.25, 0.125, 0.375}) {
    for (int i = 0; i < n; ++i) {
      for (double sg : {1.0, -1.0}) {
        Vector x = c;
        x(i) += sg * s * diam;
        starts.push_back(x);
      }
    }
    if (static_cast<int>(starts.size()) >= min_starts) break;
  }
  return starts;
}

Maximum maximize_power(const std::function<double(const Vector&)>& f, int power,
                       const Vector& center, double diam) {
  const auto& tol = kTolerances;
  auto g = [&](const Vector& x) { return std::pow(std::max(0.0, f(x)), 1.0 / power); };
  const auto starts = make_starts(center, diam, tol.nm_min_starts);
  const auto best =
      detail::multistart_max(g, starts, 0.1 * diam, tol.nm_rel_tol * diam, tol.nm_max_restarts);
  Maximum out{f(best.x), best.x};
  if (!(out.M >= tol.no_overlap)) {
    throw Error(ErrorKind::NoOverlap, "bodies have no overlapping interiors");
  }
  return out;
}

void check_tuple(const std::vector<ConvexBody>& bodies) {
  if (bodies.size() < 2) throw Error(ErrorKind::InvalidArgument, "m-fold needs at least 2 bodies");
  const int n = bodies.front().dim();
  for (const auto& b : bodies) {
    if (b.dim() != n) throw Error(ErrorKind::DimensionMismatch, "m-fold bodies differ in dimension");
  }
  const int m = static_cast<int>(bodies.size());
  if (m >= 3) {
    for (const auto& b : bodies) {
      if (b.is_ball()) throw Error(ErrorKind::Unsupported, "m-fold values need polytopes for m >= 3");
    }
  }
  if ((m - 1) * n > kMaxLiftedDim) {
    throw Error(ErrorKind::Resource, "lifted dimension " + std::to_string((m - 1) * n) +
                                         " exceeds the supported maximum of 6");
  }
}

}  // namespace

Maximum max_intersection(const ConvexBody& k, const ConvexBody& l) {
  if (k.dim() != l.dim()) throw Error(ErrorKind::DimensionMismatch, "max_intersection: dimensions differ");
  const int n = k.dim();
  if (is_reflection_of(k, l) || (is_origin_symmetric(k) && is_origin_symmetric(l))) {
    Maximum out{intersection_volume(k, l, Vector::Zero(n)), Vector::Zero(n)};
    if (!(out.M >= kTolerances.no_overlap)) {
      throw Error(ErrorKind::NoOverlap, "bodies have no overlapping interiors");
    }
    return out;
  }
  auto f = [&](const Vector& x) { return intersection_volume(k, l, x); };
  return maximize_power(f, n, k.interior_point() + l.interior_point(), diameter_bound({k, l}));
}

NormalizedPair normalize(const ConvexBody& k, const ConvexBody& l) {
  const auto mx = max_intersection(k, l);
  const int n = k.dim();
  NormalizedPair p{mx.xstar.isZero(0.0) ? k : translate(k, -mx.xstar), l, mx.M,
                   Vector::Zero(n), mx.xstar};
  // Local re-check from the origin; any drift is the residual.
  const double diam = diameter_bound({k, l});
  detail::NmOptions opt;
  opt.initial_step = 1e-3 * diam;
  opt.x_tol = kTolerances.nm_rel_tol * diam;
  opt.max_evaluations = 400;
  auto g = [&](const Vector& x) { return std::pow(p.f(x), 1.0 / n); };
  const auto r = detail::nelder_mead_max(g, Vector::Zero(n), opt);
  if (std::pow(r.value, n) > p.M) p.maximizer_residual = r.x;
  return p;
}

double directional_derivative(const NormalizedPair& pair, const Vector& u) {
  const double h = kTolerances.derivative_step * (support(pair.K, u) + support(pair.L, u));
  const double f0 = pair.f(Vector::Zero(pair.dim()));
  const double d1 = (pair.f(h * u) - f0) / h;
  const double d2 = (pair.f(0.5 * h * u) - f0) / (0.5 * h);
  return std::min(0.0, 2 * d2 - d1);
}

double mfold_value(const std::vector<ConvexBody>& bodies, const Vector& x) {
  check_tuple(bodies);
  const int n = bodies.front().dim();
  if (x.size() != n) throw Error(ErrorKind::DimensionMismatch, "mfold_value: point dimension");
  const int m = static_cast<int>(bodies.size());
  if (m == 2) return intersection_volume(bodies[0], bodies[1], x);

  const int dl = (m - 1) * n;
  int rows = 0;
  for (const auto& b : bodies) rows += static_cast<int>(b.normals().rows());
  std::vector<double> a(static_cast<size_t>(rows) * dl, 0.0);
  std::vector<double> rhs(rows, 0.0);
  int r = 0;
  for (int i = 0; i < m; ++i) {
    const auto& nb = bodies[i].normals();
    const auto& ob = bodies[i].offsets();
    for (Eigen::Index j = 0; j < nb.rows(); ++j, ++r) {
      double* row = a.data() + static_cast<size_t>(r) * dl;
      rhs[r] = ob(j);
      for (int c = 0; c < n; ++c) {
        const double v = nb(j, c);
        if (i == 0) {
          row[c] = v;  // t_1 in K_1
        } else if (i < m - 1) {
          row[i * n + c] = v;  // t_{i+1} - t_i in K_{i+1}
          row[(i - 1) * n + c] = -v;
        } else {
          row[(m - 2) * n + c] = -v;  // x - t_{m-1} in K_m
          rhs[r] -= v * x(c);
        }
      }
    }
  }
  return detail::halfspace_volume(a, rhs, dl);
}

NormalizedTuple mfold_normalize(const std::vector<ConvexBody>& bodies) {
  check_tuple(bodies);
  const int n = bodies.front().dim();
  const int m = static_cast<int>(bodies.size());
  NormalizedTuple t;
  t.maximizer_residual = Vector::Zero(n);
  if (m == 2) {
    auto p = normalize(bodies[0], bodies[1]);
    t.bodies = {p.K, p.L};
    t.M = p.M;
    t.maximizer_residual = p.maximizer_residual;
    t.shift = p.shift;
    return t;
  }
  Maximum mx;
  bool symmetric = true;
  for (const auto& b : bodies) symmetric = symmetric && is_origin_symmetric(b);
  if (symmetric) {
    mx = {mfold_value(bodies, Vector::Zero(n)), Vector::Zero(n)};
    if (!(mx.M >= kTolerances.no_overlap)) throw Error(ErrorKind::NoOverlap, "empty m-fold support");
  } else {
    Vector c = Vector::Zero(n);
    for (const auto& b : bodies) c += b.interior_point();
    auto f = [&](const Vector& x) { return mfold_value(bodies, x); };
    mx = maximize_power(f, (m - 1) * n, c, diameter_bound(bodies));
  }
  t.bodies = bodies;
  if (!mx.xstar.isZero(0.0)) t.bodies[0] = translate(bodies[0], -mx.xstar);
  t.M = mx.M;
  t.shift = mx.xstar;
  return t;
}

double mfold_directional_derivative(const NormalizedTuple& tuple, const Vector& u) {
  double hs = 0.0;
  for (const auto& b : tuple.bodies) hs += support(b, u);
  const double h = kTolerances.derivative_step * hs;
  const double f0 = tuple.f(Vector::Zero(tuple.dim()));
  const double d1 = (tuple.f(h * u) - f0) / h;
  const double d2 = (tuple.f(0.5 * h * u) - f0) / (0.5 * h);
  return std::min(0.0, 2 * d2 - d1);
}

}  // namespace convbody
