#include "convbody/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "convbody/config.hpp"
#include "convbody/errors.hpp"
#include "convbody/projbody.hpp"
#include "convbody/random_bodies.hpp"
#include "polytope.hpp"

namespace convbody {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

struct VolumeEstimate {
  double value = 0.0;
  double mc = 0.0;
  double quad = 0.0;
};

// Radial volume plus a discretization estimate: the half-resolution rule on
// deterministic planar grids, the sampling error on random grids.
VolumeEstimate estimate_volume(const RadialBody& rb) {
  const auto v = radial_volume(rb);
  VolumeEstimate out{v.value, v.std_error, 0.0};
  if (!std::isfinite(v.value)) return out;
  if (rb.grid.kind() == GridKind::UniformAngle && rb.grid.size() % 2 == 0) {
    double half = 0.0;
    for (int i = 0; i < rb.grid.size(); i += 2) half += 2 * rb.grid.weights()[i] * rb.radii[i] * rb.radii[i];
    out.quad = std::abs(v.value - half / 2);
  }
  return out;
}

void finalize(InequalityReport& r) {
  r.slack = r.lhs - r.rhs;
  if (r.rhs != 0.0) r.tightness = r.lhs / r.rhs;
  else r.tightness = r.lhs == 0.0 ? 1.0 : kInf;
  r.tol = 3 * r.mc_error + r.quad_error + kTolerances.report_abs;
  r.passed = r.slack >= -r.tol || std::isinf(r.lhs);
}

InequalityReport make_report(const std::string& name, const std::string& inputs, int n,
                             double theta, uint64_t seed) {
  InequalityReport r;
  r.name = name;
  r.inputs = inputs;
  r.n = n;
  r.theta = theta;
  r.seed = seed;
  return r;
}

std::string describe(const ConvexBody& b) {
  std::ostringstream os;
  if (b.is_ball()) {
    os << "ball(r=" << b.radius() << ")";
  } else {
    os << "polytope(" << b.vertices().rows() << " vertices)";
  }
  return os.str();
}

std::string describe(const NormalizedPair& p) {
  return "K=" + describe(p.K) + " L=" + describe(p.L);
}

// Per-direction inclusion inner ⊆ outer; directions where either side is
// infinite are skipped.
InequalityReport inclusion_report(const std::string& name, const std::string& inputs, int n,
                                  double theta, uint64_t seed, const std::vector<double>& inner,
                                  const std::vector<double>& outer, double scale) {
  auto r = make_report(name, inputs, n, theta, seed);
  double worst = kInf;
  int skipped = 0;
  for (size_t i = 0; i < inner.size(); ++i) {
    if (!std::isfinite(inner[i]) || !std::isfinite(outer[i])) {
      ++skipped;
      continue;
    }
    const double gap = outer[i] - inner[i];
    if (gap < worst) {
      worst = gap;
      r.lhs = outer[i];
      r.rhs = inner[i];
    }
  }
  r.tol = kTolerances.inclusion_slack * scale;
  if (skipped == static_cast<int>(inner.size())) {
    r.skipped = true;
    r.passed = true;
    r.lhs = kInf;
    r.slack = kInf;
    r.tightness = kInf;
    r.note = "all directions unbounded";
    return r;
  }
  r.slack = worst;
  r.tightness = r.rhs != 0.0 ? r.lhs / r.rhs : kInf;
  r.passed = r.slack >= -r.tol;
  if (skipped > 0) r.note = std::to_string(skipped) + " unbounded directions skipped";
  return r;
}

// Uniform point of a polytope by rejection from its bounding box.
Vector sample_polytope(const ConvexBody& body, Rng& rng) {
  const auto box = bounding_box(body);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vector x(body.dim());
  for (int attempt = 0; attempt < 100000; ++attempt) {
    for (int c = 0; c < body.dim(); ++c) x(c) = box.lo(c) + unif(rng) * (box.hi(c) - box.lo(c));
    if (contains(body, x)) return x;
  }
  return body.interior_point();
}

double sum_volume(const std::vector<ConvexBody>& bodies) {
  const int n = bodies.front().dim();
  bool balls = true;
  for (const auto& b : bodies) balls = balls && b.is_ball();
  if (balls) {
    double r = 0.0;
    for (const auto& b : bodies) r += b.radius();
    return unit_ball_volume(n) * std::pow(r, n);
  }
  if (n == 1) {
    double len = 0.0;
    for (const auto& b : bodies) len += b.volume();
    return len;
  }
  for (const auto& b : bodies) {
    if (b.is_ball()) {
      throw Error(ErrorKind::Unsupported, "exact Minkowski-sum volume needs polytopes or balls only");
    }
  }
  PointMatrix pts = bodies.front().vertices();
  for (size_t k = 1; k < bodies.size(); ++k) {
    const auto& v = bodies[k].vertices();
    PointMatrix next(pts.rows() * v.rows(), n);
    for (Eigen::Index i = 0; i < pts.rows(); ++i) {
      for (Eigen::Index j = 0; j < v.rows(); ++j) next.row(i * v.rows() + j) = pts.row(i) + v.row(j);
    }
    pts = std::move(next);
  }
  return detail::hull_volume(pts);
}

std::string case_note(const NormalizedPair& pair) {
  if (!pair.K.is_polytope() || !pair.L.is_polytope()) return "";
  const auto c = detect_equality_case(pair.K, pair.L);
  if (c == EqualityCase::Generic) return "";
  return std::string("equality case: ") + to_string(c);
}

InequalityReport intermediate_set_report(const NormalizedPair& pair, double theta,
                                         const CheckOptions& opt) {
  const int n = pair.dim();
  auto r = make_report("chain.intermediate", describe(pair), n, theta, opt.seed);
  if (!pair.K.is_polytope() || !pair.L.is_polytope()) {
    r.skipped = r.passed = true;
    r.note = "needs polytopes";
    return r;
  }
  // Shift so both bodies contain the origin; f and K∩(−L) are unchanged.
  const auto common = intersect(pair.K, reflect(pair.L));
  if (!common) {
    r.skipped = r.passed = true;
    r.note = "K and -L do not overlap";
    return r;
  }
  const Vector z = common->interior_point();
  const ConvexBody k = translate(pair.K, -z);
  const ConvexBody l = translate(pair.L, z);
  Rng rng(opt.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst = kInf;
  int used = 0;
  for (int s = 0; s < opt.samples; ++s) {
    const Vector a = unif(rng) * sample_polytope(k, rng);
    const Vector b = unif(rng) * sample_polytope(l, rng);
    const double ga = gauge(k, a);
    const double gb = gauge(l, b);
    if (ga >= 1.0 - 1e-12 || gb >= 1.0 - 1e-12) continue;
    const double q =
        intersection_volume(scale(k, 1.0 - ga), scale(l, 1.0 - gb), Vector::Zero(n)) / pair.M;
    if (q < theta) continue;
    ++used;
    const double val = pair.f(a + b) / pair.M;
    if (val - theta < worst) {
      worst = val - theta;
      r.lhs = val;
      r.rhs = theta;
    }
  }
  r.tol = 1e-6;
  if (used == 0) {
    r.skipped = r.passed = true;
    r.note = "no sample reached the level";
    return r;
  }
  r.slack = worst;
  r.tightness = r.rhs != 0.0 ? r.lhs / r.rhs : kInf;
  r.passed = r.slack >= -r.tol;
  r.note = std::to_string(used) + " samples";
  return r;
}

}  // namespace

const char* to_string(EqualityCase c) {
  switch (c) {
    case EqualityCase::SimplexPair: return "simplex-pair";
    case EqualityCase::HomotheticSimplices: return "homothetic-simplices";
    case EqualityCase::Generic: return "generic";
  }
  return "generic";
}

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{"bm", "forms", "chain", "monotone",
                                              "zhang", "rs", "mfold"};
  return names;
}

InequalityReport check_bm_theta(const NormalizedPair& pair, double theta, const SphereGrid& grid,
                                const CheckOptions& opt) {
  const int n = pair.dim();
  auto r = make_report("bm", describe(pair), n, theta, opt.seed);
  r.rhs = (1 - std::pow(theta, 1.0 / n)) *
          (std::pow(volume(pair.K), 1.0 / n) + std::pow(volume(pair.L), 1.0 / n));
  if (theta >= 1.0) {
    r.lhs = 0.0;
    r.note = "theta=1: only the trivial bound is checked";
  } else {
    const auto v = estimate_volume(theta_body(pair, theta, grid));
    r.lhs = std::pow(v.value, 1.0 / n);
    const double d = v.value > 0 ? r.lhs / (n * v.value) : 0.0;
    r.mc_error = d * v.mc;
    r.quad_error = d * v.quad;
  }
  finalize(r);
  return r;
}

std::vector<InequalityReport> check_equivalent_forms(const NormalizedPair& pair, double theta,
                                                     double lambda, const SphereGrid& grid,
                                                     const CheckOptions& opt) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "lambda must lie in (0, 1)");
  }
  const int n = pair.dim();
  const double phi = std::pow(1 - std::pow(theta, 1.0 / n), n);
  const double vk = volume(pair.K);
  const double vl = volume(pair.L);
  std::ostringstream in;
  in << describe(pair) << " lambda=" << lambda;

  const auto v1 = estimate_volume(theta_body(pair, theta, grid));
  const auto mixed = normalize(scale(pair.K, lambda), scale(pair.L, 1 - lambda));
  const auto v2 = estimate_volume(theta_body(mixed, theta, grid));
  const auto unit = normalize(scale(pair.K, lambda * std::pow(vk, -1.0 / n)),
                              scale(pair.L, (1 - lambda) * std::pow(vl, -1.0 / n)));
  const auto v5 = estimate_volume(theta_body(unit, theta, grid));

  std::vector<InequalityReport> out;
  auto root_form = [&](const char* name, const VolumeEstimate& v, double rhs) {
    auto r = make_report(name, in.str(), n, theta, opt.seed);
    r.lhs = std::pow(v.value, 1.0 / n);
    r.rhs = rhs;
    const double d = v.value > 0 ? r.lhs / (n * v.value) : 0.0;
    r.mc_error = d * v.mc;
    r.quad_error = d * v.quad;
    finalize(r);
    out.push_back(r);
  };
  auto plain_form = [&](const char* name, const VolumeEstimate& v, double rhs) {
    auto r = make_report(name, in.str(), n, theta, opt.seed);
    r.lhs = v.value;
    r.rhs = rhs;
    r.mc_error = v.mc;
    r.quad_error = v.quad;
    finalize(r);
    out.push_back(r);
  };
  const double p1 = std::pow(phi, 1.0 / n);
  root_form("forms.sum_root", v1, p1 * (std::pow(vk, 1.0 / n) + std::pow(vl, 1.0 / n)));
  root_form("forms.mixed_root", v2,
            p1 * (lambda * std::pow(vk, 1.0 / n) + (1 - lambda) * std::pow(vl, 1.0 / n)));
  plain_form("forms.geometric", v2, phi * std::pow(vk, lambda) * std::pow(vl, 1 - lambda));
  plain_form("forms.min", v2, phi * std::min(vk, vl));
  plain_form("forms.unit", v5, phi);
  return out;
}

std::vector<InequalityReport> check_inclusion_chain(const NormalizedPair& pair, double theta,
                                                    const SphereGrid& grid,
                                                    const CheckOptions& opt) {
  const int n = pair.dim();
  const auto prof = theta_profile(pair, {0.0, theta}, grid);
  const auto& sum = prof[0];
  const auto& body = prof[1];
  const double scale = sum.max_radius();
  const std::string in = describe(pair);
  const int size = grid.size();
  std::vector<InequalityReport> out;

  {
    const auto hull = hull_union(polar_projection_body(pair.K, grid),
                                 polar_projection_body(pair.L, grid));
    std::vector<double> inner(size);
    for (int i = 0; i < size; ++i) inner[i] = (1 - theta) * pair.M * hull.radii[i];
    out.push_back(inclusion_report("chain.polar_hull", in, n, theta, opt.seed, inner, body.radii, scale));
  }
  {
    std::vector<double> inner(size);
    const double f = 1 - std::pow(theta, 1.0 / n);
    for (int i = 0; i < size; ++i) inner[i] = f * sum.radii[i];
    auto r = inclusion_report("chain.scaled_sum", in, n, theta, opt.seed, inner, body.radii, scale);
    const auto note = case_note(pair);
    if (!note.empty()) r.note = note + " (expected tight)";
    out.push_back(r);
  }
  out.push_back(intermediate_set_report(pair, theta, opt));
  {
    const auto c1 = limit_body(pair, grid);
    std::vector<double> outer(size);
    const double f = n * (1 - std::pow(theta, 1.0 / n));
    for (int i = 0; i < size; ++i) outer[i] = c1.unbounded[i] ? kInf : f * c1.radii[i];
    out.push_back(inclusion_report("chain.limit_body", in, n, theta, opt.seed, body.radii, outer, scale));
  }
  return out;
}

InequalityReport check_monotonicity(const NormalizedPair& pair, const std::vector<double>& thetas,
                                    const SphereGrid& grid, const CheckOptions& opt) {
  const int n = pair.dim();
  std::vector<double> ts = thetas;
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  const auto prof = theta_profile(pair, ts, grid);
  std::ostringstream in;
  in << describe(pair) << " thetas=" << ts.size();
  auto r = make_report("monotone", in.str(), n, ts.empty() ? -1.0 : ts.back(), opt.seed);
  double scale = 0.0;
  for (size_t i = 0; i < ts.size(); ++i) {
    scale = std::max(scale, prof[i].max_radius() / (1 - std::pow(ts[i], 1.0 / n)));
  }
  double worst = kInf;
  for (size_t i = 0; i < ts.size(); ++i) {
    const double si = 1 - std::pow(ts[i], 1.0 / n);
    for (size_t j = i + 1; j < ts.size(); ++j) {
      const double sj = 1 - std::pow(ts[j], 1.0 / n);
      for (int k = 0; k < grid.size(); ++k) {
        const double inner = prof[i].radii[k] / si;
        const double outer = prof[j].radii[k] / sj;
        if (outer - inner < worst) {
          worst = outer - inner;
          r.lhs = outer;
          r.rhs = inner;
        }
      }
    }
  }
  r.tol = kTolerances.inclusion_slack * scale;
  if (!std::isfinite(worst)) {
    r.skipped = r.passed = true;
    r.slack = 0.0;
    r.note = "fewer than two theta values";
    return r;
  }
  r.slack = worst;
  r.tightness = r.rhs != 0.0 ? r.lhs / r.rhs : kInf;
  r.passed = r.slack >= -r.tol;
  return r;
}

ThetaIntegral theta_volume_integral(const NormalizedPair& pair, const SphereGrid& grid,
                                    int intervals) {
  if (intervals < 2 || intervals % 2 != 0) {
    throw Error(ErrorKind::InvalidArgument, "theta grid needs an even number of intervals");
  }
  const int n = pair.dim();
  const double half_pi = std::acos(0.0);
  // θ = sin^n(πs/2): θ^{1/n} is smooth at s = 0 and √(1−θ) at s = 1.
  std::vector<double> s(intervals), thetas(intervals), jac(intervals);
  for (int j = 0; j < intervals; ++j) {
    s[j] = static_cast<double>(j) / intervals;
    const double sn = std::sin(half_pi * s[j]);
    thetas[j] = std::pow(sn, n);
    jac[j] = n * std::pow(sn, n - 1) * std::cos(half_pi * s[j]) * half_pi;
  }
  const auto prof = theta_profile(pair, thetas, grid);
  std::vector<VolumeEstimate> vols;
  for (const auto& rb : prof) vols.push_back(estimate_volume(rb));
  // The node s = 1 has zero weight (θ = 1, zero Jacobian).
  auto rule = [&](int stride) {
    const double h = static_cast<double>(stride) / intervals;
    double sum = 0.5 * vols[0].value * jac[0];
    for (int j = stride; j < intervals; j += stride) sum += vols[j].value * jac[j];
    return h * sum;
  };
  ThetaIntegral out;
  out.value = rule(1);
  out.quad_error = std::abs(out.value - rule(2));
  const double h = 1.0 / intervals;
  for (int j = 0; j < intervals; ++j) {
    const double w = (j == 0 ? 0.5 : 1.0) * h * jac[j];
    out.mc_error += w * vols[j].mc;
    out.quad_error += w * vols[j].quad;
  }
  return out;
}

std::vector<InequalityReport> check_zhang_extension(const NormalizedPair& pair,
                                                    const SphereGrid& grid,
                                                    const CheckOptions& opt) {
  const int n = pair.dim();
  const double vk = volume(pair.K);
  const double vl = volume(pair.L);
  const std::string in = describe(pair);
  std::vector<InequalityReport> out;
  {
    auto r = make_report("zhang", in, n, -1.0, opt.seed);
    const auto c1 = limit_body(pair, grid);
    r.rhs = binom(2 * n, n) / std::pow(n, n) * vk * vl / pair.M;
    if (!c1.bounded()) {
      r.lhs = kInf;
      r.note = "C1 unbounded";
      r.skipped = true;
    } else {
      const auto v = estimate_volume(c1);
      r.lhs = v.value;
      r.mc_error = v.mc;
      r.quad_error = v.quad;
      r.note = case_note(pair);
      if (!r.note.empty()) r.note += " (expected tightness 1)";
    }
    finalize(r);
    out.push_back(r);
  }
  {
    auto r = make_report("fubini", in, n, -1.0, opt.seed);
    const auto integral = theta_volume_integral(pair, grid, opt.theta_grid);
    r.lhs = integral.value;
    r.rhs = vk * vl / pair.M;
    r.mc_error = integral.mc_error;
    r.quad_error = integral.quad_error;
    r.slack = -std::abs(r.lhs - r.rhs);
    r.tightness = r.lhs / r.rhs;
    // random grids add their sampling error on top of the relative band
    r.tol = kTolerances.fubini_rel * r.rhs + 3 * r.mc_error + r.quad_error;
    r.passed = r.slack >= -r.tol;
    r.note = "identity";
    out.push_back(r);
  }
  return out;
}

InequalityReport check_rogers_shephard(const NormalizedPair& pair, const CheckOptions& opt) {
  const int n = pair.dim();
  auto r = make_report("rs", describe(pair), n, -1.0, opt.seed);
  r.lhs = binom(2 * n, n) * volume(pair.K) * volume(pair.L);
  r.rhs = sum_volume({pair.K, pair.L}) * pair.M;
  r.quad_error = 1e-12 * r.rhs;  // floating-point roundoff of exact volumes
  r.note = case_note(pair);
  if (!r.note.empty()) r.note += " (expected tightness 1)";
  finalize(r);
  return r;
}

std::vector<InequalityReport> check_mfold(const NormalizedTuple& tuple, double theta,
                                          const SphereGrid& grid, const CheckOptions& opt) {
  const int n = tuple.dim();
  const int m = tuple.m();
  const int lifted = (m - 1) * n;
  std::ostringstream in;
  in << "m=" << m;
  double root_sum = 0.0;
  double prod = 1.0;
  for (const auto& b : tuple.bodies) {
    root_sum += std::pow(volume(b), 1.0 / n);
    prod *= volume(b);
  }
  std::vector<InequalityReport> out;
  const auto body = mfold_theta_body(tuple, theta, grid);
  {
    auto r = make_report("mfold.bm", in.str(), n, theta, opt.seed);
    const auto v = estimate_volume(body);
    r.lhs = std::pow(v.value, 1.0 / n);
    const double d = v.value > 0 ? r.lhs / (n * v.value) : 0.0;
    r.mc_error = d * v.mc;
    r.quad_error = d * v.quad;
    r.rhs = (1 - std::pow(theta, 1.0 / lifted)) * root_sum;
    finalize(r);
    out.push_back(r);
  }
  const double middle = binom(m * n, n) * prod / tuple.M;
  {
    auto r = make_report("mfold.rs", in.str(), n, -1.0, opt.seed);
    r.lhs = middle;
    r.rhs = sum_volume(tuple.bodies);
    r.quad_error = 1e-12 * r.rhs;
    finalize(r);
    out.push_back(r);
  }
  {
    auto r = make_report("mfold.zhang", in.str(), n, -1.0, opt.seed);
    const auto c1 = mfold_limit_body(tuple, grid);
    r.rhs = middle;
    if (!c1.bounded()) {
      r.lhs = kInf;
      r.skipped = true;
      r.note = "C1 unbounded";
    } else {
      const auto v = estimate_volume(c1);
      const double f = std::pow(m - 1, n) * std::pow(n, n);
      r.lhs = f * v.value;
      r.mc_error = f * v.mc;
      r.quad_error = f * v.quad;
    }
    finalize(r);
    out.push_back(r);
  }
  {
    auto r = make_report("mfold.monotone", in.str(), n, theta, opt.seed);
    const double t0 = 0.5 * theta;
    const auto lower = mfold_theta_body(tuple, t0, grid);
    const double s0 = 1 - std::pow(t0, 1.0 / lifted);
    const double s1 = 1 - std::pow(theta, 1.0 / lifted);
    std::vector<double> inner(grid.size()), outer(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
      inner[i] = lower.radii[i] / s0;
      outer[i] = body.radii[i] / s1;
    }
    auto rep = inclusion_report("mfold.monotone", in.str(), n, theta, opt.seed, inner, outer,
                                lower.max_radius() / s0);
    out.push_back(rep);
  }
  return out;
}

EqualityCase detect_equality_case(const ConvexBody& k, const ConvexBody& l) {
  if (!k.is_polytope() || !l.is_polytope() || k.dim() != l.dim()) return EqualityCase::Generic;
  const int n = k.dim();
  const auto& vk = k.vertices();
  const PointMatrix vl = -l.vertices();
  if (vk.rows() != n + 1 || vl.rows() != n + 1) return EqualityCase::Generic;
  const double tol = kTolerances.equality_detect;
  const double lambda = std::pow(l.volume() / k.volume(), 1.0 / n);
  const Vector ck = vk.colwise().mean().transpose();
  const Vector cl = vl.colwise().mean().transpose();
  const double sc = std::max(1.0, std::max(vk.cwiseAbs().maxCoeff(), vl.cwiseAbs().maxCoeff()));
  for (Eigen::Index i = 0; i < vl.rows(); ++i) {
    bool found = false;
    for (Eigen::Index j = 0; j < vk.rows() && !found; ++j) {
      const Vector d = (vl.row(i).transpose() - cl) - lambda * (vk.row(j).transpose() - ck);
      found = d.cwiseAbs().maxCoeff() <= tol * sc;
    }
    if (!found) return EqualityCase::Generic;
  }
  return std::abs(lambda - 1.0) <= tol ? EqualityCase::SimplexPair
                                      : EqualityCase::HomotheticSimplices;
}

std::vector<InequalityReport> fuzz(uint64_t seed, int n, int count, const FuzzOptions& opt) {
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "fuzz count must be at least 1");
  if (n < 1 || n > 3) throw Error(ErrorKind::InvalidArgument, "fuzz supports n in {1, 2, 3}");
  for (const auto& c : opt.checks) {
    if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end()) {
      throw Error(ErrorKind::InvalidArgument, "unknown check '" + c + "'");
    }
  }
  auto wants = [&](const char* c) {
    return std::find(opt.checks.begin(), opt.checks.end(), c) != opt.checks.end();
  };
  int dirs = opt.directions;
  if (dirs <= 0) dirs = n == 2 ? 1024 : (n == 3 ? 4000 : 2);
  const auto grid = SphereGrid::make(n, dirs, seed);

  std::vector<InequalityReport> out;
  for (int i = 0; i < count; ++i) {
    const uint64_t s = derive_seed(seed, static_cast<uint64_t>(i));
    const std::string tag = "pair " + std::to_string(i) + ": ";
    CheckOptions co = opt.check;
    co.seed = s;
    auto add = [&](InequalityReport r) {
      r.inputs = tag + r.inputs;
      out.push_back(std::move(r));
    };
    std::optional<NormalizedPair> pair;
    double lambda = 0.5;
    try {
      auto [k, l] = random_pair(n, s);
      pair = normalize(k, l);
      Rng rng(derive_seed(s, 1));
      lambda = std::uniform_real_distribution<double>(0.2, 0.8)(rng);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateBody) throw;
      InequalityReport r = make_report("generator", "", n, -1.0, s);
      r.skipped = r.passed = true;
      r.note = std::string("skipped: ") + e.what();
      add(r);
      continue;
    }
    for (double t : opt.thetas) {
      if (wants("bm")) add(check_bm_theta(*pair, t, grid, co));
      if (wants("forms")) {
        for (auto& r : check_equivalent_forms(*pair, t, lambda, grid, co)) add(r);
      }
      if (wants("chain")) {
        for (auto& r : check_inclusion_chain(*pair, t, grid, co)) add(r);
      }
    }
    if (wants("monotone")) add(check_monotonicity(*pair, opt.thetas, grid, co));
    if (wants("zhang")) {
      for (auto& r : check_zhang_extension(*pair, grid, co)) add(r);
    }
    if (wants("rs")) add(check_rogers_shephard(*pair, co));
  }
  return out;
}

}  // namespace convbody
