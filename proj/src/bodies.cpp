#include "convbody/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "convbody/config.hpp"
#include "convbody/errors.hpp"
#include "lp.hpp"
#include "polytope.hpp"

namespace convbody {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::DegenerateBody: return "degenerate-body";
    case ErrorKind::Unsupported: return "unsupported-representation";
    case ErrorKind::OriginNotInterior: return "origin-not-interior";
    case ErrorKind::NoOverlap: return "no-overlap";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::Resource: return "resource";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

namespace {

void require_dim(int a, int b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": dimension " + std::to_string(b) + ", expected " +
                    std::to_string(a));
  }
}

void require_polytope(const ConvexBody& body, const char* what) {
  if (!body.is_polytope()) {
    throw Error(ErrorKind::Unsupported, std::string(what) + " needs a polytope, got a ball");
  }
}

// Image of polytope data under y = s·x + t, without re-enumeration.
detail::PolytopeData similar_image(const detail::PolytopeData& p, double s, const Vector& t) {
  detail::PolytopeData q = p;
  const int d = p.dim;
  const double sg = s > 0 ? 1.0 : -1.0;
  const double as = std::abs(s);
  q.vertices = p.vertices * s;
  q.vertices.rowwise() += t.transpose();
  q.normals = p.normals * sg;
  q.offsets = as * p.offsets + q.normals * t;
  for (auto& a : q.facet_areas) a *= std::pow(as, d - 1);
  q.volume = p.volume * std::pow(as, d);
  if (s < 0 && d == 1) {
    std::swap(q.vertices(0, 0), q.vertices(1, 0));
  }
  if (s < 0 && d == 3) {
    for (auto& loop : q.facet_loops) std::reverse(loop.begin(), loop.end());
  }
  return q;
}

}  // namespace

AffineMap::AffineMap(Eigen::MatrixXd linear, Vector translation)
    : linear_(std::move(linear)), translation_(std::move(translation)) {
  if (linear_.rows() != linear_.cols() || linear_.rows() != translation_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "affine map matrix and translation disagree");
  }
}

AffineMap AffineMap::identity(int n) {
  return AffineMap(Eigen::MatrixXd::Identity(n, n), Vector::Zero(n));
}

AffineMap AffineMap::dilation(int n, double factor) {
  return AffineMap(factor * Eigen::MatrixXd::Identity(n, n), Vector::Zero(n));
}

AffineMap AffineMap::translation(const Vector& shift) {
  const auto n = shift.size();
  return AffineMap(Eigen::MatrixXd::Identity(n, n), shift);
}

double AffineMap::determinant() const { return linear_.determinant(); }

bool AffineMap::is_invertible() const {
  return std::abs(determinant()) > kTolerances.invertible_det;
}

bool AffineMap::is_conformal(double* scale) const {
  const int n = dim();
  const Eigen::MatrixXd g = linear_.transpose() * linear_;
  const double s2 = g.trace() / n;
  if (!(s2 > 0)) return false;
  if ((g - s2 * Eigen::MatrixXd::Identity(n, n)).norm() > 1e-9 * s2) return false;
  if (scale) *scale = std::sqrt(s2);
  return true;
}

ConvexBody ConvexBody::from_halfspaces(const PointMatrix& normals, const Vector& offsets) {
  ConvexBody b;
  b.kind_ = BodyKind::HPolytope;
  b.dim_ = static_cast<int>(normals.cols());
  b.poly_ = std::make_shared<const detail::PolytopeData>(
      detail::build_from_halfspaces(normals, offsets));
  return b;
}

ConvexBody ConvexBody::from_vertices(const PointMatrix& points) {
  ConvexBody b;
  b.kind_ = BodyKind::VPolytope;
  b.dim_ = static_cast<int>(points.cols());
  if (b.dim_ < 1) throw Error(ErrorKind::InvalidArgument, "vertices need a positive dimension");
  b.poly_ = std::make_shared<const detail::PolytopeData>(detail::build_from_points(points));
  return b;
}

ConvexBody ConvexBody::ball(const Vector& center, double radius) {
  if (center.size() < 1) throw Error(ErrorKind::InvalidArgument, "ball needs a dimension");
  if (!(radius > 0) || !std::isfinite(radius)) {
    throw Error(ErrorKind::InvalidArgument, "ball radius must be positive");
  }
  if (!center.allFinite()) throw Error(ErrorKind::InvalidArgument, "ball center must be finite");
  ConvexBody b;
  b.kind_ = BodyKind::Ball;
  b.dim_ = static_cast<int>(center.size());
  b.center_ = center;
  b.radius_ = radius;
  return b;
}

ConvexBody ConvexBody::cube(int n, double side) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "cube dimension must be positive");
  if (!(side > 0)) throw Error(ErrorKind::InvalidArgument, "cube side must be positive");
  PointMatrix a = PointMatrix::Zero(2 * n, n);
  Vector b = Vector::Constant(2 * n, side / 2);
  for (int i = 0; i < n; ++i) {
    a(2 * i, i) = 1.0;
    a(2 * i + 1, i) = -1.0;
  }
  return from_halfspaces(a, b);
}

ConvexBody ConvexBody::simplex(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "simplex dimension must be positive");
  PointMatrix a = PointMatrix::Zero(n + 1, n);
  Vector b = Vector::Zero(n + 1);
  for (int i = 0; i < n; ++i) a(i, i) = -1.0;
  a.row(n).setConstant(1.0);
  b(n) = 1.0;
  return from_halfspaces(a, b);
}

ConvexBody ConvexBody::cross_polytope(int n) {
  if (n < 1 || n > 6) throw Error(ErrorKind::InvalidArgument, "cross-polytope needs 1 <= n <= 6");
  const int m = 1 << n;
  PointMatrix a(m, n);
  for (int s = 0; s < m; ++s) {
    for (int i = 0; i < n; ++i) a(s, i) = (s >> i & 1) ? -1.0 : 1.0;
  }
  return from_halfspaces(a, Vector::Ones(m));
}

ConvexBody ConvexBody::interval(double lo, double hi) {
  if (!(hi > lo)) throw Error(ErrorKind::DegenerateBody, "interval needs lo < hi");
  PointMatrix a(2, 1);
  a << -1.0, 1.0;
  Vector b(2);
  b << -lo, hi;
  return from_halfspaces(a, b);
}

const PointMatrix& ConvexBody::vertices() const { return polytope().vertices; }
const PointMatrix& ConvexBody::normals() const { return polytope().normals; }
const Vector& ConvexBody::offsets() const { return polytope().offsets; }
const std::vector<double>& ConvexBody::facet_areas() const { return polytope().facet_areas; }

const detail::PolytopeData& ConvexBody::polytope() const {
  if (!poly_) throw Error(ErrorKind::Unsupported, "ball has no polytope representation");
  return *poly_;
}

const Vector& ConvexBody::center() const {
  if (!is_ball()) throw Error(ErrorKind::Unsupported, "center() is defined for balls only");
  return center_;
}

double ConvexBody::radius() const {
  if (!is_ball()) throw Error(ErrorKind::Unsupported, "radius() is defined for balls only");
  return radius_;
}

double ConvexBody::volume() const {
  if (is_ball()) return unit_ball_volume(dim_) * std::pow(radius_, dim_);
  return poly_->volume;
}

Vector ConvexBody::interior_point() const {
  if (is_ball()) return center_;
  return poly_->vertices.colwise().mean().transpose();
}

double unit_ball_volume(int n) {
  return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

bool contains(const ConvexBody& body, const Vector& x, double tol) {
  require_dim(body.dim(), static_cast<int>(x.size()), "contains");
  if (body.is_ball()) return (x - body.center()).norm() <= body.radius() + tol;
  const auto& p = body.polytope();
  return ((p.normals * x - p.offsets).array() <= tol).all();
}

double volume(const ConvexBody& body) { return body.volume(); }

double support(const ConvexBody& body, const Vector& u) {
  require_dim(body.dim(), static_cast<int>(u.size()), "support");
  if (body.is_ball()) return body.center().dot(u) + body.radius() * u.norm();
  return (body.vertices() * u).maxCoeff();
}

double gauge(const ConvexBody& body, const Vector& x) {
  require_dim(body.dim(), static_cast<int>(x.size()), "gauge");
  if (body.is_ball()) {
    const Vector& c = body.center();
    const double r = body.radius();
    const double a = r * r - c.squaredNorm();
    if (!(a > 0)) throw Error(ErrorKind::OriginNotInterior, "origin is not interior to the ball");
    const double xc = x.dot(c);
    return (xc + std::sqrt(xc * xc + a * x.squaredNorm())) / a;
  }
  const auto& p = body.polytope();
  if (p.offsets.minCoeff() <= kTolerances.facet_slack) {
    throw Error(ErrorKind::OriginNotInterior, "origin is not interior to the polytope");
  }
  const Vector r = (p.normals * x).cwiseQuotient(p.offsets);
  return std::max(0.0, r.maxCoeff());
}

ConvexBody minkowski_sum(const ConvexBody& p, const ConvexBody& q) {
  require_dim(p.dim(), q.dim(), "minkowski_sum");
  require_polytope(p, "minkowski_sum");
  require_polytope(q, "minkowski_sum");
  const auto& vp = p.vertices();
  const auto& vq = q.vertices();
  PointMatrix sums(vp.rows() * vq.rows(), p.dim());
  for (Eigen::Index i = 0; i < vp.rows(); ++i) {
    for (Eigen::Index j = 0; j < vq.rows(); ++j) sums.row(i * vq.rows() + j) = vp.row(i) + vq.row(j);
  }
  return ConvexBody::from_vertices(sums);
}

std::optional<ConvexBody> intersect(const ConvexBody& p, const ConvexBody& q) {
  require_dim(p.dim(), q.dim(), "intersect");
  require_polytope(p, "intersect");
  require_polytope(q, "intersect");
  PointMatrix a(p.normals().rows() + q.normals().rows(), p.dim());
  a << p.normals(), q.normals();
  Vector b(a.rows());
  b << p.offsets(), q.offsets();
  const auto feas = detail::maximize(Vector::Zero(p.dim()), a, b);
  if (feas.status != detail::LpStatus::Optimal) return std::nullopt;
  if (detail::halfspace_volume({a.data(), static_cast<size_t>(a.size())},
                               {b.data(), static_cast<size_t>(b.size())}, p.dim()) <
      kTolerances.degenerate_volume) {
    return std::nullopt;
  }
  return ConvexBody::from_halfspaces(a, b);
}

ConvexBody apply(const AffineMap& map, const ConvexBody& body) {
  require_dim(body.dim(), map.dim(), "apply");
  if (!map.is_invertible()) throw Error(ErrorKind::InvalidArgument, "affine map is not invertible");
  double s = 0.0;
  const bool conformal = map.is_conformal(&s);
  if (body.is_ball()) {
    if (!conformal) {
      throw Error(ErrorKind::Unsupported, "balls only map under similarities");
    }
    return ConvexBody::ball(map(body.center()), s * body.radius());
  }
  // Pure dilations (possibly negative) keep the derived data.
  const Eigen::MatrixXd& lin = map.linear();
  const double s0 = lin(0, 0);
  const int n = body.dim();
  if ((lin - s0 * Eigen::MatrixXd::Identity(n, n)).norm() == 0.0) {
    ConvexBody out = body;
    out.poly_ = std::make_shared<const detail::PolytopeData>(
        similar_image(body.polytope(), s0, map.shift()));
    return out;
  }
  if (body.kind() == BodyKind::VPolytope) {
    PointMatrix v = body.vertices() * lin.transpose();
    v.rowwise() += map.shift().transpose();
    return ConvexBody::from_vertices(v);
  }
  const Eigen::MatrixXd inv = lin.inverse();
  PointMatrix a = body.normals() * inv;
  Vector b = body.offsets() + a * map.shift();
  return ConvexBody::from_halfspaces(a, b);
}

double projection_volume(const ConvexBody& body, const Vector& u) {
  require_dim(body.dim(), static_cast<int>(u.size()), "projection_volume");
  if (std::abs(u.norm() - 1.0) > 1e-9) {
    throw Error(ErrorKind::InvalidArgument, "projection direction must be a unit vector");
  }
  const int n = body.dim();
  if (n == 1) return 1.0;
  if (body.is_ball()) return unit_ball_volume(n - 1) * std::pow(body.radius(), n - 1);
  const auto& p = body.polytope();
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.normals.rows(); ++i) {
    s += p.facet_areas[i] * std::abs(p.normals.row(i).dot(u));
  }
  return 0.5 * s;
}

ConvexBody translate(const ConvexBody& body, const Vector& shift) {
  require_dim(body.dim(), static_cast<int>(shift.size()), "translate");
  return apply(AffineMap::translation(shift), body);
}

ConvexBody reflect(const ConvexBody& body) {
  return apply(AffineMap::dilation(body.dim(), -1.0), body);
}

ConvexBody scale(const ConvexBody& body, double factor) {
  if (factor == 0.0) throw Error(ErrorKind::InvalidArgument, "scale factor must be nonzero");
  return apply(AffineMap::dilation(body.dim(), factor), body);
}

namespace {

bool same_point_sets(const PointMatrix& a, const PointMatrix& b, double tol) {
  if (a.rows() != b.rows()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    bool found = false;
    for (Eigen::Index j = 0; j < b.rows() && !found; ++j) {
      found = (a.row(i) - b.row(j)).cwiseAbs().maxCoeff() <= tol;
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

bool is_origin_symmetric(const ConvexBody& body, double tol) {
  if (body.is_ball()) return body.center().cwiseAbs().maxCoeff() <= tol;
  const double scale = std::max(1.0, body.vertices().cwiseAbs().maxCoeff());
  return same_point_sets(body.vertices(), -body.vertices(), tol * scale);
}

bool is_reflection_of(const ConvexBody& k, const ConvexBody& l, double tol) {
  if (k.dim() != l.dim() || k.is_ball() != l.is_ball()) return false;
  if (k.is_ball()) {
    return (k.center() + l.center()).cwiseAbs().maxCoeff() <= tol &&
           std::abs(k.radius() - l.radius()) <= tol;
  }
  const double scale = std::max(1.0, k.vertices().cwiseAbs().maxCoeff());
  return same_point_sets(k.vertices(), -l.vertices(), tol * scale);
}

BoundingBox bounding_box(const ConvexBody& body) {
  if (body.is_ball()) {
    const Vector r = Vector::Constant(body.dim(), body.radius());
    return {body.center() - r, body.center() + r};
  }
  return {body.vertices().colwise().minCoeff().transpose(),
          body.vertices().colwise().maxCoeff().transpose()};
}

}  // namespace convbody
