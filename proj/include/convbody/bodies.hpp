#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "convbody/types.hpp"

namespace convbody {

namespace detail {
struct PolytopeData;
}

/// x ↦ linear·x + translation.
class AffineMap {
 public:
  AffineMap(Eigen::MatrixXd linear, Vector translation);

  static AffineMap identity(int n);
  static AffineMap dilation(int n, double factor);
  static AffineMap translation(const Vector& shift);

  int dim() const { return static_cast<int>(translation_.size()); }
  const Eigen::MatrixXd& linear() const { return linear_; }
  const Vector& shift() const { return translation_; }

  double determinant() const;
  bool is_invertible() const;
  // True when linear = s·Q with Q orthogonal; writes s.
  bool is_conformal(double* scale) const;

  Vector operator()(const Vector& x) const { return linear_ * x + translation_; }

 private:
  Eigen::MatrixXd linear_;
  Vector translation_;
};

enum class BodyKind { HPolytope, VPolytope, Ball };

/// Immutable convex body: a polytope (given by halfspaces or by vertices, with
/// the other representation derived at construction) or a Euclidean ball.
///
/// Polytopes are validated on construction: bounded, full-dimensional, and
/// stored with unit outer normals and an irredundant facet list. Copies share
/// the derived geometry.
class ConvexBody {
 public:
  static ConvexBody from_halfspaces(const PointMatrix& normals, const Vector& offsets);
  static ConvexBody from_vertices(const PointMatrix& points);
  static ConvexBody ball(const Vector& center, double radius);

  // Named families used throughout the tests and CLI.
  static ConvexBody cube(int n, double side = 1.0);  // [-side/2, side/2]^n
  static ConvexBody simplex(int n);                  // conv{0, e_1, ..., e_n}
  static ConvexBody cross_polytope(int n);           // sum |x_i| <= 1
  static ConvexBody interval(double lo, double hi);

  BodyKind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool is_polytope() const { return kind_ != BodyKind::Ball; }
  bool is_ball() const { return kind_ == BodyKind::Ball; }

  // Polytope accessors; throw Unsupported on balls.
  const PointMatrix& vertices() const;
  const PointMatrix& normals() const;
  const Vector& offsets() const;
  const std::vector<double>& facet_areas() const;
  const detail::PolytopeData& polytope() const;

  // Ball accessors; throw Unsupported on polytopes.
  const Vector& center() const;
  double radius() const;

  double volume() const;
  // Vertex average for polytopes, center for balls. Always interior.
  Vector interior_point() const;

 private:
  ConvexBody() = default;
  friend ConvexBody apply(const AffineMap& map, const ConvexBody& body);

  BodyKind kind_ = BodyKind::Ball;
  int dim_ = 0;
  std::shared_ptr<const detail::PolytopeData> poly_;
  Vector center_;
  double radius_ = 0.0;
};

/// Volume of the unit ball in R^n, π^{n/2} / Γ(n/2 + 1).
double unit_ball_volume(int n);

bool contains(const ConvexBody& body, const Vector& x, double tol = 0.0);
double volume(const ConvexBody& body);
double support(const ConvexBody& body, const Vector& u);
/// Minkowski functional ‖x‖_body. The origin must be interior.
double gauge(const ConvexBody& body, const Vector& x);
ConvexBody minkowski_sum(const ConvexBody& p, const ConvexBody& q);
/// std::nullopt when P ∩ Q has empty interior.
std::optional<ConvexBody> intersect(const ConvexBody& p, const ConvexBody& q);
ConvexBody apply(const AffineMap& map, const ConvexBody& body);
/// (n-1)-volume of the orthogonal projection onto u⊥; u must be a unit vector.
double projection_volume(const ConvexBody& body, const Vector& u);

ConvexBody translate(const ConvexBody& body, const Vector& shift);
ConvexBody reflect(const ConvexBody& body);  // -K
ConvexBody scale(const ConvexBody& body, double factor);

bool is_origin_symmetric(const ConvexBody& body, double tol = 1e-9);
/// K == -L, up to tolerance.
bool is_reflection_of(const ConvexBody& k, const ConvexBody& l, double tol = 1e-9);

struct BoundingBox {
  Vector lo;
  Vector hi;
  double volume() const { return (hi - lo).prod(); }
  double diagonal() const { return (hi - lo).norm(); }
};
BoundingBox bounding_box(const ConvexBody& body);

}  // namespace convbody
