#include "convbody/projbody.hpp"

#include <algorithm>
#include <cmath>

#include "convbody/errors.hpp"
#include "lp.hpp"
#include "polytope.hpp"

namespace convbody {
namespace {

std::vector<double> hull_radii_2d(const PointMatrix& pts, const SphereGrid& grid) {
  std::vector<std::array<double, 2>> p(pts.rows());
  for (Eigen::Index i = 0; i < pts.rows(); ++i) p[i] = {pts(i, 0), pts(i, 1)};
  const auto poly = detail::hull_2d(std::move(p));
  if (poly.size() < 3) throw Error(ErrorKind::DegenerateBody, "hull of radial bodies is flat");
  const size_t m = poly.size();
  std::vector<std::array<double, 3>> edges;  // normal, offset
  for (size_t i = 0; i < m; ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % m];
    const double nx = b[1] - a[1];
    const double ny = a[0] - b[0];
    edges.push_back({nx, ny, nx * a[0] + ny * a[1]});
  }
  std::vector<double> r(grid.size());
  for (int k = 0; k < grid.size(); ++k) {
    const double ux = grid.directions()(k, 0);
    const double uy = grid.directions()(k, 1);
    double best = 0.0;
    for (const auto& e : edges) best = std::max(best, (e[0] * ux + e[1] * uy) / e[2]);
    r[k] = 1.0 / best;
  }
  return r;
}

std::vector<double> hull_radii_3d(const PointMatrix& pts, const SphereGrid& grid) {
  std::vector<std::array<double, 3>> p(pts.rows());
  for (Eigen::Index i = 0; i < pts.rows(); ++i) p[i] = {pts(i, 0), pts(i, 1), pts(i, 2)};
  const auto tris = detail::quickhull_3d(p);
  std::vector<double> r(grid.size());
  for (int k = 0; k < grid.size(); ++k) {
    const auto u = grid.directions().row(k);
    double best = 0.0;
    for (const auto& t : tris) {
      best = std::max(best, (t.normal[0] * u(0) + t.normal[1] * u(1) + t.normal[2] * u(2)) /
                                t.offset);
    }
    r[k] = 1.0 / best;
  }
  return r;
}

// ρ(u) = max { t : t·u = Σλ_i p_i, Σλ_i = 1, λ >= 0 }.
std::vector<double> hull_radii_lp(const PointMatrix& pts, const SphereGrid& grid) {
  const int n = grid.dim();
  const int np = static_cast<int>(pts.rows());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + 1, np + 1);
  a.topLeftCorner(n, np) = pts.transpose();
  a.row(n).head(np).setOnes();
  Vector b = Vector::Zero(n + 1);
  b(n) = 1.0;
  Vector c = Vector::Zero(np + 1);
  c(np) = 1.0;
  std::vector<double> r(grid.size());
  for (int k = 0; k < grid.size(); ++k) {
    a.col(np).head(n) = -grid.direction(k);
    const auto res = detail::solve_standard_form(c, a, b);
    if (res.status != detail::LpStatus::Optimal) {
      throw Error(ErrorKind::Convergence, "hull radius LP failed");
    }
    r[k] = res.value;
  }
  return r;
}

}  // namespace

RadialBody polar_projection_body(const ConvexBody& k, const SphereGrid& grid) {
  if (grid.dim() != k.dim()) throw Error(ErrorKind::DimensionMismatch, "grid dimension differs");
  RadialBody rb;
  rb.dim = k.dim();
  rb.center = Vector::Zero(k.dim());
  rb.grid = grid;
  rb.radii.resize(grid.size());
  rb.unbounded.assign(grid.size(), 0);
  for (int i = 0; i < grid.size(); ++i) {
    const double p = projection_volume(k, grid.direction(i));
    if (!(p > 0)) throw Error(ErrorKind::DegenerateBody, "body has a null shadow");
    rb.radii[i] = 1.0 / p;
  }
  return rb;
}

RadialVolume petty_zhang_functional(const ConvexBody& k, const SphereGrid& grid) {
  const auto v = radial_volume(polar_projection_body(k, grid));
  const double f = std::pow(volume(k), k.dim() - 1);
  return {f * v.value, f * v.std_error};
}

RadialBody hull_union(const RadialBody& a, const RadialBody& b) {
  if (!a.grid.same_as(b.grid)) throw Error(ErrorKind::InvalidArgument, "hull_union: grid mismatch");
  if ((a.center - b.center).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorKind::InvalidArgument, "hull_union: centers differ");
  }
  if (!a.bounded() || !b.bounded()) {
    throw Error(ErrorKind::Unsupported, "hull_union needs bounded radial bodies");
  }
  RadialBody out = a;
  out.theta.reset();
  const int n = a.dim;
  const int size = a.grid.size();
  // Only the farther of the two boundary points can be a hull vertex.
  PointMatrix pts(size, n);
  for (int i = 0; i < size; ++i) {
    out.radii[i] = std::max(a.radii[i], b.radii[i]);
    pts.row(i) = out.radii[i] * a.grid.directions().row(i);
  }
  if (n == 1) return out;
  std::vector<double> r;
  if (n == 2) r = hull_radii_2d(pts, a.grid);
  else if (n == 3) r = hull_radii_3d(pts, a.grid);
  else r = hull_radii_lp(pts, a.grid);
  for (int i = 0; i < size; ++i) out.radii[i] = std::max(out.radii[i], r[i]);
  return out;
}

}  // namespace convbody
