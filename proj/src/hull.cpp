#include <algorithm>
#include <cmath>

#include "convbody/errors.hpp"
#include "polytope.hpp"

namespace convbody::detail {
namespace {

double cross(const std::array<double, 2>& o, const std::array<double, 2>& a,
             const std::array<double, 2>& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

Hull hull_1d(const PointMatrix& points) {
  const double lo = points.col(0).minCoeff();
  const double hi = points.col(0).maxCoeff();
  if (hi - lo <= 0.0) throw Error(ErrorKind::DegenerateBody, "points span no interval");
  Hull h;
  h.normals.resize(2, 1);
  h.normals << -1.0, 1.0;
  h.offsets.resize(2);
  h.offsets << -lo, hi;
  return h;
}

Hull hull_planar(const PointMatrix& points) {
  std::vector<std::array<double, 2>> pts(points.rows());
  for (Eigen::Index i = 0; i < points.rows(); ++i) pts[i] = {points(i, 0), points(i, 1)};
  const auto poly = hull_2d(std::move(pts));
  if (poly.size() < 3) throw Error(ErrorKind::DegenerateBody, "planar points are collinear");
  Hull h;
  const int nv = static_cast<int>(poly.size());
  h.normals.resize(nv, 2);
  h.offsets.resize(nv);
  for (int i = 0; i < nv; ++i) {
    const auto& p = poly[i];
    const auto& q = poly[(i + 1) % nv];
    const double dx = q[0] - p[0];
    const double dy = q[1] - p[1];
    const double len = std::hypot(dx, dy);
    h.normals(i, 0) = dy / len;
    h.normals(i, 1) = -dx / len;
    h.offsets(i) = h.normals(i, 0) * p[0] + h.normals(i, 1) * p[1];
  }
  return h;
}

// Facet hyperplanes through dim-subsets that leave every point on one side.
Hull hull_general(const PointMatrix& points) {
  const int d = static_cast<int>(points.cols());
  const int n = static_cast<int>(points.rows());
  double scale = 0.0;
  for (int i = 1; i < n; ++i) scale = std::max(scale, (points.row(i) - points.row(0)).norm());
  const double tol = 1e-9 * std::max(1.0, scale);

  {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    std::array<double, kMaxDim * kMaxDim> frame{};
    if (orthonormal_frame(points.data(), all, d, 1e-9, frame) < d) {
      throw Error(ErrorKind::DegenerateBody, "points are not full-dimensional");
    }
  }

  std::vector<std::array<double, kMaxDim + 1>> facets;
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;
  std::array<double, kMaxDim * kMaxDim> frame{};
  std::array<double, kMaxDim> normal{};
  while (true) {
    if (orthonormal_frame(points.data(), idx, d, 1e-9, frame) == d - 1) {
      // Complete the frame with the coordinate axis least aligned to it.
      double best_norm = -1.0;
      for (int axis = 0; axis < d; ++axis) {
        std::array<double, kMaxDim> v{};
        v[axis] = 1.0;
        for (int r = 0; r < d - 1; ++r) {
          double dot = 0.0;
          for (int k = 0; k < d; ++k) dot += v[k] * frame[r * d + k];
          for (int k = 0; k < d; ++k) v[k] -= dot * frame[r * d + k];
        }
        double nv = 0.0;
        for (int k = 0; k < d; ++k) nv += v[k] * v[k];
        nv = std::sqrt(nv);
        if (nv > best_norm) {
          best_norm = nv;
          for (int k = 0; k < d; ++k) normal[k] = v[k] / nv;
        }
      }
      double offset = 0.0;
      for (int k = 0; k < d; ++k) offset += normal[k] * points(idx[0], k);
      bool above = false;
      bool below = false;
      for (int p = 0; p < n && !(above && below); ++p) {
        double s = -offset;
        for (int k = 0; k < d; ++k) s += normal[k] * points(p, k);
        if (s > tol) above = true;
        if (s < -tol) below = true;
      }
      if (!(above && below)) {
        const double sign = above ? -1.0 : 1.0;
        std::array<double, kMaxDim + 1> f{};
        for (int k = 0; k < d; ++k) f[k] = sign * normal[k];
        f[d] = sign * offset;
        const bool seen = std::any_of(facets.begin(), facets.end(), [&](const auto& g) {
          for (int k = 0; k <= d; ++k) {
            if (std::abs(g[k] - f[k]) > 1e-9 * (k == d ? std::max(1.0, scale) : 1.0)) return false;
          }
          return true;
        });
        if (!seen) facets.push_back(f);
      }
    }
    int k = d - 1;
    while (k >= 0 && idx[k] == n - d + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }

  Hull h;
  h.normals.resize(static_cast<Eigen::Index>(facets.size()), d);
  h.offsets.resize(static_cast<Eigen::Index>(facets.size()));
  for (size_t i = 0; i < facets.size(); ++i) {
    for (int k = 0; k < d; ++k) h.normals(static_cast<Eigen::Index>(i), k) = facets[i][k];
    h.offsets(static_cast<Eigen::Index>(i)) = facets[i][d];
  }
  return h;
}

Hull hull_spatial(const PointMatrix& points) {
  std::vector<std::array<double, 3>> pts(points.rows());
  for (Eigen::Index i = 0; i < points.rows(); ++i) pts[i] = {points(i, 0), points(i, 1), points(i, 2)};
  const auto tris = quickhull_3d(pts);
  const double scale = std::max(1.0, points.cwiseAbs().maxCoeff());
  // Coplanar triangles collapse into one facet.
  std::vector<std::array<double, 4>> planes;
  for (const auto& t : tris) {
    const std::array<double, 4> f{t.normal[0], t.normal[1], t.normal[2], t.offset};
    const bool seen = std::any_of(planes.begin(), planes.end(), [&](const auto& g) {
      return std::abs(g[0] - f[0]) <= 1e-9 && std::abs(g[1] - f[1]) <= 1e-9 &&
             std::abs(g[2] - f[2]) <= 1e-9 && std::abs(g[3] - f[3]) <= 1e-9 * scale;
    });
    if (!seen) planes.push_back(f);
  }
  Hull h;
  h.normals.resize(static_cast<Eigen::Index>(planes.size()), 3);
  h.offsets.resize(static_cast<Eigen::Index>(planes.size()));
  for (size_t i = 0; i < planes.size(); ++i) {
    for (int k = 0; k < 3; ++k) h.normals(static_cast<Eigen::Index>(i), k) = planes[i][k];
    h.offsets(static_cast<Eigen::Index>(i)) = planes[i][3];
  }
  return h;
}

}  // namespace

double hull_volume(const PointMatrix& points) {
  const int d = static_cast<int>(points.cols());
  if (d == 1) return points.col(0).maxCoeff() - points.col(0).minCoeff();
  if (d == 2) {
    std::vector<std::array<double, 2>> pts(points.rows());
    for (Eigen::Index i = 0; i < points.rows(); ++i) pts[i] = {points(i, 0), points(i, 1)};
    const auto poly = hull_2d(std::move(pts));
    double area = 0.0;
    for (size_t i = 0; i < poly.size(); ++i) {
      const auto& p = poly[i];
      const auto& q = poly[(i + 1) % poly.size()];
      area += p[0] * q[1] - p[1] * q[0];
    }
    return 0.5 * area;
  }
  if (d == 3) {
    std::vector<std::array<double, 3>> pts(points.rows());
    for (Eigen::Index i = 0; i < points.rows(); ++i) pts[i] = {points(i, 0), points(i, 1), points(i, 2)};
    double vol = 0.0;
    for (const auto& t : quickhull_3d(pts)) {
      const auto& a = pts[t.v[0]];
      const auto& b = pts[t.v[1]];
      const auto& c = pts[t.v[2]];
      // Signed tetrahedron volumes against the origin.
      vol += (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
              a[2] * (b[0] * c[1] - b[1] * c[0])) /
             6.0;
    }
    return vol;
  }
  return build_from_points(points).volume;
}

std::vector<std::array<double, 2>> hull_2d(std::vector<std::array<double, 2>> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max({scale, std::abs(p[0]), std::abs(p[1])});
  const double eps = 1e-13 * std::max(1.0, scale) * std::max(1.0, scale);
  std::vector<std::array<double, 2>> out(2 * pts.size());
  size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(out[k - 2], out[k - 1], p) <= eps) --k;
    out[k++] = p;
  }
  for (size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(out[k - 2], out[k - 1], pts[i]) <= eps) --k;
    out[k++] = pts[i];
  }
  out.resize(k - 1);
  return out;
}

Hull convex_hull(const PointMatrix& points) {
  const int d = static_cast<int>(points.cols());
  if (points.rows() < d + 1) {
    throw Error(ErrorKind::DegenerateBody, "need at least dim+1 points for a convex body");
  }
  if (d == 1) return hull_1d(points);
  if (d == 2) return hull_planar(points);
  if (d == 3) return hull_spatial(points);
  return hull_general(points);
}

}  // namespace convbody::detail
