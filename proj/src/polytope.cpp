#include "polytope.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "convbody/config.hpp"
#include "convbody/errors.hpp"
#include "lp.hpp"

namespace convbody::detail {
namespace {

// Solves the d×d system in place; false when (numerically) singular.
bool solve_small(double* m, double* rhs, int d) {
  for (int c = 0; c < d; ++c) {
    int piv = c;
    for (int r = c + 1; r < d; ++r) {
      if (std::abs(m[r * d + c]) > std::abs(m[piv * d + c])) piv = r;
    }
    if (std::abs(m[piv * d + c]) < 1e-12) return false;
    if (piv != c) {
      for (int k = 0; k < d; ++k) std::swap(m[c * d + k], m[piv * d + k]);
      std::swap(rhs[c], rhs[piv]);
    }
    for (int r = c + 1; r < d; ++r) {
      const double f = m[r * d + c] / m[c * d + c];
      if (f == 0.0) continue;
      for (int k = c; k < d; ++k) m[r * d + k] -= f * m[c * d + k];
      rhs[r] -= f * rhs[c];
    }
  }
  for (int c = d - 1; c >= 0; --c) {
    double s = rhs[c];
    for (int k = c + 1; k < d; ++k) s -= m[c * d + k] * rhs[k];
    rhs[c] = s / m[c * d + c];
  }
  return true;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

class FaceVolume {
 public:
  FaceVolume(const VertexEnumeration& ve, int m) : ve_(ve), m_(m) {}

  // k-volume of the face spanned by idx, whose affine hull has dim k.
  double volume(const std::vector<int>& idx, int k) {
    const int d = ve_.dim;
    if (k == 0) return 1.0;
    if (k == 1) {
      double best = 0.0;
      for (size_t i = 0; i < idx.size(); ++i) {
        for (size_t j = i + 1; j < idx.size(); ++j) best = std::max(best, dist(idx[i], idx[j]));
      }
      return best;
    }
    std::array<double, kMaxDim> apex{};
    for (int v : idx) {
      for (int c = 0; c < d; ++c) apex[c] += ve_.vertex(v)[c];
    }
    for (int c = 0; c < d; ++c) apex[c] /= static_cast<double>(idx.size());

    std::set<std::vector<int>> seen;
    double total = 0.0;
    std::vector<int> sub;
    for (int row = 0; row < m_; ++row) {
      sub.clear();
      for (int v : idx) {
        if (ve_.active[v] >> row & 1u) sub.push_back(v);
      }
      if (static_cast<int>(sub.size()) < k || sub.size() == idx.size()) continue;
      if (!seen.insert(sub).second) continue;
      std::array<double, kMaxDim * kMaxDim> frame{};
      if (orthonormal_frame(ve_.coords.data(), sub, d, 1e-9, frame) != k - 1) continue;
      const double h = height(apex, sub[0], frame, k - 1);
      total += h * volume(sub, k - 1) / k;
    }
    return total;
  }

  // Areas of the top-level facets, one per constraint row.
  std::vector<double> facet_areas(const std::vector<int>& all) {
    const int d = ve_.dim;
    std::vector<double> out(m_, 0.0);
    std::set<std::vector<int>> seen;
    std::vector<int> sub;
    for (int row = 0; row < m_; ++row) {
      sub.clear();
      for (int v : all) {
        if (ve_.active[v] >> row & 1u) sub.push_back(v);
      }
      if (static_cast<int>(sub.size()) < d) continue;
      if (!seen.insert(sub).second) continue;
      std::array<double, kMaxDim * kMaxDim> frame{};
      if (orthonormal_frame(ve_.coords.data(), sub, d, 1e-9, frame) != d - 1) continue;
      out[row] = volume(sub, d - 1);
    }
    return out;
  }

 private:
  double dist(int i, int j) const {
    double s = 0.0;
    for (int c = 0; c < ve_.dim; ++c) {
      const double t = ve_.vertex(i)[c] - ve_.vertex(j)[c];
      s += t * t;
    }
    return std::sqrt(s);
  }

  double height(const std::array<double, kMaxDim>& p, int base,
                const std::array<double, kMaxDim * kMaxDim>& frame, int rank) const {
    const int d = ve_.dim;
    std::array<double, kMaxDim> v{};
    for (int c = 0; c < d; ++c) v[c] = p[c] - ve_.vertex(base)[c];
    for (int r = 0; r < rank; ++r) {
      double dot = 0.0;
      for (int c = 0; c < d; ++c) dot += v[c] * frame[r * d + c];
      for (int c = 0; c < d; ++c) v[c] -= dot * frame[r * d + c];
    }
    double s = 0.0;
    for (int c = 0; c < d; ++c) s += v[c] * v[c];
    return std::sqrt(s);
  }

  const VertexEnumeration& ve_;
  int m_;
};

void normalize_rows(PointMatrix& a, Vector& b) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const double len = a.row(i).norm();
    if (!(len > 0.0) || !std::isfinite(len)) {
      throw Error(ErrorKind::InvalidArgument, "halfspace normal must be nonzero and finite");
    }
    a.row(i) /= len;
    b(i) /= len;
  }
}

std::vector<int> angular_order(const PointMatrix& pts, const std::vector<int>& idx,
                               const Eigen::Vector3d* normal) {
  const int d = static_cast<int>(pts.cols());
  Vector c = Vector::Zero(d);
  for (int v : idx) c += pts.row(v).transpose();
  c /= static_cast<double>(idx.size());
  std::vector<std::pair<double, int>> keyed;
  if (d == 2) {
    for (int v : idx) keyed.emplace_back(std::atan2(pts(v, 1) - c(1), pts(v, 0) - c(0)), v);
  } else {
    const Eigen::Vector3d n = *normal;
    Eigen::Vector3d e1 = (pts.row(idx[0]).transpose() - c).head<3>();
    e1 -= n * n.dot(e1);
    e1.normalize();
    const Eigen::Vector3d e2 = n.cross(e1);
    for (int v : idx) {
      const Eigen::Vector3d w = (pts.row(v).transpose() - c).head<3>();
      keyed.emplace_back(std::atan2(w.dot(e2), w.dot(e1)), v);
    }
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> out;
  for (const auto& kv : keyed) out.push_back(kv.second);
  return out;
}

}  // namespace

int orthonormal_frame(const double* points, std::span<const int> idx, int d, double tol,
                      std::array<double, kMaxDim * kMaxDim>& frame) {
  if (idx.size() < 2) return 0;
  const double* p0 = points + static_cast<size_t>(idx[0]) * d;
  double scale = 0.0;
  for (size_t i = 1; i < idx.size(); ++i) {
    const double* p = points + static_cast<size_t>(idx[i]) * d;
    double s = 0.0;
    for (int c = 0; c < d; ++c) s += (p[c] - p0[c]) * (p[c] - p0[c]);
    scale = std::max(scale, std::sqrt(s));
  }
  const double cut = tol * std::max(1.0, scale);
  int rank = 0;
  std::array<double, kMaxDim> v{};
  for (size_t i = 1; i < idx.size() && rank < d; ++i) {
    const double* p = points + static_cast<size_t>(idx[i]) * d;
    for (int c = 0; c < d; ++c) v[c] = p[c] - p0[c];
    for (int pass = 0; pass < 2; ++pass) {
      for (int r = 0; r < rank; ++r) {
        double dot = 0.0;
        for (int c = 0; c < d; ++c) dot += v[c] * frame[r * d + c];
        for (int c = 0; c < d; ++c) v[c] -= dot * frame[r * d + c];
      }
    }
    double len = 0.0;
    for (int c = 0; c < d; ++c) len += v[c] * v[c];
    len = std::sqrt(len);
    if (len <= cut) continue;
    for (int c = 0; c < d; ++c) frame[rank * d + c] = v[c] / len;
    ++rank;
  }
  return rank;
}

VertexEnumeration enumerate_vertices(const double* a, const double* b, int m, int d,
                                     double tol) {
  if (m > kMaxHalfspaces) {
    throw Error(ErrorKind::Resource, "vertex enumeration supports at most 64 halfspaces");
  }
  if (d < 1 || d > kMaxDim) throw Error(ErrorKind::Resource, "dimension out of range");
  if (binomial(m, d) > 2e7) {
    throw Error(ErrorKind::Resource, "too many halfspace subsets for vertex enumeration");
  }
  VertexEnumeration ve;
  ve.dim = d;
  if (m < d) return ve;

  std::vector<int> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  std::array<double, kMaxDim * kMaxDim> mat{};
  std::array<double, kMaxDim> x{};
  while (true) {
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) mat[r * d + c] = a[idx[r] * d + c];
      x[r] = b[idx[r]];
    }
    if (solve_small(mat.data(), x.data(), d)) {
      double xs = 1.0;
      for (int c = 0; c < d; ++c) xs = std::max(xs, std::abs(x[c]));
      const double slack = tol * xs;
      bool feasible = true;
      uint64_t mask = 0;
      for (int i = 0; i < m && feasible; ++i) {
        double s = -b[i];
        for (int c = 0; c < d; ++c) s += a[i * d + c] * x[c];
        if (s > slack) feasible = false;
        if (std::abs(s) <= slack) mask |= uint64_t{1} << i;
      }
      if (feasible) {
        const double merge = 1e-9 * xs;
        int hit = -1;
        for (int v = 0; v < ve.count() && hit < 0; ++v) {
          bool same = true;
          for (int c = 0; c < d && same; ++c) same = std::abs(ve.vertex(v)[c] - x[c]) <= merge;
          if (same) hit = v;
        }
        if (hit >= 0) {
          ve.active[hit] |= mask;
        } else {
          ve.coords.insert(ve.coords.end(), x.begin(), x.begin() + d);
          ve.active.push_back(mask);
        }
      }
    }
    int k = d - 1;
    while (k >= 0 && idx[k] == m - d + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  return ve;
}

Measure measure(const VertexEnumeration& ve, int m) {
  Measure out;
  out.facet_area.assign(m, 0.0);
  const int d = ve.dim;
  if (ve.count() < d + 1) return out;
  std::vector<int> all(ve.count());
  std::iota(all.begin(), all.end(), 0);
  std::array<double, kMaxDim * kMaxDim> frame{};
  if (orthonormal_frame(ve.coords.data(), all, d, 1e-9, frame) < d) return out;
  FaceVolume fv(ve, m);
  out.volume = fv.volume(all, d);
  out.facet_area = fv.facet_areas(all);
  return out;
}

double halfspace_volume(std::span<const double> a, std::span<const double> b, int d) {
  const int m = static_cast<int>(b.size());
  if (d == 1) {
    double lo = -HUGE_VAL;
    double hi = HUGE_VAL;
    for (int i = 0; i < m; ++i) {
      if (a[i] > 0) hi = std::min(hi, b[i] / a[i]);
      else if (a[i] < 0) lo = std::max(lo, b[i] / a[i]);
      else if (b[i] < 0) return 0.0;
    }
    return std::max(0.0, hi - lo);
  }
  std::vector<double> an(a.begin(), a.end());
  std::vector<double> bn(b.begin(), b.end());
  for (int i = 0; i < m; ++i) {
    double len = 0.0;
    for (int c = 0; c < d; ++c) len += an[i * d + c] * an[i * d + c];
    len = std::sqrt(len);
    if (len == 0.0) {
      if (bn[i] < 0) return 0.0;
      an[i * d] = 0.0;
      bn[i] = 1.0;  // vacuous row; keep indices aligned
      continue;
    }
    for (int c = 0; c < d; ++c) an[i * d + c] /= len;
    bn[i] /= len;
  }
  const auto ve = enumerate_vertices(an.data(), bn.data(), m, d, kTolerances.facet_slack);
  return measure(ve, m).volume;
}

PolytopeData build_from_halfspaces(const PointMatrix& normals_in, const Vector& offsets_in) {
  const int d = static_cast<int>(normals_in.cols());
  const int m = static_cast<int>(normals_in.rows());
  if (d < 1 || d > kMaxDim) throw Error(ErrorKind::Resource, "dimension out of range");
  if (offsets_in.size() != m) {
    throw Error(ErrorKind::DimensionMismatch, "normals and offsets differ in length");
  }
  if (m > kMaxHalfspaces) {
    throw Error(ErrorKind::Resource, "polytopes are limited to 64 halfspaces");
  }
  PointMatrix a = normals_in;
  Vector b = offsets_in;
  normalize_rows(a, b);

  for (int c = 0; c < d; ++c) {
    for (double sign : {1.0, -1.0}) {
      Vector obj = Vector::Zero(d);
      obj(c) = sign;
      const auto res = maximize(obj, a, b);
      if (res.status == LpStatus::Infeasible) {
        throw Error(ErrorKind::DegenerateBody, "halfspace system is empty");
      }
      if (res.status == LpStatus::Unbounded) {
        throw Error(ErrorKind::DegenerateBody, "halfspace system is unbounded");
      }
    }
  }

  const auto ve = enumerate_vertices(a.data(), b.data(), m, d, kTolerances.facet_slack);
  const auto meas = measure(ve, m);
  if (!(meas.volume >= kTolerances.degenerate_volume)) {
    throw Error(ErrorKind::DegenerateBody, "polytope has no interior");
  }

  PolytopeData p;
  p.dim = d;
  p.volume = meas.volume;
  std::vector<int> kept;
  for (int i = 0; i < m; ++i) {
    if (meas.facet_area[i] > 0.0) kept.push_back(i);
  }
  p.normals.resize(static_cast<Eigen::Index>(kept.size()), d);
  p.offsets.resize(static_cast<Eigen::Index>(kept.size()));
  for (size_t k = 0; k < kept.size(); ++k) {
    p.normals.row(k) = a.row(kept[k]);
    p.offsets(k) = b(kept[k]);
    p.facet_areas.push_back(meas.facet_area[kept[k]]);
  }

  PointMatrix verts(ve.count(), d);
  for (int v = 0; v < ve.count(); ++v) {
    for (int c = 0; c < d; ++c) verts(v, c) = ve.vertex(v)[c];
  }
  if (d == 1) {
    p.vertices.resize(2, 1);
    p.vertices << verts.col(0).minCoeff(), verts.col(0).maxCoeff();
  } else if (d == 2) {
    std::vector<int> all(ve.count());
    std::iota(all.begin(), all.end(), 0);
    const auto order = angular_order(verts, all, nullptr);
    p.vertices.resize(static_cast<Eigen::Index>(order.size()), 2);
    for (size_t i = 0; i < order.size(); ++i) p.vertices.row(i) = verts.row(order[i]);
  } else {
    p.vertices = verts;
  }
  if (d == 3) {
    for (int row : kept) {
      std::vector<int> face;
      for (int v = 0; v < ve.count(); ++v) {
        if (ve.active[v] >> row & 1u) face.push_back(v);
      }
      const Eigen::Vector3d n = a.row(row).transpose();
      p.facet_loops.push_back(angular_order(verts, face, &n));
    }
  }
  return p;
}

PolytopeData build_from_points(const PointMatrix& points) {
  if (!points.allFinite()) throw Error(ErrorKind::InvalidArgument, "vertices must be finite");
  const Hull h = convex_hull(points);
  return build_from_halfspaces(h.normals, h.offsets);
}

double clip_area_2d(const PolytopeData& poly, std::span<const double> a,
                    std::span<const double> b) {
  thread_local std::vector<std::array<double, 2>> cur;
  thread_local std::vector<std::array<double, 2>> next;
  cur.clear();
  for (Eigen::Index i = 0; i < poly.vertices.rows(); ++i) {
    cur.push_back({poly.vertices(i, 0), poly.vertices(i, 1)});
  }
  const size_t m = b.size();
  for (size_t j = 0; j < m && cur.size() >= 3; ++j) {
    const double ax = a[2 * j];
    const double ay = a[2 * j + 1];
    const double bj = b[j];
    next.clear();
    const size_t nv = cur.size();
    for (size_t i = 0; i < nv; ++i) {
      const auto& p = cur[i];
      const auto& q = cur[(i + 1) % nv];
      const double dp = ax * p[0] + ay * p[1] - bj;
      const double dq = ax * q[0] + ay * q[1] - bj;
      if (dp <= 0) next.push_back(p);
      if ((dp < 0 && dq > 0) || (dp > 0 && dq < 0)) {
        const double t = dp / (dp - dq);
        next.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
      }
    }
    std::swap(cur, next);
  }
  if (cur.size() < 3) return 0.0;
  double area = 0.0;
  for (size_t i = 0; i < cur.size(); ++i) {
    const auto& p = cur[i];
    const auto& q = cur[(i + 1) % cur.size()];
    area += p[0] * q[1] - p[1] * q[0];
  }
  return std::max(0.0, 0.5 * area);
}

double clip_volume_3d(const PolytopeData& poly, std::span<const double> a,
                      std::span<const double> b) {
  using P3 = std::array<double, 3>;
  struct Face {
    P3 n;
    double off;
    std::vector<P3> pts;
  };
  thread_local std::vector<Face> faces;
  thread_local std::vector<Face> next;
  thread_local std::vector<P3> cap;
  faces.clear();
  double scale = 0.0;
  for (size_t f = 0; f < poly.facet_loops.size(); ++f) {
    Face face;
    face.n = {poly.normals(f, 0), poly.normals(f, 1), poly.normals(f, 2)};
    face.off = poly.offsets(f);
    for (int v : poly.facet_loops[f]) {
      face.pts.push_back({poly.vertices(v, 0), poly.vertices(v, 1), poly.vertices(v, 2)});
      scale = std::max({scale, std::abs(poly.vertices(v, 0)), std::abs(poly.vertices(v, 1)),
                        std::abs(poly.vertices(v, 2))});
    }
    faces.push_back(std::move(face));
  }
  const double eps = 1e-14 * std::max(1.0, scale);

  const size_t m = b.size();
  for (size_t j = 0; j < m && !faces.empty(); ++j) {
    P3 n = {a[3 * j], a[3 * j + 1], a[3 * j + 2]};
    const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    n = {n[0] / len, n[1] / len, n[2] / len};
    const double c = b[j] / len;
    auto sd = [&](const P3& p) { return n[0] * p[0] + n[1] * p[1] + n[2] * p[2] - c; };

    bool any_out = false;
    for (const auto& f : faces) {
      for (const auto& p : f.pts) any_out = any_out || sd(p) > eps;
    }
    if (!any_out) continue;

    next.clear();
    cap.clear();
    for (const auto& f : faces) {
      Face g;
      g.n = f.n;
      g.off = f.off;
      const size_t nv = f.pts.size();
      for (size_t i = 0; i < nv; ++i) {
        const P3& p = f.pts[i];
        const P3& q = f.pts[(i + 1) % nv];
        double dp = sd(p);
        double dq = sd(q);
        if (std::abs(dp) <= eps) dp = 0.0;
        if (std::abs(dq) <= eps) dq = 0.0;
        if (dp <= 0) g.pts.push_back(p);
        if (dp == 0.0) cap.push_back(p);
        if ((dp < 0 && dq > 0) || (dp > 0 && dq < 0)) {
          const double t = dp / (dp - dq);
          const P3 r = {p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]),
                        p[2] + t * (q[2] - p[2])};
          g.pts.push_back(r);
          cap.push_back(r);
        }
      }
      if (g.pts.size() >= 3) next.push_back(std::move(g));
    }
    if (cap.size() >= 3) {
      P3 ctr{0, 0, 0};
      for (const auto& p : cap) {
        for (int k = 0; k < 3; ++k) ctr[k] += p[k];
      }
      for (int k = 0; k < 3; ++k) ctr[k] /= static_cast<double>(cap.size());
      // Any axis not parallel to n seeds the in-plane frame.
      P3 seed = std::abs(n[0]) < 0.9 ? P3{1, 0, 0} : P3{0, 1, 0};
      const double sn = seed[0] * n[0] + seed[1] * n[1] + seed[2] * n[2];
      P3 e1 = {seed[0] - sn * n[0], seed[1] - sn * n[1], seed[2] - sn * n[2]};
      const double l1 = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
      e1 = {e1[0] / l1, e1[1] / l1, e1[2] / l1};
      const P3 e2 = {n[1] * e1[2] - n[2] * e1[1], n[2] * e1[0] - n[0] * e1[2],
                     n[0] * e1[1] - n[1] * e1[0]};
      std::vector<std::pair<double, P3>> keyed;
      for (const auto& p : cap) {
        const P3 w = {p[0] - ctr[0], p[1] - ctr[1], p[2] - ctr[2]};
        keyed.emplace_back(std::atan2(w[0] * e2[0] + w[1] * e2[1] + w[2] * e2[2],
                                      w[0] * e1[0] + w[1] * e1[1] + w[2] * e1[2]),
                           p);
      }
      std::sort(keyed.begin(), keyed.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      Face g;
      g.n = n;
      g.off = c;
      for (const auto& kv : keyed) g.pts.push_back(kv.second);
      next.push_back(std::move(g));
    }
    std::swap(faces, next);
  }

  // Divergence theorem: V = (1/3) Σ offset_F · area_F.
  double vol = 0.0;
  for (const auto& f : faces) {
    P3 s{0, 0, 0};
    const size_t nv = f.pts.size();
    for (size_t i = 0; i < nv; ++i) {
      const P3& p = f.pts[i];
      const P3& q = f.pts[(i + 1) % nv];
      s[0] += p[1] * q[2] - p[2] * q[1];
      s[1] += p[2] * q[0] - p[0] * q[2];
      s[2] += p[0] * q[1] - p[1] * q[0];
    }
    const double area = 0.5 * std::abs(s[0] * f.n[0] + s[1] * f.n[1] + s[2] * f.n[2]);
    vol += f.off * area / 3.0;
  }
  return std::max(0.0, vol);
}

}  // namespace convbody::detail
