#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "convbody/errors.hpp"
#include "polytope.hpp"

namespace convbody::detail {
namespace {

using P3 = std::array<double, 3>;

P3 sub(const P3& a, const P3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
P3 cross3(const P3& a, const P3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot3(const P3& a, const P3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm3(const P3& a) { return std::sqrt(dot3(a, a)); }

struct Face {
  std::array<int, 3> v;
  P3 n;
  double off;
  std::vector<int> outside;
  bool alive = true;
};

uint64_t edge_key(int a, int b) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) | static_cast<uint32_t>(b);
}

class QuickHull {
 public:
  explicit QuickHull(const std::vector<P3>& pts) : pts_(pts) {
    double scale = 0.0;
    for (const auto& p : pts_) scale = std::max({scale, std::abs(p[0]), std::abs(p[1]), std::abs(p[2])});
    eps_ = 1e-10 * std::max(1.0, scale);
  }

  std::vector<Triangle3> run() {
    initial_simplex();
    std::vector<int> work;
    for (int f = 0; f < static_cast<int>(faces_.size()); ++f) work.push_back(f);
    while (!work.empty()) {
      const int f = work.back();
      work.pop_back();
      if (!faces_[f].alive || faces_[f].outside.empty()) continue;
      add_point(f, work);
    }
    std::vector<Triangle3> out;
    for (const auto& f : faces_) {
      if (f.alive) out.push_back({f.n, f.off, f.v});
    }
    return out;
  }

 private:
  double dist(const Face& f, int p) const { return dot3(f.n, pts_[p]) - f.off; }

  int make_face(int a, int b, int c) {
    Face f;
    f.v = {a, b, c};
    P3 n = cross3(sub(pts_[b], pts_[a]), sub(pts_[c], pts_[a]));
    const double len = norm3(n);
    if (len > 0) n = {n[0] / len, n[1] / len, n[2] / len};
    f.n = n;
    f.off = dot3(n, pts_[a]);
    faces_.push_back(std::move(f));
    const int id = static_cast<int>(faces_.size()) - 1;
    edges_[edge_key(a, b)] = id;
    edges_[edge_key(b, c)] = id;
    edges_[edge_key(c, a)] = id;
    return id;
  }

  void kill_face(int id) {
    Face& f = faces_[id];
    f.alive = false;
    for (int k = 0; k < 3; ++k) {
      auto it = edges_.find(edge_key(f.v[k], f.v[(k + 1) % 3]));
      if (it != edges_.end() && it->second == id) edges_.erase(it);
    }
  }

  void initial_simplex() {
    const int n = static_cast<int>(pts_.size());
    if (n < 4) throw Error(ErrorKind::DegenerateBody, "quickhull needs at least 4 points");
    int i0 = 0;
    for (int i = 1; i < n; ++i) {
      if (pts_[i][0] < pts_[i0][0]) i0 = i;
    }
    int i1 = i0;
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = norm3(sub(pts_[i], pts_[i0]));
      if (d > best) {
        best = d;
        i1 = i;
      }
    }
    const P3 axis = sub(pts_[i1], pts_[i0]);
    int i2 = i0;
    best = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = norm3(cross3(axis, sub(pts_[i], pts_[i0])));
      if (d > best) {
        best = d;
        i2 = i;
      }
    }
    const P3 pn = cross3(axis, sub(pts_[i2], pts_[i0]));
    const double pn_len = norm3(pn);
    int i3 = i0;
    best = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = std::abs(dot3(pn, sub(pts_[i], pts_[i0])));
      if (d > best) {
        best = d;
        i3 = i;
      }
    }
    if (pn_len <= eps_ || best / pn_len <= eps_) {
      throw Error(ErrorKind::DegenerateBody, "points are coplanar");
    }
    if (dot3(pn, sub(pts_[i3], pts_[i0])) > 0) std::swap(i1, i2);
    // Now i3 lies below plane (i0, i1, i2) oriented counter-clockwise.
    make_face(i0, i1, i2);
    make_face(i0, i3, i1);
    make_face(i1, i3, i2);
    make_face(i2, i3, i0);
    for (int i = 0; i < n; ++i) {
      if (i == i0 || i == i1 || i == i2 || i == i3) continue;
      assign(i, 0, 4);
    }
  }

  void assign(int p, int first_face, int end_face) {
    for (int f = first_face; f < end_face; ++f) {
      if (faces_[f].alive && dist(faces_[f], p) > eps_) {
        faces_[f].outside.push_back(p);
        return;
      }
    }
  }

  void add_point(int face_id, std::vector<int>& work) {
    const Face& seed = faces_[face_id];
    int apex = seed.outside.front();
    double far = dist(seed, apex);
    for (int p : seed.outside) {
      const double d = dist(seed, p);
      if (d > far) {
        far = d;
        apex = p;
      }
    }
    // Visible region by flood fill; horizon edges keep their orientation.
    std::vector<int> visible{face_id};
    std::vector<char> mark(faces_.size(), 0);
    mark[face_id] = 1;
    std::vector<std::pair<int, int>> horizon;
    std::vector<int> stack{face_id};
    while (!stack.empty()) {
      const int f = stack.back();
      stack.pop_back();
      for (int k = 0; k < 3; ++k) {
        const int a = faces_[f].v[k];
        const int b = faces_[f].v[(k + 1) % 3];
        auto it = edges_.find(edge_key(b, a));
        if (it == edges_.end()) continue;
        const int g = it->second;
        if (mark[g]) continue;
        if (dist(faces_[g], apex) > eps_) {
          mark[g] = 1;
          visible.push_back(g);
          stack.push_back(g);
        } else {
          horizon.emplace_back(a, b);
        }
      }
    }
    std::vector<int> orphans;
    for (int f : visible) {
      for (int p : faces_[f].outside) {
        if (p != apex) orphans.push_back(p);
      }
      faces_[f].outside.clear();
      kill_face(f);
    }
    const int first_new = static_cast<int>(faces_.size());
    for (const auto& [a, b] : horizon) make_face(a, b, apex);
    const int end_new = static_cast<int>(faces_.size());
    for (int p : orphans) assign(p, first_new, end_new);
    for (int f = first_new; f < end_new; ++f) work.push_back(f);
  }

  const std::vector<P3>& pts_;
  std::vector<Face> faces_;
  std::unordered_map<uint64_t, int> edges_;
  double eps_;
};

}  // namespace

std::vector<Triangle3> quickhull_3d(const std::vector<std::array<double, 3>>& pts) {
  QuickHull qh(pts);
  return qh.run();
}

}  // namespace convbody::detail
