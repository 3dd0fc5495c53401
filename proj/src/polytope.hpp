#pragma once

// Internal polytope machinery shared by bodies, convolution and the lifted
// m-fold polytopes. Not part of the installed interface.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "convbody/types.hpp"

namespace convbody::detail {

inline constexpr int kMaxDim = 8;
inline constexpr int kMaxHalfspaces = 64;

struct PolytopeData {
  int dim = 0;
  // dim 1: rows {lo, hi}; dim 2: counter-clockwise order.
  PointMatrix vertices;
  PointMatrix normals;  // unit, irredundant
  Vector offsets;
  std::vector<double> facet_areas;
  double volume = 0.0;
  // dim 3 only: vertex indices of each facet, counter-clockwise seen from
  // outside (aligned with the rows of normals).
  std::vector<std::vector<int>> facet_loops;
};

PolytopeData build_from_halfspaces(const PointMatrix& normals, const Vector& offsets);
PolytopeData build_from_points(const PointMatrix& points);

struct VertexEnumeration {
  int dim = 0;
  std::vector<double> coords;   // count × dim
  std::vector<uint64_t> active;  // bit i set when constraint i is tight
  int count() const { return static_cast<int>(active.size()); }
  const double* vertex(int i) const { return coords.data() + static_cast<size_t>(i) * dim; }
};

/// Vertices of {x : A x <= b} by brute force over dim-subsets of the rows.
/// A is row-major m × d with m <= 64. Empty result for infeasible systems.
VertexEnumeration enumerate_vertices(const double* a, const double* b, int m, int d,
                                     double tol);

struct Measure {
  double volume = 0.0;
  // (d-1)-volume per constraint row; zero for rows that are not facets or
  // that repeat an earlier row's facet.
  std::vector<double> facet_area;
};

/// Volume of the polytope spanned by an enumeration, by recursive pyramid
/// decomposition over the face lattice. Zero if not full-dimensional.
Measure measure(const VertexEnumeration& ve, int m);

/// Volume of a bounded {x : A x <= b}; zero when empty or flat. Rows of A
/// need not be normalized.
double halfspace_volume(std::span<const double> a, std::span<const double> b, int d);

/// Rank of {p_i - p_0} and an orthonormal frame for it (rows of frame).
int orthonormal_frame(const double* points, std::span<const int> idx, int d, double tol,
                      std::array<double, kMaxDim * kMaxDim>& frame);

// Clipping routes used for the hot overlap-volume path.
double clip_area_2d(const PolytopeData& poly, std::span<const double> a,
                    std::span<const double> b);
double clip_volume_3d(const PolytopeData& poly, std::span<const double> a,
                      std::span<const double> b);

struct Hull {
  PointMatrix normals;
  Vector offsets;
};

/// Facet description of conv(points). dim 1 and 2 are direct; higher
/// dimensions enumerate candidate facet hyperplanes through dim-subsets.
Hull convex_hull(const PointMatrix& points);

/// Volume of conv(points) without building an H-representation (dim <= 3;
/// higher dims go through build_from_points).
double hull_volume(const PointMatrix& points);

/// Counter-clockwise hull of planar points, collinear points dropped.
std::vector<std::array<double, 2>> hull_2d(std::vector<std::array<double, 2>> pts);

struct Triangle3 {
  std::array<double, 3> normal;  // unit, outward
  double offset;
  std::array<int, 3> v;          // point indices, counter-clockwise from outside
};
/// Facets of conv(points) in R^3 by quickhull. Points within eps of a facet
/// plane are treated as coplanar. Throws DegenerateBody on flat input.
std::vector<Triangle3> quickhull_3d(const std::vector<std::array<double, 3>>& pts);

}  // namespace convbody::detail
