#pragma once

namespace convbody {

/// Every numeric threshold used by the library lives here so that output
/// files can record the exact tolerance set they were produced with.
struct Tolerances {
  // Geometry predicates.
  double facet_slack = 1e-9;         // absolute slack on a·x <= b
  double normal_unit = 1e-12;        // |‖a‖ - 1| allowed on stored normals
  double vertex_dedup = 1e-9;        // vertices closer than this are merged
  double degenerate_volume = 1e-14;  // smaller polytopes are rejected
  double invertible_det = 1e-12;

  // Convolution maximum.
  double no_overlap = 1e-14;
  double maximizer_ratio = 1e-7;     // f(0) >= (1 - ratio) M after normalize
  int nm_min_starts = 8;
  double nm_rel_tol = 1e-8;          // simplex diameter / diam(K+L)
  int nm_max_restarts = 6;

  // Radial construction.
  double root_rel_tol = 1e-12;       // on the radius t
  int root_max_iter = 200;
  double derivative_step = 1e-3;     // relative to h_K(u) + h_L(u)
  double unbounded_derivative = 1e-10;
  double level_one_ratio = 1e-6;     // K +_1 L probed as f >= (1 - ratio) M
  double radial_compare = 1e-6;

  // Reports.
  double inclusion_slack = 1e-4;     // per-direction, times body scale
  double report_abs = 1e-9;
  double equality_detect = 1e-7;
  double fubini_rel = 2e-2;

  // Monte Carlo for ball/polytope overlaps.
  long mc_samples = 200000;
};

inline constexpr Tolerances kTolerances{};

}  // namespace convbody
