#pragma once

#include "convbody/types.hpp"

namespace convbody::detail {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  Vector x;
};

/// max c·z  s.t.  A z = b, z >= 0. Dense two-phase tableau simplex with
/// Bland's rule; intended for small row counts.
LpResult solve_standard_form(const Vector& c, const Eigen::MatrixXd& a, const Vector& b);

/// max c·x  s.t.  A x <= b with x free.
LpResult maximize(const Vector& c, const PointMatrix& a, const Vector& b);

}  // namespace convbody::detail
