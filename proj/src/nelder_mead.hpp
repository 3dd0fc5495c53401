#pragma once

#include <functional>
#include <vector>

#include "convbody/types.hpp"

namespace convbody::detail {

struct NmResult {
  Vector x;
  double value = 0.0;
  int evaluations = 0;
};

struct NmOptions {
  double initial_step = 1.0;
  double x_tol = 1e-8;  // absolute simplex diameter
  int max_evaluations = 4000;
};

/// Maximizes g by the Nelder–Mead simplex method from x0.
NmResult nelder_mead_max(const std::function<double(const Vector&)>& g, const Vector& x0,
                         const NmOptions& opt);

/// Multi-start wrapper: runs from every start, then restarts from the best point with
/// a shrinking simplex until the value stops improving.
NmResult multistart_max(const std::function<double(const Vector&)>& g,
                        const std::vector<Vector>& starts, double step, double x_tol,
                        int max_restarts);

}  // namespace convbody::detail
