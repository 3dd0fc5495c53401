#include "nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace convbody::detail {

NmResult nelder_mead_max(const std::function<double(const Vector&)>& g, const Vector& x0,
                         const NmOptions& opt) {
  const int n = static_cast<int>(x0.size());
  std::vector<Vector> pts(n + 1, x0);
  std::vector<double> val(n + 1);
  for (int i = 0; i < n; ++i) pts[i + 1](i) += opt.initial_step;
  int evals = 0;
  auto eval = [&](const Vector& x) {
    ++evals;
    return g(x);
  };
  for (int i = 0; i <= n; ++i) val[i] = eval(pts[i]);

  std::vector<int> order(n + 1);
  while (evals < opt.max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return val[a] > val[b]; });
    const int best = order[0];
    const int worst = order[n];
    const int second = order[n - 1];

    double diam = 0.0;
    for (int i = 0; i <= n; ++i) diam = std::max(diam, (pts[i] - pts[best]).norm());
    if (diam < opt.x_tol) break;

    Vector centroid = Vector::Zero(n);
    for (int i = 0; i <= n; ++i) {
      if (i != worst) centroid += pts[i];
    }
    centroid /= n;

    const Vector xr = centroid + (centroid - pts[worst]);
    const double fr = eval(xr);
    if (fr > val[best]) {
      const Vector xe = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = eval(xe);
      if (fe > fr) {
        pts[worst] = xe;
        val[worst] = fe;
      } else {
        pts[worst] = xr;
        val[worst] = fr;
      }
      continue;
    }
    if (fr > val[second]) {
      pts[worst] = xr;
      val[worst] = fr;
      continue;
    }
    // Contraction, outside if the reflection beat the worst point.
    const bool outside = fr > val[worst];
    const Vector xc = outside ? Vector(centroid + 0.5 * (xr - centroid))
                              : Vector(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = eval(xc);
    if (fc > (outside ? fr : val[worst])) {
      pts[worst] = xc;
      val[worst] = fc;
      continue;
    }
    for (int i = 0; i <= n; ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      val[i] = eval(pts[i]);
    }
  }
  const int best = static_cast<int>(std::max_element(val.begin(), val.end()) - val.begin());
  return {pts[best], val[best], evals};
}

NmResult multistart_max(const std::function<double(const Vector&)>& g,
                        const std::vector<Vector>& starts, double step, double x_tol,
                        int max_restarts) {
  NmOptions opt;
  opt.initial_step = step;
  opt.x_tol = x_tol;
  NmResult best;
  best.value = -HUGE_VAL;
  int evals = 0;
  for (const auto& s : starts) {
    auto r = nelder_mead_max(g, s, opt);
    evals += r.evaluations;
    if (r.value > best.value) best = r;
  }
  double restart_step = step;
  for (int k = 0; k < max_restarts; ++k) {
    restart_step *= 0.25;
    opt.initial_step = std::max(restart_step, 10 * x_tol);
    auto r = nelder_mead_max(g, best.x, opt);
    evals += r.evaluations;
    if (!(r.value > best.value)) break;
    best = r;
  }
  best.evaluations = evals;
  return best;
}

}  // namespace convbody::detail
