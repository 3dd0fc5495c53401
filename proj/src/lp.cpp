#include "lp.hpp"

#include <cmath>
#include <limits>

namespace convbody::detail {
namespace {

constexpr double kPivotEps = 1e-11;

// Tableau layout: rows 0..m-1 are constraints, row m is the objective
// (reduced profits, maximization). Column `cols` holds the right-hand side.
class Tableau {
 public:
  Tableau(int rows, int cols) : m_(rows), n_(cols), t_(Eigen::MatrixXd::Zero(rows + 1, cols + 1)),
                                basis_(rows, -1) {}

  double& at(int r, int c) { return t_(r, c); }
  double rhs(int r) const { return t_(r, n_); }
  std::vector<int>& basis() { return basis_; }

  // Returns false when the objective is unbounded.
  bool optimize(int allowed_cols) {
    for (int iter = 0; iter < 50000; ++iter) {
      int enter = -1;
      for (int j = 0; j < allowed_cols; ++j) {
        if (t_(m_, j) > kPivotEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m_; ++r) {
        const double coef = t_(r, enter);
        if (coef <= kPivotEps) continue;
        const double ratio = t_(r, n_) / coef;
        if (ratio < best - 1e-14 ||
            (std::abs(ratio - best) <= 1e-14 && leave >= 0 && basis_[r] < basis_[leave])) {
          best = ratio;
          leave = r;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    return true;
  }

  void pivot(int r, int c) {
    t_.row(r) /= t_(r, c);
    for (int i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[r] = c;
  }

  int rows() const { return m_; }
  int cols() const { return n_; }
  Eigen::MatrixXd& raw() { return t_; }

 private:
  int m_;
  int n_;
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
};

}  // namespace

LpResult solve_standard_form(const Vector& c, const Eigen::MatrixXd& a, const Vector& b) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  // Columns: n structural, then m artificials.
  Tableau tab(m, n + m);
  for (int r = 0; r < m; ++r) {
    const double sign = b(r) < 0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) tab.at(r, j) = sign * a(r, j);
    tab.at(r, n + r) = 1.0;
    tab.at(r, n + m) = sign * b(r);
    tab.basis()[r] = n + r;
  }
  // Phase I: maximize -sum(artificials).
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j <= n + m; ++j) {
      if (j >= n && j < n + m) continue;
      tab.at(m, j) += tab.at(r, j);
    }
  }
  tab.optimize(n + m);
  LpResult result;
  if (tab.raw()(m, n + m) > 1e-9 * (1.0 + b.cwiseAbs().maxCoeff())) {
    result.status = LpStatus::Infeasible;
    return result;
  }
  // Drive remaining artificials out of the basis where possible.
  for (int r = 0; r < m; ++r) {
    if (tab.basis()[r] < n) continue;
    for (int j = 0; j < n; ++j) {
      if (std::abs(tab.at(r, j)) > kPivotEps) {
        tab.pivot(r, j);
        break;
      }
    }
  }
  // Phase II objective row: reduced profits c_j - c_B B^{-1} A_j.
  auto& t = tab.raw();
  t.row(m).setZero();
  for (int j = 0; j < n; ++j) t(m, j) = c(j);
  for (int r = 0; r < m; ++r) {
    const int bj = tab.basis()[r];
    if (bj < n && c(bj) != 0.0) t.row(m) -= c(bj) * t.row(r);
  }
  // Artificials must stay at zero: exclude them from entering.
  for (int j = n; j < n + m; ++j) t(m, j) = 0.0;
  if (!tab.optimize(n)) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.x = Vector::Zero(n);
  for (int r = 0; r < m; ++r) {
    const int bj = tab.basis()[r];
    if (bj < n) result.x(bj) = tab.rhs(r);
  }
  result.value = c.dot(result.x);
  return result;
}

LpResult maximize(const Vector& c, const PointMatrix& a, const Vector& b) {
  const int m = static_cast<int>(a.rows());
  const int d = static_cast<int>(a.cols());
  // x = x+ - x-, plus one slack per row.
  Eigen::MatrixXd eq = Eigen::MatrixXd::Zero(m, 2 * d + m);
  eq.leftCols(d) = a;
  eq.middleCols(d, d) = -a;
  eq.rightCols(m) = Eigen::MatrixXd::Identity(m, m);
  Vector cost = Vector::Zero(2 * d + m);
  cost.head(d) = c;
  cost.segment(d, d) = -c;
  LpResult std_result = solve_standard_form(cost, eq, b);
  LpResult result;
  result.status = std_result.status;
  if (std_result.status == LpStatus::Optimal) {
    result.x = std_result.x.head(d) - std_result.x.segment(d, d);
    result.value = c.dot(result.x);
  }
  return result;
}

}  // namespace convbody::detail
