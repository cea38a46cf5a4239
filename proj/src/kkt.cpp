#include "dsim/kkt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dsim {

KktReport kkt_residuals(const LinearProgram& lp, const LpSolution& sol) {
  if (sol.status != LpStatus::optimal)
    throw std::invalid_argument("kkt_residuals: solution is not optimal");
  const auto n = static_cast<std::int32_t>(lp.num_vars());
  const auto m = static_cast<std::int32_t>(lp.num_rows());
  KktReport rep;

  // row activities
  std::vector<double> act(m, 0.0);
  for (std::int32_t r = 0; r < m; ++r) {
    const auto& row = lp.row(r);
    double a = 0.0;
    for (std::size_t idx = 0; idx < row.cols.size(); ++idx)
      a += row.vals[idx] * sol.x[row.cols[idx]];
    act[r] = a;
  }

  auto bump = [](double& slot, double v) { slot = std::max(slot, v); };

  // primal feasibility
  for (std::int32_t j = 0; j < n; ++j) {
    const auto& v = lp.var(j);
    bump(rep.max_primal_infeasibility, std::max(v.lb - sol.x[j], sol.x[j] - v.ub));
  }
  for (std::int32_t r = 0; r < m; ++r) {
    const auto& row = lp.row(r);
    bump(rep.max_primal_infeasibility, std::max(row.lb - act[r], act[r] - row.ub));
  }

  // duals: y[r] >= 0 only valid when lower side can bind, <= 0 for upper;
  // equalities are free. Complementarity pairs |y| with the opposite slack.
  double dual_obj = 0.0;
  for (std::int32_t r = 0; r < m; ++r) {
    const auto& row = lp.row(r);
    const double yr = sol.y[r];
    if (row.lb == row.ub) {
      dual_obj += yr * row.lb;
      continue;
    }
    if (yr > 0) {
      if (std::isfinite(row.lb)) {
        bump(rep.max_complementarity, yr * std::fabs(act[r] - row.lb));
        dual_obj += yr * row.lb;
      } else {
        bump(rep.max_dual_infeasibility, yr);
      }
    } else if (yr < 0) {
      if (std::isfinite(row.ub)) {
        bump(rep.max_complementarity, -yr * std::fabs(row.ub - act[r]));
        dual_obj += yr * row.ub;
      } else {
        bump(rep.max_dual_infeasibility, -yr);
      }
    }
  }

  // stationarity: reduced costs must equal c - y'A exactly, and their sign
  // must match the active bound
  double primal_obj = 0.0;
  for (std::int32_t j = 0; j < n; ++j) {
    primal_obj += lp.var(j).cost * sol.x[j];
  }
  std::vector<double> yA(n, 0.0);
  for (std::int32_t r = 0; r < m; ++r) {
    const auto& row = lp.row(r);
    for (std::size_t idx = 0; idx < row.cols.size(); ++idx)
      yA[row.cols[idx]] += sol.y[r] * row.vals[idx];
  }
  for (std::int32_t j = 0; j < n; ++j) {
    const auto& v = lp.var(j);
    const double dj = sol.d[j];
    bump(rep.max_stationarity, std::fabs(v.cost - yA[j] - dj));
    if (v.lb == v.ub) {
      dual_obj += dj * v.lb;
      continue;
    }
    if (dj > 0) {
      if (std::isfinite(v.lb)) {
        bump(rep.max_complementarity, dj * std::fabs(sol.x[j] - v.lb));
        dual_obj += dj * v.lb;
      } else {
        bump(rep.max_dual_infeasibility, dj);
      }
    } else if (dj < 0) {
      if (std::isfinite(v.ub)) {
        bump(rep.max_complementarity, -dj * std::fabs(v.ub - sol.x[j]));
        dual_obj += dj * v.ub;
      } else {
        bump(rep.max_dual_infeasibility, -dj);
      }
    }
  }

  rep.duality_gap = std::fabs(primal_obj - dual_obj) / (1.0 + std::fabs(primal_obj));
  return rep;
}

}  // namespace dsim
