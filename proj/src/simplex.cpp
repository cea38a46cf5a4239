#include "dsim/simplex.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "dsim/kernels.hpp"

namespace dsim {

namespace {
constexpr double kStepEps = 1e-11;  // steps below this count as degenerate
}

struct SimplexSolver::Impl {
  SolverOptions opts;

  // problem dimensions and column-wise matrix (structural + slack columns)
  std::int32_t n = 0;  // structural columns
  std::int32_t m = 0;  // rows
  std::int32_t N = 0;  // n + m
  // CSC-ish storage of structural columns; slack column n+r is (-1 at row r)
  std::vector<std::int32_t> col_start;
  std::vector<std::int32_t> col_row;
  std::vector<double> col_val;
  std::vector<double> lb, ub, cost;  // length N (slack cost = 0)

  // basis state
  enum Status : std::int8_t { kBasic, kAtLower, kAtUpper, kFree };
  std::vector<std::int8_t> status;       // length N
  std::vector<std::int32_t> basic;       // length m: column in each basis row
  std::vector<std::int32_t> basic_pos;   // length N: row position or -1
  std::vector<double> binv;              // m*m row-major
  std::vector<double> xb;                // basic values per basis row
  std::vector<double> xn;                // nonbasic values per column (valid when nonbasic)
  bool have_basis = false;

  // scratch
  std::vector<double> w;      // FTRAN result
  std::vector<double> rho;    // pivot row of B^-1 (copy)
  std::vector<double> y;      // duals
  std::vector<double> d;      // reduced costs, length N
  std::vector<double> c1;     // phase-1 cost per basis row

  std::int64_t iters = 0;
  std::int64_t phase1_iters = 0;

  // ---- setup -------------------------------------------------------------

  void load(const LinearProgram& lp) {
    n = static_cast<std::int32_t>(lp.num_vars());
    m = static_cast<std::int32_t>(lp.num_rows());
    N = n + m;
    col_start.assign(n + 1, 0);
    col_row.clear();
    col_val.clear();
    // build column-wise structural matrix from the row-wise LP
    std::vector<std::int32_t> count(n, 0);
    for (const auto& row : lp.rows())
      for (auto c : row.cols) count[c]++;
    for (std::int32_t j = 0; j < n; ++j) col_start[j + 1] = col_start[j] + count[j];
    col_row.resize(col_start[n]);
    col_val.resize(col_start[n]);
    std::vector<std::int32_t> fill(col_start.begin(), col_start.end() - 1);
    for (std::int32_t r = 0; r < m; ++r) {
      const auto& row = lp.row(r);
      for (std::size_t idx = 0; idx < row.cols.size(); ++idx) {
        const auto j = row.cols[idx];
        col_row[fill[j]] = r;
        col_val[fill[j]] = row.vals[idx];
        ++fill[j];
      }
    }
    refresh_bounds(lp);
  }

  void refresh_bounds(const LinearProgram& lp) {
    lb.resize(N);
    ub.resize(N);
    cost.assign(N, 0.0);
    for (std::int32_t j = 0; j < n; ++j) {
      lb[j] = lp.var(j).lb;
      ub[j] = lp.var(j).ub;
      cost[j] = lp.var(j).cost;
    }
    for (std::int32_t r = 0; r < m; ++r) {
      lb[n + r] = lp.row(r).lb;
      ub[n + r] = lp.row(r).ub;
    }
  }

  bool same_structure(const LinearProgram& lp) const {
    if (static_cast<std::int32_t>(lp.num_vars()) != n) return false;
    if (static_cast<std::int32_t>(lp.num_rows()) != m) return false;
    std::int32_t nnz = 0;
    for (const auto& row : lp.rows()) nnz += static_cast<std::int32_t>(row.cols.size());
    return nnz == static_cast<std::int32_t>(col_row.size());
  }

  // nonbasic starting value for column j given its bounds
  void snap_nonbasic(std::int32_t j) {
    if (std::isfinite(lb[j])) {
      status[j] = kAtLower;
      xn[j] = lb[j];
    } else if (std::isfinite(ub[j])) {
      status[j] = kAtUpper;
      xn[j] = ub[j];
    } else {
      status[j] = kFree;
      xn[j] = 0.0;
    }
  }

  void slack_basis() {
    status.assign(N, kAtLower);
    basic.resize(m);
    basic_pos.assign(N, -1);
    xn.assign(N, 0.0);
    for (std::int32_t j = 0; j < n; ++j) snap_nonbasic(j);
    binv.assign(static_cast<std::size_t>(m) * m, 0.0);
    for (std::int32_t r = 0; r < m; ++r) {
      const std::int32_t s = n + r;
      basic[r] = s;
      basic_pos[s] = r;
      status[s] = kBasic;
      binv[static_cast<std::size_t>(r) * m + r] = -1.0;  // slack coefficient is -1
    }
    compute_xb();
    have_basis = true;
  }

  // keep basis/binv, re-snap nonbasic values onto (possibly new) bounds
  void rebind_nonbasic() {
    for (std::int32_t j = 0; j < N; ++j) {
      if (status[j] == kBasic) continue;
      if (lb[j] == ub[j]) {
        status[j] = kAtLower;
        xn[j] = lb[j];
        continue;
      }
      if (status[j] == kAtLower && std::isfinite(lb[j])) xn[j] = lb[j];
      else if (status[j] == kAtUpper && std::isfinite(ub[j])) xn[j] = ub[j];
      else snap_nonbasic(j);
    }
    compute_xb();
  }

  // ---- linear algebra ----------------------------------------------------

  // w = B^-1 * (column j of the full matrix)
  void ftran_column(std::int32_t j, std::vector<double>& out) {
    out.assign(m, 0.0);
    if (j >= n) {
      const std::int32_t r = j - n;
      for (std::int32_t i = 0; i < m; ++i) out[i] = -binv[static_cast<std::size_t>(i) * m + r];
      return;
    }
    for (std::int32_t p = col_start[j]; p < col_start[j + 1]; ++p) {
      const std::int32_t r = col_row[p];
      const double v = col_val[p];
      const double* colptr = binv.data() + r;
      // out += v * (column r of B^-1); strided gather over rows
      for (std::int32_t i = 0; i < m; ++i) out[i] += v * colptr[static_cast<std::size_t>(i) * m];
    }
  }

  // dot of dense vector with full-matrix column j
  double col_dot(const double* dense, std::int32_t j) const {
    if (j >= n) return -dense[j - n];
    double s = 0.0;
    for (std::int32_t p = col_start[j]; p < col_start[j + 1]; ++p)
      s += col_val[p] * dense[col_row[p]];
    return s;
  }

  void compute_xb() {
    // x_B = -B^-1 * sum_j(nonbasic) x_j A_j
    std::vector<double> v(m, 0.0);
    for (std::int32_t j = 0; j < N; ++j) {
      if (status[j] == kBasic || xn[j] == 0.0) continue;
      if (j >= n) {
        v[j - n] -= xn[j];
      } else {
        for (std::int32_t p = col_start[j]; p < col_start[j + 1]; ++p)
          v[col_row[p]] += xn[j] * col_val[p];
      }
    }
    xb.assign(m, 0.0);
    for (std::int32_t i = 0; i < m; ++i)
      xb[i] = -kernels::dot(binv.data() + static_cast<std::size_t>(i) * m, v.data(), m);
  }

  // duals for an arbitrary basis-row cost vector cb
  void compute_duals(const double* cb, std::vector<double>& out_y) {
    out_y.assign(m, 0.0);
    for (std::int32_t i = 0; i < m; ++i)
      if (cb[i] != 0.0)
        kernels::axpy(cb[i], binv.data() + static_cast<std::size_t>(i) * m, out_y.data(), m);
  }

  // rebuild B^-1 from the basis columns (Gauss-Jordan, partial pivoting)
  bool reinvert() {
    std::vector<double> M(static_cast<std::size_t>(m) * m, 0.0);
    for (std::int32_t r = 0; r < m; ++r) {
      const std::int32_t j = basic[r];
      if (j >= n) {
        M[static_cast<std::size_t>(j - n) * m + r] = -1.0;
      } else {
        for (std::int32_t p = col_start[j]; p < col_start[j + 1]; ++p)
          M[static_cast<std::size_t>(col_row[p]) * m + r] = col_val[p];
      }
    }
    std::vector<double>& inv = binv;
    inv.assign(static_cast<std::size_t>(m) * m, 0.0);
    for (std::int32_t i = 0; i < m; ++i) inv[static_cast<std::size_t>(i) * m + i] = 1.0;
    std::vector<std::int32_t> perm(m);
    for (std::int32_t i = 0; i < m; ++i) perm[i] = i;
    for (std::int32_t k = 0; k < m; ++k) {
      // pivot search in column k below row k
      std::int32_t piv = -1;
      double best = opts.tol_pivot;
      for (std::int32_t i = k; i < m; ++i) {
        const double v = std::fabs(M[static_cast<std::size_t>(i) * m + k]);
        if (v > best) {
          best = v;
          piv = i;
        }
      }
      if (piv < 0) return false;
      if (piv != k) {
        for (std::int32_t c = 0; c < m; ++c) {
          std::swap(M[static_cast<std::size_t>(piv) * m + c], M[static_cast<std::size_t>(k) * m + c]);
          std::swap(inv[static_cast<std::size_t>(piv) * m + c], inv[static_cast<std::size_t>(k) * m + c]);
        }
      }
      const double pv = M[static_cast<std::size_t>(k) * m + k];
      kernels::scale(1.0 / pv, M.data() + static_cast<std::size_t>(k) * m, m);
      kernels::scale(1.0 / pv, inv.data() + static_cast<std::size_t>(k) * m, m);
      for (std::int32_t i = 0; i < m; ++i) {
        if (i == k) continue;
        const double f = M[static_cast<std::size_t>(i) * m + k];
        if (f == 0.0) continue;
        kernels::axpy(-f, M.data() + static_cast<std::size_t>(k) * m,
                      M.data() + static_cast<std::size_t>(i) * m, m);
        kernels::axpy(-f, inv.data() + static_cast<std::size_t>(k) * m,
                      inv.data() + static_cast<std::size_t>(i) * m, m);
      }
    }
    return true;
  }

  // Gauss-Jordan update of B^-1 for entering column with FTRAN result w,
  // pivot row r
  void update_binv(std::int32_t r, const std::vector<double>& wcol) {
    double* rowr = binv.data() + static_cast<std::size_t>(r) * m;
    const double piv = wcol[r];
    kernels::scale(1.0 / piv, rowr, m);
    for (std::int32_t i = 0; i < m; ++i) {
      if (i == r) continue;
      const double f = wcol[i];
      if (f == 0.0) continue;
      kernels::axpy(-f, rowr, binv.data() + static_cast<std::size_t>(i) * m, m);
    }
  }

  // ---- feasibility bookkeeping --------------------------------------------

  double infeasibility() const {
    double total = 0.0;
    for (std::int32_t i = 0; i < m; ++i) {
      const std::int32_t j = basic[i];
      if (xb[i] > ub[j]) total += xb[i] - ub[j];
      else if (xb[i] < lb[j]) total += lb[j] - xb[i];
    }
    return total;
  }

  // phase-1 cost of basis row i given current xb
  double phase1_cost(std::int32_t i) const {
    const std::int32_t j = basic[i];
    if (xb[i] > ub[j] + opts.tol_feas) return 1.0;
    if (xb[i] < lb[j] - opts.tol_feas) return -1.0;
    return 0.0;
  }

  // ---- pivoting ----------------------------------------------------------

  struct Ratio {
    double step = kInf;
    std::int32_t row = -1;     // basis row of the blocking variable, -1 = entering's own bound
    double to_bound = 0.0;     // bound value the blocking basic lands on
    bool to_upper = false;
  };

  // ratio test along direction dir for entering column q with FTRAN w.
  // In phase 1 infeasible basics moving toward feasibility block at the
  // bound they violate; ones moving away never block (their worsening is
  // priced into the phase-1 reduced cost).
  Ratio ratio_test(std::int32_t q, double dir, bool phase1, bool bland) {
    Ratio best;
    // entering variable's own opposite bound
    if (std::isfinite(lb[q]) && std::isfinite(ub[q])) best.step = ub[q] - lb[q];
    double best_piv = 0.0;
    for (std::int32_t i = 0; i < m; ++i) {
      const double wi = w[i];
      if (std::fabs(wi) <= opts.tol_pivot) continue;
      const std::int32_t j = basic[i];
      const double delta = -dir * wi;  // basic moves at this rate
      const bool below = phase1 && xb[i] < lb[j] - opts.tol_feas;
      const bool above = phase1 && xb[i] > ub[j] + opts.tol_feas;
      double bound, step;
      bool to_upper;
      if (delta > 0) {
        if (above) continue;  // moving further above its upper bound
        if (below) {
          bound = lb[j];
          to_upper = false;
        } else {
          if (!std::isfinite(ub[j])) continue;
          bound = ub[j];
          to_upper = true;
        }
        step = (bound - xb[i]) / delta;
      } else {
        if (below) continue;  // moving further below its lower bound
        if (above) {
          bound = ub[j];
          to_upper = true;
        } else {
          if (!std::isfinite(lb[j])) continue;
          bound = lb[j];
          to_upper = false;
        }
        step = (bound - xb[i]) / delta;
      }
      if (step < 0) step = 0;  // degenerate: already at/past the bound
      const double piv = std::fabs(wi);
      bool take = false;
      if (step < best.step - kStepEps) take = true;
      else if (step <= best.step + kStepEps) {
        if (bland) take = best.row < 0 || (best.row >= 0 && basic[i] < basic[best.row]);
        else take = piv > best_piv;
      }
      if (take) {
        best.step = std::min(step, best.step);
        best.row = i;
        best.to_bound = bound;
        best.to_upper = to_upper;
        best_piv = piv;
      }
    }
    return best;
  }

  void apply_step(std::int32_t q, double dir, double step) {
    if (step != 0.0)
      kernels::axpy(-dir * step, w.data(), xb.data(), m);
    xn[q] += dir * step;
  }

  // pivot q into the basis at row r; w must hold FTRAN(q)
  void pivot(std::int32_t q, std::int32_t r, double entering_value, double to_bound,
             bool to_upper) {
    const std::int32_t leaving = basic[r];
    status[leaving] = to_upper ? kAtUpper : kAtLower;
    if (lb[leaving] == ub[leaving]) status[leaving] = kAtLower;
    xn[leaving] = to_bound;
    basic_pos[leaving] = -1;
    basic[r] = q;
    basic_pos[q] = r;
    status[q] = kBasic;
    xb[r] = entering_value;
    update_binv(r, w);
  }

  // ---- phase 1 -----------------------------------------------------------

  LpStatus run_phase1(bool& bland, std::int64_t& stall) {
    std::vector<double> y1, d1;
    while (true) {
      double infeas = infeasibility();
      if (infeas <= opts.tol_feas) return LpStatus::optimal;
      if (iters >= opts.max_iterations) return LpStatus::iteration_limit;

      c1.resize(m);
      for (std::int32_t i = 0; i < m; ++i) c1[i] = phase1_cost(i);
      compute_duals(c1.data(), y1);

      // price: d1_j = -y1'A_j for nonbasic j (phase-1 cost of nonbasic is 0)
      std::int32_t q = -1;
      double qdir = 0.0, best_score = opts.tol_dual;
      for (std::int32_t j = 0; j < N; ++j) {
        if (status[j] == kBasic || lb[j] == ub[j]) continue;
        const double dj = -col_dot(y1.data(), j);
        double score = 0.0;
        double dirj = 0.0;
        if (status[j] == kAtLower || status[j] == kFree) {
          if (dj < -opts.tol_dual) { score = -dj; dirj = 1.0; }
        }
        if (score == 0.0 && (status[j] == kAtUpper || status[j] == kFree)) {
          if (dj > opts.tol_dual) { score = dj; dirj = -1.0; }
        }
        if (dirj == 0.0) continue;
        if (bland) { q = j; qdir = dirj; break; }
        if (score > best_score) { best_score = score; q = j; qdir = dirj; }
      }
      if (q < 0) return LpStatus::infeasible;  // no improving column, infeasibility remains

      ftran_column(q, w);
      Ratio rt = ratio_test(q, qdir, /*phase1=*/true, bland);
      if (!std::isfinite(rt.step)) return LpStatus::numerical_error;

      if (rt.step <= kStepEps) {
        if (++stall > stall_limit()) bland = true;
      } else {
        stall = 0;
      }

      const double entering_value = xn[q] + qdir * rt.step;
      apply_step(q, qdir, rt.step);
      if (rt.row < 0) {
        status[q] = qdir > 0 ? kAtUpper : kAtLower;
      } else {
        pivot(q, rt.row, entering_value, rt.to_bound, rt.to_upper);
      }
      ++iters;
      ++phase1_iters;
    }
  }

  // ---- phase 2 -----------------------------------------------------------

  void compute_phase2_duals() {
    std::vector<double> cb(m);
    for (std::int32_t i = 0; i < m; ++i) cb[i] = cost[basic[i]];
    compute_duals(cb.data(), y);
    d.resize(N);
    for (std::int32_t j = 0; j < N; ++j)
      d[j] = status[j] == kBasic ? 0.0 : cost[j] - col_dot(y.data(), j);
  }

  LpStatus run_phase2(bool& bland, std::int64_t& stall) {
    compute_phase2_duals();
    std::int64_t since_refresh = 0;
    bool duals_fresh = true;
    while (true) {
      if (iters >= opts.max_iterations) return LpStatus::iteration_limit;

      std::int32_t q = -1;
      double qdir = 0.0, best_score = opts.tol_dual;
      for (std::int32_t j = 0; j < N; ++j) {
        if (status[j] == kBasic || lb[j] == ub[j]) continue;
        const double dj = d[j];
        double score = 0.0, dirj = 0.0;
        if ((status[j] == kAtLower || status[j] == kFree) && dj < -opts.tol_dual) {
          score = -dj;
          dirj = 1.0;
        } else if ((status[j] == kAtUpper || status[j] == kFree) && dj > opts.tol_dual) {
          score = dj;
          dirj = -1.0;
        }
        if (dirj == 0.0) continue;
        if (bland) { q = j; qdir = dirj; break; }
        if (score > best_score) { best_score = score; q = j; qdir = dirj; }
      }
      if (q < 0) {
        // drifted incremental duals could hide a violation: confirm on a
        // fresh recompute before declaring optimality
        if (duals_fresh) return LpStatus::optimal;
        compute_phase2_duals();
        duals_fresh = true;
        continue;
      }
      duals_fresh = false;

      ftran_column(q, w);
      Ratio rt = ratio_test(q, qdir, /*phase1=*/false, bland);
      if (!std::isfinite(rt.step)) return LpStatus::unbounded;

      if (rt.step <= kStepEps) {
        if (++stall > stall_limit()) bland = true;
      } else {
        stall = 0;
        if (bland) bland = false;  // resume Dantzig once progress is made
      }

      const double entering_value = xn[q] + qdir * rt.step;
      apply_step(q, qdir, rt.step);
      if (rt.row < 0) {
        status[q] = qdir > 0 ? kAtUpper : kAtLower;
      } else {
        // dual update uses the pivot row of the pre-update inverse
        rho.assign(binv.data() + static_cast<std::size_t>(rt.row) * m,
                   binv.data() + static_cast<std::size_t>(rt.row + 1) * m);
        const double alpha = w[rt.row];
        const double beta = d[q] / alpha;
        const std::int32_t leaving = basic[rt.row];
        pivot(q, rt.row, entering_value, rt.to_bound, rt.to_upper);
        if (beta != 0.0) {
          kernels::axpy(beta, rho.data(), y.data(), m);
          for (std::int32_t j = 0; j < N; ++j) {
            if (status[j] == kBasic) continue;
            d[j] -= beta * col_dot(rho.data(), j);
          }
        }
        d[q] = 0.0;
        d[leaving] = -beta;
      }
      ++iters;
      if (++since_refresh >= 4000) {  // guard against slow drift on long runs
        compute_phase2_duals();
        duals_fresh = true;
        since_refresh = 0;
      }
    }
  }

  std::int64_t stall_limit() const {
    return opts.bland_after_stall > 0 ? opts.bland_after_stall : 2 * (m + N);
  }

  // ---- driver ------------------------------------------------------------

  LpSolution finalize(const LinearProgram& lp, LpStatus st) {
    LpSolution sol;
    sol.status = st;
    sol.iterations = iters;
    sol.phase1_iterations = phase1_iters;
    if (st != LpStatus::optimal && st != LpStatus::unbounded) {
      if (st == LpStatus::infeasible) {
        sol.x.assign(n, 0.0);
        for (std::int32_t j = 0; j < n; ++j)
          sol.x[j] = status[j] == kBasic ? xb[basic_pos[j]] : xn[j];
      }
      return sol;
    }
    compute_xb();
    compute_phase2_duals();
    sol.x.resize(n);
    for (std::int32_t j = 0; j < n; ++j)
      sol.x[j] = status[j] == kBasic ? xb[basic_pos[j]] : xn[j];
    sol.y = y;
    sol.d.assign(d.begin(), d.begin() + n);
    double obj = 0.0;
    for (std::int32_t j = 0; j < n; ++j) obj += lp.var(j).cost * sol.x[j];
    sol.objective = obj;
    return sol;
  }

  LpSolution drive(const LinearProgram& lp) {
    iters = 0;
    phase1_iters = 0;
    if (m == 0) return solve_unconstrained(lp);
    bool bland = false;
    std::int64_t stall = 0;
    // up to two repair rounds: reinvert and retry on residual trouble
    for (int attempt = 0; attempt < 3; ++attempt) {
      LpStatus st = run_phase1(bland, stall);
      if (st == LpStatus::optimal) st = run_phase2(bland, stall);
      if (st == LpStatus::infeasible || st == LpStatus::unbounded ||
          st == LpStatus::iteration_limit) {
        return finalize(lp, st);
      }
      if (st == LpStatus::optimal) {
        compute_xb();
        if (residual_ok()) return finalize(lp, LpStatus::optimal);
      }
      if (!reinvert()) return finalize(lp, LpStatus::numerical_error);
      compute_xb();
    }
    return finalize(lp, LpStatus::numerical_error);
  }

  bool residual_ok() {
    // bound violation of recomputed basics; row residuals are zero by
    // construction of x_B
    for (std::int32_t i = 0; i < m; ++i) {
      const std::int32_t j = basic[i];
      if (xb[i] > ub[j] + 20 * opts.tol_feas) return false;
      if (xb[i] < lb[j] - 20 * opts.tol_feas) return false;
    }
    return true;
  }

  LpSolution solve_unconstrained(const LinearProgram& lp) {
    LpSolution sol;
    sol.x.resize(n);
    sol.d.resize(n);
    double obj = 0.0;
    for (std::int32_t j = 0; j < n; ++j) {
      const auto& v = lp.var(j);
      double val;
      if (v.cost > 0) {
        if (!std::isfinite(v.lb)) { sol.status = LpStatus::unbounded; return sol; }
        val = v.lb;
      } else if (v.cost < 0) {
        if (!std::isfinite(v.ub)) { sol.status = LpStatus::unbounded; return sol; }
        val = v.ub;
      } else {
        val = std::isfinite(v.lb) ? v.lb : (std::isfinite(v.ub) ? v.ub : 0.0);
      }
      sol.x[j] = val;
      sol.d[j] = v.cost;
      obj += v.cost * val;
    }
    sol.status = LpStatus::optimal;
    sol.objective = obj;
    return sol;
  }
};

SimplexSolver::SimplexSolver(SolverOptions opts) : impl_(std::make_unique<Impl>()) {
  impl_->opts = opts;
}
SimplexSolver::~SimplexSolver() = default;
SimplexSolver::SimplexSolver(SimplexSolver&&) noexcept = default;
SimplexSolver& SimplexSolver::operator=(SimplexSolver&&) noexcept = default;

const SolverOptions& SimplexSolver::options() const { return impl_->opts; }
SolverOptions& SimplexSolver::options() { return impl_->opts; }

LpSolution SimplexSolver::solve(const LinearProgram& lp) {
  const std::string err = lp.validate();
  if (!err.empty()) throw std::invalid_argument("malformed LP: " + err);
  impl_->load(lp);
  impl_->slack_basis();
  return impl_->drive(lp);
}

LpSolution SimplexSolver::resolve(const LinearProgram& lp) {
  if (!impl_->have_basis || !impl_->same_structure(lp)) return solve(lp);
  impl_->refresh_bounds(lp);
  impl_->rebind_nonbasic();
  return impl_->drive(lp);
}

LpSolution solve_lp(const LinearProgram& lp, SolverOptions opts) {
  SimplexSolver solver(opts);
  return solver.solve(lp);
}

}  // namespace dsim
