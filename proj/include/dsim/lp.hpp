#pragma once
// Linear programs in bounded-variable form. Every variable and every row
// carries a symbolic tag so dual values can be retrieved by name after a
// solve. Rows are two-sided: lb <= a'x <= ub, with lb == ub for equalities.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace dsim {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Symbolic tag: a small enum plus up to three indices (resource, interval,
// scenario). Cheap to store per row/column; rendered as text only for dumps.
struct Tag {
  enum Kind : std::uint8_t {
    none = 0,
    balance,    // balance[t] or balance[t,k]
    soc_tr,     // soc_tr[i,t] or soc_tr[i,t,k]
    ramp_d,     // ramp_d[i,t,k] advisory-step row
    ramp_c,
    cap_d,      // variable bound tags
    cap_c,
    soc_limit,  // soc_limit[i,t,k]
    generic,
  };
  Kind kind = none;
  std::int32_t i = -1;  // resource
  std::int32_t t = -1;  // interval
  std::int32_t k = -1;  // scenario (-1 = binding interval)

  bool operator==(const Tag&) const = default;
  std::string str() const;
};

struct LpVariable {
  double lb = 0.0;
  double ub = kInf;
  double cost = 0.0;
  Tag tag;
};

struct LpRow {
  double lb = 0.0;
  double ub = 0.0;
  std::vector<std::int32_t> cols;
  std::vector<double> vals;
  Tag tag;
};

class LinearProgram {
 public:
  std::int32_t add_variable(double lb, double ub, double cost, Tag tag = {});
  // coefficient lists must use valid column indices; duplicate columns are
  // rejected by validate()
  std::int32_t add_row(double lb, double ub, std::vector<std::int32_t> cols,
                       std::vector<double> vals, Tag tag = {});

  std::size_t num_vars() const { return vars_.size(); }
  std::size_t num_rows() const { return rows_.size(); }
  const LpVariable& var(std::int32_t j) const { return vars_[j]; }
  LpVariable& var(std::int32_t j) { return vars_[j]; }
  const LpRow& row(std::int32_t r) const { return rows_[r]; }
  LpRow& row(std::int32_t r) { return rows_[r]; }
  const std::vector<LpVariable>& vars() const { return vars_; }
  const std::vector<LpRow>& rows() const { return rows_; }

  // in-place edits used by warm-started re-solves
  void set_var_bounds(std::int32_t j, double lb, double ub);
  void set_row_bounds(std::int32_t r, double lb, double ub);
  void set_cost(std::int32_t j, double cost);

  // empty string when well-formed, else a description of the first defect
  std::string validate() const;

  // human-readable dump in an LP-format-like text layout
  std::string dump() const;

 private:
  std::vector<LpVariable> vars_;
  std::vector<LpRow> rows_;
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit, numerical_error };

const char* to_string(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::numerical_error;
  double objective = 0.0;
  std::vector<double> x;        // structural values
  std::vector<double> y;        // row duals; see sign convention below
  std::vector<double> d;        // structural reduced costs
  std::int64_t iterations = 0;
  std::int64_t phase1_iterations = 0;

  // Sign convention: y[r] >= 0 when the row binds at its lower bound,
  // y[r] <= 0 when it binds at its upper bound, free for equalities.
  // The non-negative pair below matches the convention that duals of
  // inequality constraints are reported non-negative.
  double row_dual_lower(std::int32_t r) const { return y[r] > 0 ? y[r] : 0.0; }
  double row_dual_upper(std::int32_t r) const { return y[r] < 0 ? -y[r] : 0.0; }
  // same pairing for variable bounds, from reduced costs
  double bound_dual_lower(std::int32_t j) const { return d[j] > 0 ? d[j] : 0.0; }
  double bound_dual_upper(std::int32_t j) const { return d[j] < 0 ? -d[j] : 0.0; }
};

struct SolverOptions {
  double tol_feas = 1e-7;   // primal feasibility
  double tol_dual = 1e-7;   // dual feasibility / pricing cutoff
  double tol_pivot = 1e-9;  // smallest acceptable pivot element
  std::int64_t max_iterations = 200000;
  int bland_after_stall = 0;  // 0 = auto (2*(m+n) degenerate steps)
};

}  // namespace dsim
