#pragma once
// Shared constraint blocks for a single resource. The dispatch window LP and
// the self-schedule (profit-maximization) LP are both assembled from these
// primitives so the per-resource feasible regions coincide exactly.
//
// Boundary ramp limits (from the known previous-interval dispatch) are folded
// into the variable bounds instead of forming single-variable rows; the fold
// bookkeeping is kept so bound duals can be attributed to either the ramp or
// the capacity limit afterwards.

#include <cmath>
#include <cstdint>

#include "dsim/lp.hpp"
#include "dsim/model.hpp"

namespace dsim {

struct NodeVars {
  std::int32_t gd = -1;
  std::int32_t gc = -1;
  std::int32_t e = -1;  // -1 when the resource has no tracked SOC limits
};

// fold of a boundary ramp constraint into [lb, ub] variable bounds
struct FoldedBounds {
  double lb = 0.0, ub = kInf;
  double ramp_lb = -kInf, ramp_ub = kInf;  // the ramp-implied candidate bounds
  // attribution of a bound dual between ramp (mu) and capacity (rho):
  // the strictly tighter side owns the dual; on a tie the capacity side does
  bool ub_is_ramp() const { return ramp_ub < ub || (ramp_ub == ub && false); }
};

inline FoldedBounds fold_boundary(double cap, double prev, double ramp_up,
                                  double ramp_down) {
  FoldedBounds f;
  f.ramp_lb = std::isfinite(ramp_down) ? prev - ramp_down : -kInf;
  f.ramp_ub = std::isfinite(ramp_up) ? prev + ramp_up : kInf;
  f.lb = std::max(0.0, f.ramp_lb);
  f.ub = std::min(cap, f.ramp_ub);
  return f;
}

// attribution of a non-negative bound-dual value to (mu, rho)
inline void attribute_upper(const FoldedBounds& f, double cap, double value, double& mu,
                            double& rho) {
  if (f.ramp_ub < cap) {
    mu = value;
    rho = 0.0;
  } else {  // capacity tighter, or tie: capacity carries the dual
    mu = 0.0;
    rho = value;
  }
}

inline void attribute_lower(const FoldedBounds& f, double value, double& mu, double& rho) {
  if (f.ramp_lb > 0.0) {
    mu = value;
    rho = 0.0;
  } else {  // zero floor tighter, or tie: capacity side carries the dual
    mu = 0.0;
    rho = value;
  }
}

// per-interval variables for one resource; weight scales the objective
// (scenario probability), costs are the bid coefficients for that interval
inline NodeVars add_resource_node(LinearProgram& lp, const EsrSpec& s, std::int32_t i,
                                  std::int32_t t, std::int32_t k, double weight,
                                  double cost_d, double cost_c) {
  NodeVars v;
  v.gd = lp.add_variable(0.0, s.cap_discharge, weight * cost_d,
                         Tag{Tag::cap_d, i, t, k});
  v.gc = lp.add_variable(0.0, s.cap_charge, -weight * cost_c, Tag{Tag::cap_c, i, t, k});
  if (s.has_soc())
    v.e = lp.add_variable(s.soc_min, s.soc_max, 0.0, Tag{Tag::soc_limit, i, t, k});
  return v;
}

// SOC transition into `node`: e - e_prev - eff_c*gc + gd/eff_d = 0, or with
// a numeric boundary e(t-1) on the right-hand side. Returns the row index or
// -1 when the resource carries no SOC.
inline std::int32_t link_soc(LinearProgram& lp, const EsrSpec& s, std::int32_t i,
                             std::int32_t t, std::int32_t k, const NodeVars& node,
                             std::int32_t e_prev_var, double e_boundary) {
  if (node.e < 0) return -1;
  std::vector<std::int32_t> cols{node.e, node.gc, node.gd};
  std::vector<double> vals{1.0, -s.eff_charge, 1.0 / s.eff_discharge};
  double rhs = 0.0;
  if (e_prev_var >= 0) {
    cols.push_back(e_prev_var);
    vals.push_back(-1.0);
  } else {
    rhs = e_boundary;
  }
  return lp.add_row(rhs, rhs, std::move(cols), std::move(vals), Tag{Tag::soc_tr, i, t, k});
}

// step ramp rows between consecutive interval nodes; -1 when a direction has
// no finite limit
struct RampRows {
  std::int32_t d = -1;
  std::int32_t c = -1;
};

inline RampRows link_ramp(LinearProgram& lp, const EsrSpec& s, std::int32_t i,
                          std::int32_t t, std::int32_t k, const NodeVars& from,
                          const NodeVars& to) {
  RampRows rows;
  if (std::isfinite(s.ramp_up_d) || std::isfinite(s.ramp_down_d))
    rows.d = lp.add_row(-s.ramp_down_d, s.ramp_up_d, {to.gd, from.gd}, {1.0, -1.0},
                        Tag{Tag::ramp_d, i, t, k});
  if (s.cap_charge > 0 && (std::isfinite(s.ramp_up_c) || std::isfinite(s.ramp_down_c)))
    rows.c = lp.add_row(-s.ramp_down_c, s.ramp_up_c, {to.gc, from.gc}, {1.0, -1.0},
                        Tag{Tag::ramp_c, i, t, k});
  return rows;
}

// folded boundary bounds applied to a first-interval node
struct BoundaryFold {
  FoldedBounds d, c;
};

inline BoundaryFold apply_boundary_fold(LinearProgram& lp, const EsrSpec& s,
                                        const NodeVars& node, double prev_gd,
                                        double prev_gc) {
  BoundaryFold f;
  f.d = fold_boundary(s.cap_discharge, prev_gd, s.ramp_up_d, s.ramp_down_d);
  lp.set_var_bounds(node.gd, f.d.lb, f.d.ub);
  f.c = fold_boundary(s.cap_charge, prev_gc, s.ramp_up_c, s.ramp_down_c);
  lp.set_var_bounds(node.gc, f.c.lb, f.c.ub);
  return f;
}

}  // namespace dsim
