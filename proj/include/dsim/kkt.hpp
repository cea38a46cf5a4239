#pragma once
// Independent optimality verification for a solved LP: recomputes primal
// residuals, dual feasibility, complementary slackness and stationarity
// directly from the LP data, without trusting solver internals.

#include "dsim/lp.hpp"

namespace dsim {

struct KktReport {
  double max_primal_infeasibility = 0.0;  // row + bound violation
  double max_dual_infeasibility = 0.0;    // wrong-signed dual / reduced cost
  double max_complementarity = 0.0;       // |dual| * slack products
  double max_stationarity = 0.0;          // |c_j - y'A_j - d_j|
  double duality_gap = 0.0;               // |primal obj - dual obj|

  bool within(double tol_feas, double tol_dual, double tol_kkt) const {
    return max_primal_infeasibility <= tol_feas && max_dual_infeasibility <= tol_dual &&
           max_complementarity <= tol_kkt && max_stationarity <= tol_kkt &&
           duality_gap <= tol_kkt;
  }
};

// sol must be an optimal solution of lp
KktReport kkt_residuals(const LinearProgram& lp, const LpSolution& sol);

}  // namespace dsim
