#pragma once
// Scenario-based stochastic rolling-window dispatch. Each window solves one
// LP: the binding interval plus K scenario branches over the advisory
// intervals, all branches hanging off the single binding-interval node. The
// binding solution and every dual needed for pricing are recorded, the
// boundary state threads forward, and the window rolls.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dsim/lp.hpp"
#include "dsim/model.hpp"
#include "dsim/resource_lp.hpp"
#include "dsim/scenario.hpp"
#include "dsim/simplex.hpp"

namespace dsim {

struct WindowInfeasible : std::runtime_error {
  explicit WindowInfeasible(int t)
      : std::runtime_error("dispatch window infeasible at interval " + std::to_string(t)),
        interval(t) {}
  int interval;
};

// previous-interval state per resource, in fleet order
struct BoundaryState {
  std::vector<double> soc;
  std::vector<double> gd;
  std::vector<double> gc;

  static BoundaryState initial(const std::vector<EsrSpec>& specs);
};

struct WindowProblem {
  LinearProgram lp;
  int t0 = 0;  // binding interval, 0-based
  int L = 1;   // intervals covered (binding + advisory)
  int K = 0;   // scenario branches (0 when L == 1)
  ScenarioSet scenarios;
  BoundaryState boundary;

  std::int32_t balance_binding = -1;
  std::vector<std::vector<std::int32_t>> balance_adv;  // [k][tau-1]
  struct ResourceVars {
    NodeVars bind;
    BoundaryFold fold;
    std::int32_t soc_tr_bind = -1;
    std::vector<std::vector<NodeVars>> adv;             // [k][tau-1]
    std::vector<std::vector<std::int32_t>> soc_tr_adv;  // [k][tau-1]
    std::vector<std::vector<RampRows>> ramp_adv;        // [k][tau-1]
  };
  std::vector<ResourceVars> res;
};

// per-resource slice of a solved binding interval
struct ResourceRecord {
  double gd = 0.0, gc = 0.0, soc = 0.0;
  double phi = 0.0;  // SOC transition dual
  // boundary ramp duals and capacity duals at the binding interval
  // (folded bound duals, attributed to the strictly tighter limit)
  double mu_up_d = 0, mu_lo_d = 0, mu_up_c = 0, mu_lo_c = 0;
  double rho_up_d = 0, rho_lo_d = 0, rho_up_c = 0, rho_lo_c = 0;
  // binding-interval SOC limit duals
  double delta_up = 0, delta_lo = 0;
  // first-advisory-step ramp duals per scenario
  std::vector<double> mu_up_d_next, mu_lo_d_next, mu_up_c_next, mu_lo_c_next;
  // advisory SOC-limit duals, scenario-major then step
  std::vector<double> adv_delta_up, adv_delta_lo;
  // primal slacks for the price-reduction test
  double slack_ramp_boundary = kInf;  // ramp sides of the folded bounds, d and c
  double slack_ramp_first = kInf;     // first-step rows over all scenarios
  double slack_soc = kInf;            // SOC bound slack over binding + advisory
  double simultaneous = 0.0;          // gd * gc
};

struct BindingRecord {
  int t = 0;
  double demand = 0.0;
  double lambda = 0.0;     // balance dual
  double objective = 0.0;  // window objective value
  std::vector<ResourceRecord> res;
  std::int64_t iterations = 0;
};

struct DispatchTrace {
  std::vector<BindingRecord> records;
  std::vector<double> demand;
  std::int64_t simultaneity_violations = 0;
  std::int64_t solver_iterations = 0;
};

struct RollOptions {
  int n_windows = -1;  // default: one window per demand interval
  SolverOptions solver;
  double kkt_check_scale = 10.0;  // windows are verified to scale*tolerances
};

// Build the window LP for binding interval t0. Scenario paths must agree
// with the realized demand in their first component. Throws WindowInfeasible
// when boundary ramp limits leave an empty dispatch range, and
// std::invalid_argument on a corrupt boundary (SOC outside limits).
WindowProblem build_window(const std::vector<EsrSpec>& specs, int t0,
                           const BoundaryState& boundary, const ScenarioSet& scenarios);

// Rewrite demands/boundary of a structurally identical window in place
// (keeps the solver basis valid for warm re-solves).
void update_window(WindowProblem& wp, int t0, const BoundaryState& boundary,
                   const ScenarioSet& scenarios);

// Solve and extract the binding interval. Verifies the stationarity
// identities and KKT residuals before returning.
BindingRecord solve_window(WindowProblem& wp, SimplexSolver& solver,
                           const std::vector<EsrSpec>& specs, const RollOptions& opts);

DispatchTrace roll_horizon(const Fleet& fleet, const std::vector<double>& demand_path,
                           ForecastProvider& forecasts, RollOptions opts = {});

// trace CSV: one row per (t, resource) with dispatch, SOC and the balance
// dual; harness adds trial and price columns
std::string trace_csv(const DispatchTrace& trace, const std::vector<EsrSpec>& specs);

}  // namespace dsim
