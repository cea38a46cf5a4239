#pragma once
// Bounded-variable revised simplex with a dense basis inverse.
//
// Rows a'x in [lb,ub] get a slack column (coefficient -1, bounds [lb,ub]),
// so the working system is A z = 0 with all data in the bounds. Phase 1
// minimizes the total bound violation of the basic variables; phase 2 runs
// Dantzig pricing with incremental dual updates and falls back to Bland's
// rule after a degenerate stall. Duals are read from the final basis.
//
// A solver instance can be reused across solves of LPs that share the same
// rows/columns/sparsity (only bounds and costs changed); the basis carries
// over, which is what makes rolling-window re-solves cheap.

#include <memory>

#include "dsim/lp.hpp"

namespace dsim {

class SimplexSolver {
 public:
  explicit SimplexSolver(SolverOptions opts = {});
  ~SimplexSolver();
  SimplexSolver(SimplexSolver&&) noexcept;
  SimplexSolver& operator=(SimplexSolver&&) noexcept;

  // Cold solve: starts from the all-slack basis.
  LpSolution solve(const LinearProgram& lp);

  // Warm solve: keeps the basis from the previous solve. The LP must have
  // the same dimensions and sparsity pattern; bounds and costs may differ.
  // Falls back to a cold solve when no compatible basis is available.
  LpSolution resolve(const LinearProgram& lp);

  const SolverOptions& options() const;
  SolverOptions& options();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// one-shot convenience wrapper
LpSolution solve_lp(const LinearProgram& lp, SolverOptions opts = {});

}  // namespace dsim
