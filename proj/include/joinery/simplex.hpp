#pragma once

#include <vector>

#include "joinery/rational.hpp"

namespace joinery {

// maximize objective . x  subject to  rows x = rhs, x >= 0.
// Redundant equality rows are fine (two-phase handles them).
struct LinearProgram {
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<Rational> objective;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Rational value;
  std::vector<Rational> x;  // a vertex of the feasible polytope
  long pivots = 0;
};

// Exact two-phase simplex, Bland's rule throughout (no cycling).
LpSolution solve_simplex(const LinearProgram& lp);

// Brute-force oracle: enumerates basic feasible solutions. Guarded; only for
// tiny instances. Infeasible/unbounded detection is out of scope here, the
// joining polytopes it is used on are bounded and nonempty.
LpSolution maximize_by_vertex_enumeration(const LinearProgram& lp,
                                          long max_bases = 200'000);

}  // namespace joinery
