#pragma once

#include <vector>

#include "blv/rational.hpp"

namespace blv {

struct LinearProgram {
  // maximize objective . x  subject to  rows[i] . x <= rhs[i],  x >= 0.
  std::vector<Rational> objective;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;  // must be >= 0 so the slack basis is feasible
};

struct LpSolution {
  std::vector<Rational> x;
  Rational objective_value;
};

// Exact primal simplex with Bland's rule (no cycling). Requires rhs >= 0;
// throws std::runtime_error if the program is unbounded.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace blv
