#include "blv/simplex.hpp"

#include <stdexcept>

namespace blv {

LpSolution solve_lp(const LinearProgram& lp) {
  const int m = static_cast<int>(lp.rows.size());
  const int n = static_cast<int>(lp.objective.size());
  if (lp.rhs.size() != static_cast<std::size_t>(m))
    throw std::invalid_argument("lp: rhs length mismatch");
  for (const auto& row : lp.rows)
    if (row.size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("lp: row length mismatch");
  for (const auto& b : lp.rhs)
    if (b < 0) throw std::invalid_argument("lp: rhs must be nonnegative");

  // Tableau: m constraint rows then the objective row; columns are the n
  // structural variables, m slacks, and the right-hand side.
  const int cols = n + m + 1;
  std::vector<std::vector<Rational>> t(m + 1, std::vector<Rational>(cols, Rational(0)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = lp.rows[i][j];
    t[i][n + i] = 1;
    t[i][cols - 1] = lp.rhs[i];
  }
  for (int j = 0; j < n; ++j) t[m][j] = -lp.objective[j];

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  for (;;) {
    // Bland: entering variable is the lowest-index column with a negative
    // reduced cost.
    int enter = -1;
    for (int j = 0; j < n + m; ++j)
      if (t[m][j] < 0) {
        enter = j;
        break;
      }
    if (enter < 0) break;

    // Leaving row: minimum ratio, ties broken by the smallest basic index.
    int leave = -1;
    Rational best_ratio;
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][cols - 1] / t[i][enter];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) throw std::runtime_error("lp: unbounded objective");

    Rational pivot = t[leave][enter];
    for (int j = 0; j < cols; ++j) t[leave][j] /= pivot;
    for (int i = 0; i <= m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational factor = t[i][enter];
      for (int j = 0; j < cols; ++j) t[i][j] -= factor * t[leave][j];
    }
    basis[leave] = enter;
  }

  LpSolution sol;
  sol.x.assign(n, Rational(0));
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) sol.x[basis[i]] = t[i][cols - 1];
  sol.objective_value = t[m][cols - 1];
  return sol;
}

}  // namespace blv
