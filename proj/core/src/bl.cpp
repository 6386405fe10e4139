#include "blv/bl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "blv/simplex.hpp"

namespace blv {

ExponentVector::ExponentVector(std::vector<Rational> c) : c_(std::move(c)) {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] < 0 || c_[i] > 1)
      throw std::invalid_argument("exponent " + std::to_string(i) + " = " + to_string(c_[i]) +
                                  " is outside [0, 1]");
}

ExponentVector ExponentVector::constant(int m, const Rational& v) {
  return ExponentVector(std::vector<Rational>(m, v));
}

std::vector<double> ExponentVector::doubles() const {
  std::vector<double> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = to_double(c_[i]);
  return out;
}

EdgeConstraintSystem edge_active_sets(const Model& m, std::span<const FactorMap> maps) {
  if (maps.size() > 64) throw std::invalid_argument("at most 64 factor maps are supported");
  for (const auto& map : maps) {
    if (map.labeling.size() != static_cast<std::size_t>(m.size()))
      throw std::invalid_argument("factor map '" + map.name + "' does not match the model");
    // The edge criterion only certifies the inequality for maps that
    // intertwine the semigroup with a quotient semigroup.
    const auto rep = check_commutation(m, map);
    if (!rep.commutes)
      throw std::invalid_argument("factor map '" + map.name +
                                  "' does not commute with the kernel (states " +
                                  std::to_string(rep.x) + " and " + std::to_string(rep.y) +
                                  " disagree on block " + std::to_string(rep.block) + ")");
  }

  EdgeConstraintSystem sys;
  sys.n_maps = static_cast<int>(maps.size());

  std::set<std::pair<int, int>> seen;
  for (int x = 0; x < m.size(); ++x)
    for (const auto& e : m.row(x)) {
      if (e.to == x) continue;
      int a = std::min(x, e.to), b = std::max(x, e.to);
      if (!seen.insert({a, b}).second) continue;
      std::uint64_t mask = 0;
      for (int i = 0; i < sys.n_maps; ++i)
        if (maps[i].labeling[a] != maps[i].labeling[b]) mask |= std::uint64_t{1} << i;
      sys.edges.push_back({a, b, mask});
    }

  std::map<std::uint64_t, std::pair<int, int>> distinct;
  for (const auto& e : sys.edges) distinct.try_emplace(e.active, e.x, e.y);
  for (const auto& [mask, witness] : distinct)
    sys.distinct_sets.push_back({mask, witness.first, witness.second});
  return sys;
}

CriterionVerdict check_edge_criterion(const EdgeConstraintSystem& sys, const ExponentVector& c) {
  if (c.size() != sys.n_maps)
    throw std::invalid_argument("exponent vector has " + std::to_string(c.size()) +
                                " entries, system has " + std::to_string(sys.n_maps) + " maps");
  CriterionVerdict verdict;
  verdict.max_sum = Rational(0);
  bool first = true;
  for (const auto& set : sys.distinct_sets) {
    Rational sum(0);
    for (int i = 0; i < sys.n_maps; ++i)
      if (set.mask >> i & 1) sum += c[i];
    if (first || sum > verdict.max_sum) {
      first = false;
      verdict.max_sum = sum;
      verdict.witness_mask = set.mask;
      verdict.witness_x = set.witness_x;
      verdict.witness_y = set.witness_y;
    }
  }
  verdict.pass = verdict.max_sum <= 1;
  return verdict;
}

OptimizeResult optimize_exponents(const EdgeConstraintSystem& sys,
                                  std::span<const Rational> weights) {
  const int n = sys.n_maps;
  if (weights.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("weights length does not match the number of maps");
  for (const auto& w : weights)
    if (w < 0) throw std::invalid_argument("weights must be nonnegative");

  LinearProgram lp;
  lp.objective.assign(weights.begin(), weights.end());
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> row(n, Rational(0));
    row[i] = 1;
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(Rational(1));
  }
  for (const auto& set : sys.distinct_sets) {
    if (set.mask == 0) continue;
    std::vector<Rational> row(n, Rational(0));
    for (int i = 0; i < n; ++i)
      if (set.mask >> i & 1) row[i] = 1;
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(Rational(1));
  }

  LpSolution sol = solve_lp(lp);
  OptimizeResult out;
  out.c = ExponentVector(sol.x);
  out.objective = sol.objective_value;
  if (!check_edge_criterion(sys, out.c).pass)
    throw std::logic_error("optimize_exponents produced an infeasible point");
  return out;
}

PointwiseReport check_bl_pointwise(const Model& m, std::span<const FactorMap> maps,
                                   const ExponentVector& c,
                                   const std::vector<std::vector<double>>& F_blocks) {
  const int n = m.size();
  const int k = static_cast<int>(maps.size());
  if (c.size() != k) throw std::invalid_argument("exponent vector does not match the maps");
  if (F_blocks.size() != static_cast<std::size_t>(k))
    throw std::invalid_argument("expected one block function per map");
  for (int i = 0; i < k; ++i)
    if (F_blocks[i].size() != static_cast<std::size_t>(maps[i].n_blocks))
      throw std::invalid_argument("block function " + std::to_string(i) + " has length " +
                                  std::to_string(F_blocks[i].size()) + ", map '" + maps[i].name +
                                  "' has " + std::to_string(maps[i].n_blocks) + " blocks");

  std::vector<double> cd = c.doubles();
  std::vector<std::vector<double>> F_states(k);
  for (int i = 0; i < k; ++i) F_states[i] = lift_block_function(maps[i], F_blocks[i]);
  std::vector<double> H(n, 0.0);
  for (int i = 0; i < k; ++i)
    for (int x = 0; x < n; ++x) H[x] += cd[i] * F_states[i][x];

  PointwiseReport rep;
  rep.residual.resize(n);
  rep.max_residual = -std::numeric_limits<double>::infinity();
  rep.argmax_state = 0;
  for (int x = 0; x < n; ++x) {
    double lhs = 0.0, rhs = 0.0;
    for (const auto& e : m.row(x)) {
      lhs += e.pd * std::expm1(H[e.to] - H[x]);
      for (int i = 0; i < k; ++i)
        rhs += cd[i] * e.pd * std::expm1(F_states[i][e.to] - F_states[i][x]);
    }
    rep.residual[x] = lhs - rhs;
    if (rep.residual[x] > rep.max_residual) {
      rep.max_residual = rep.residual[x];
      rep.argmax_state = x;
    }
  }
  return rep;
}

std::vector<std::vector<double>> ramp_family(std::span<const FactorMap> maps, int x,
                                             std::uint64_t active_mask, double theta) {
  std::vector<std::vector<double>> F(maps.size());
  for (std::size_t i = 0; i < maps.size(); ++i) {
    F[i].assign(maps[i].n_blocks, 0.0);
    if (active_mask >> i & 1) {
      if (x < 0 || x >= static_cast<int>(maps[i].labeling.size()))
        throw std::invalid_argument("ramp_family: state out of range");
      for (int b = 0; b < maps[i].n_blocks; ++b)
        if (b != maps[i].labeling[x]) F[i][b] = theta;
    }
  }
  return F;
}

PairVerdict pair_condition_check(int n, std::span<const IndexedSet> family) {
  if (n < 2) throw std::invalid_argument("pair condition needs n >= 2 coordinates");
  for (const auto& set : family) {
    if (set.indices.empty()) throw std::invalid_argument("index set must be nonempty");
    if (set.c < 0) throw std::invalid_argument("set weight must be nonnegative");
    for (int idx : set.indices)
      if (idx < 0 || idx >= n)
        throw std::invalid_argument("index " + std::to_string(idx) + " out of range");
    std::set<int> uniq(set.indices.begin(), set.indices.end());
    if (uniq.size() != set.indices.size())
      throw std::invalid_argument("index set has repeated entries");
  }

  PairVerdict verdict;
  verdict.max_sum = Rational(0);
  bool first = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rational sum(0);
      for (const auto& set : family) {
        int hits = 0;
        for (int idx : set.indices) hits += (idx == i || idx == j);
        bool counts = set.kind == SetKind::restriction ? hits >= 1 : hits == 1;
        if (counts) sum += set.c;
      }
      if (first || sum > verdict.max_sum) {
        first = false;
        verdict.max_sum = sum;
        verdict.witness_i = i;
        verdict.witness_j = j;
      }
    }
  verdict.pass = verdict.max_sum <= 1;
  return verdict;
}

SubsetExponents exponent_formulas(int n, int k) {
  if (n < 2 || k < 1 || k > n - 1)
    throw std::invalid_argument("exponent_formulas needs n >= 2 and 1 <= k <= n-1");
  SubsetExponents out;
  out.p = binomial(n, k) - binomial(n - 2, k);
  out.q = 2 * binomial(n - 2, k - 1);
  out.naive = 2 * binomial(n - 1, k - 1);
  return out;
}

}  // namespace blv
