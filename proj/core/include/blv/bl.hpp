#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "blv/model.hpp"
#include "blv/quotient.hpp"

namespace blv {

// Exponents c_i in [0, 1], one per factor map, validated on construction.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::vector<Rational> c);
  static ExponentVector constant(int m, const Rational& v);

  int size() const { return static_cast<int>(c_.size()); }
  const Rational& operator[](int i) const { return c_[i]; }
  const std::vector<Rational>& values() const { return c_; }
  std::vector<double> doubles() const;

 private:
  std::vector<Rational> c_;
};

// Undirected kernel edge {x, y} (x < y) with the bitmask of maps that
// separate its endpoints: bit i set iff T_i(x) != T_i(y).
struct Edge {
  int x, y;
  std::uint64_t active;
};

struct ActiveSet {
  std::uint64_t mask;
  int witness_x, witness_y;  // one edge realizing this mask
};

struct EdgeConstraintSystem {
  int n_maps = 0;
  std::vector<Edge> edges;
  std::vector<ActiveSet> distinct_sets;  // deduplicated, sorted by mask
};

// Enumerates kernel edges and their active map sets. At most 64 maps, each
// of which must commute with the kernel (see check_commutation).
EdgeConstraintSystem edge_active_sets(const Model& m, std::span<const FactorMap> maps);

struct CriterionVerdict {
  bool pass = true;
  // Worst active set: the mask, a witness edge, and sum_{i in mask} c_i.
  std::uint64_t witness_mask = 0;
  int witness_x = -1, witness_y = -1;
  Rational max_sum;  // pass iff max_sum <= 1
};

// Exact check of: for every kernel edge, the exponents of the maps that
// separate its endpoints sum to at most 1.
CriterionVerdict check_edge_criterion(const EdgeConstraintSystem& sys, const ExponentVector& c);

struct OptimizeResult {
  ExponentVector c;
  Rational objective;  // weights . c at the optimum
};

// Maximizes weights . c over 0 <= c_i <= 1 subject to the per-active-set
// sum constraints; exact rational LP. The optimum is re-verified against
// check_edge_criterion before being returned.
OptimizeResult optimize_exponents(const EdgeConstraintSystem& sys,
                                  std::span<const Rational> weights);

struct PointwiseReport {
  double max_residual;  // max over states x of lhs(x) - rhs(x); <= 0 means the
                        // generator-level condition holds
  int argmax_state;
  std::vector<double> residual;
};

// Generator-level condition for H = sum_i c_i F_i(T_i .):
//   sum_y K(x,y) (e^{H(y)-H(x)} - 1)
//     <= sum_i c_i sum_y K(x,y) (e^{F_i(T_i y)-F_i(T_i x)} - 1).
// F_blocks[i] is F_i as a function on the blocks of maps[i].
PointwiseReport check_bl_pointwise(const Model& m, std::span<const FactorMap> maps,
                                   const ExponentVector& c,
                                   const std::vector<std::vector<double>>& F_blocks);

// Falsifier family for a violated edge criterion: F_i(b) = theta for blocks
// other than T_i(x) and 0 at T_i(x), for each i in active_mask; other maps
// get the zero function.
std::vector<std::vector<double>> ramp_family(std::span<const FactorMap> maps, int x,
                                             std::uint64_t active_mask, double theta);

// Families of index subsets of {0, .., n-1} with weights, used by the
// pairwise degree condition below.
enum class SetKind { restriction, image };

struct IndexedSet {
  std::vector<int> indices;
  SetKind kind;
  Rational c;
};

struct PairVerdict {
  bool pass = true;
  int witness_i = -1, witness_j = -1;  // worst pair
  Rational max_sum;                    // pass iff max_sum <= 1
};

// For every pair {i, j}: restriction sets contribute c when they meet the
// pair at all, image sets only when they contain exactly one of i, j. The
// total must not exceed 1.
PairVerdict pair_condition_check(int n, std::span<const IndexedSet> family);

struct SubsetExponents {
  long long p;      // optimal exponent reciprocal for the family of all
                    // k-subset restrictions
  long long q;      // same for k-subset images
  long long naive;  // suboptimal product-type constant for comparison
};

// Closed forms: p = C(n,k) - C(n-2,k), q = 2 C(n-2,k-1), naive = 2 C(n-1,k-1).
SubsetExponents exponent_formulas(int n, int k);

}  // namespace blv
