#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "blv/model.hpp"
#include "blv/quotient.hpp"

namespace blv {

// Exact n! for 0 <= n <= 20; throws std::overflow_error beyond that.
long long factorial(int n);

// Lexicographic rank/unrank of permutations of {0, .., n-1}.
std::vector<int> unrank_permutation(int n, long long r);
long long rank_permutation(std::span<const int> perm);

// Random transposition walk on the symmetric group: from x, pick an
// unordered pair of values {a, b} uniformly and relabel a <-> b, i.e. move
// to tau x with tau the transposition. Uniform invariant measure,
// reversible. States are permutations in lexicographic order; labels are
// one-line words with 1-based values.
class SymmetricGroup {
 public:
  explicit SymmetricGroup(int n);  // 2 <= n <= 8

  int n() const { return n_; }
  const Model& model() const { return model_; }
  const std::vector<int>& permutation(int state) const { return perms_[state]; }

  // x -> (x(i))_{i in positions}: the word restricted to the given
  // positions (0-based, strictly increasing).
  FactorMap restriction_map(std::span<const int> positions) const;

  // x -> {x(i)}_{i in positions}: the unordered set of values.
  FactorMap image_map(std::span<const int> positions) const;

  // Restrictions to each single position.
  std::vector<FactorMap> coordinate_maps() const;

  // Positions are partitioned into consecutive intervals of the given
  // sizes; the map counts, per interval, how many positions hold one of
  // the K smallest values. The pushforward of the uniform measure is the
  // multivariate hypergeometric law.
  FactorMap hypergeometric_map(std::span<const int> interval_sizes, int K) const;

 private:
  int n_;
  Model model_;
  std::vector<std::vector<int>> perms_;
};

// Nearest-neighbor walk on k-subsets of n coordinates (bit vectors with k
// ones): move one 1 to a uniformly chosen empty position, each of the
// k(n-k) moves with equal probability. Uniform invariant measure.
class Slice {
 public:
  Slice(int n, int k);  // 1 <= k <= n-1, n <= 60, C(n,k) <= 50000

  int n() const { return n_; }
  int k() const { return k_; }
  const Model& model() const { return model_; }
  std::uint64_t mask(int state) const { return masks_[state]; }
  int state_of_mask(std::uint64_t mask) const;

  FactorMap coordinate_map(int position) const;
  std::vector<FactorMap> coordinate_maps() const;

 private:
  int state_of_mask_unchecked(std::uint64_t mask) const;

  int n_, k_;
  Model model_;
  std::vector<std::uint64_t> masks_;
};

// Product chain: pick a coordinate uniformly, resample it from its factor
// law nu_j. Invariant measure is the product of the factors; reversible.
class Product {
 public:
  // factors[j] = nu_j, strictly positive, exact sum 1.
  explicit Product(std::vector<std::vector<Rational>> factors);

  const Model& model() const { return model_; }
  int n_coordinates() const { return static_cast<int>(sizes_.size()); }
  int factor_size(int j) const { return sizes_[j]; }
  const std::vector<Rational>& factor(int j) const { return factors_[j]; }
  int coordinate_value(int state, int j) const;

  // x -> (x_j)_{j in coords}, 0-based strictly increasing coords.
  FactorMap projection_map(std::span<const int> coords) const;

 private:
  std::vector<std::vector<Rational>> factors_;
  std::vector<int> sizes_;
  Model model_;
};

// Uniform product chain on {0,1}^d: the lazy hypercube walk.
Product hypercube(int d);

// Left-invariant walk on a finite group: step x -> x z^{-1} with z drawn
// uniformly from the generating multiset S, i.e. K(x, y) = |S|^{-1} over
// the moves. Uniform invariant measure; reversible iff S is closed under
// inverses.
class Cayley {
 public:
  // table[a][b] = a*b. Full group axioms are validated (at most 512
  // elements). Generators must generate the whole group.
  Cayley(std::vector<std::vector<int>> table, std::vector<int> generators,
         std::vector<std::string> element_labels = {});

  const Model& model() const { return model_; }
  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inverse(int a) const { return inverse_[a]; }
  const std::vector<int>& generators() const { return generators_; }

  // Builds a factor map from a labeling that must factor through a group
  // quotient: the label of x*y has to be determined by the labels of x and
  // y. Label values are compacted to 0..m-1 preserving numeric order.
  FactorMap hom_map(std::string name, std::vector<int> labeling) const;

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> generators_;
  std::vector<int> inverse_;
  int identity_ = -1;
  Model model_;
};

std::vector<std::vector<int>> cyclic_group_table(int n);

}  // namespace blv
