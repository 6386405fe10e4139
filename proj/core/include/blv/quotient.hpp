#pragma once

#include <span>
#include <string>
#include <vector>

#include "blv/model.hpp"

namespace blv {

// Surjective map T from model states onto blocks 0..n_blocks-1, together
// with the pushforward measure mu_T. labeling[x] is the block of state x.
struct FactorMap {
  std::string name;
  std::vector<int> labeling;
  int n_blocks = 0;
  std::vector<std::string> block_labels;
  std::vector<Rational> block_measure;     // mu_T(b) = sum of mu over the fiber
  std::vector<double> block_measure_d;
};

// Validates the labeling (range, surjectivity onto 0..max) and computes the
// pushforward of mu. Blocks of measure zero are rejected.
FactorMap make_factor_map(const Model& m, std::string name, std::vector<int> labeling,
                          std::vector<std::string> block_labels = {});

struct CommutationReport {
  bool commutes = true;
  // When commutes is false: states x, y in the same block whose one-step
  // probabilities into block `block` differ (p_x vs p_y).
  int x = -1, y = -1, block = -1;
  Rational p_x, p_y;
};

// T intertwines the semigroup with a quotient semigroup exactly when the
// one-step probability into each block is constant on every fiber of T;
// this checks that condition edge-exactly.
CommutationReport check_commutation(const Model& m, const FactorMap& map);

// Quotient model on the blocks: K_T(b, c) = sum_{T(y)=c} K(x, y) for any x
// with T(x) = b. Requires check_commutation to pass.
Model quotient_model(const Model& m, const FactorMap& map);

// Density of the pushforward of f mu under T with respect to mu_T, i.e. the
// mu-average of f over each fiber. Input must be a probability density for
// mu: nonnegative with integral 1 (doubles: within 1e-12).
std::vector<double> conditional_density(const Model& m, const FactorMap& map,
                                        std::span<const double> f);
std::vector<Rational> conditional_density(const Model& m, const FactorMap& map,
                                          std::span<const Rational> f);

// g on blocks -> g(T(x)) on states.
std::vector<double> lift_block_function(const FactorMap& map, std::span<const double> g);
std::vector<Rational> lift_block_function(const FactorMap& map, std::span<const Rational> g);

}  // namespace blv
