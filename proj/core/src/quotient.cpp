#include "blv/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <type_traits>

namespace blv {

FactorMap make_factor_map(const Model& m, std::string name, std::vector<int> labeling,
                          std::vector<std::string> block_labels) {
  const int n = m.size();
  if (labeling.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("factor map '" + name + "': labeling has length " +
                                std::to_string(labeling.size()) + ", model has " +
                                std::to_string(n) + " states");
  int n_blocks = 0;
  for (int x = 0; x < n; ++x) {
    if (labeling[x] < 0)
      throw std::invalid_argument("factor map '" + name + "': negative block at state " +
                                  std::to_string(x));
    n_blocks = std::max(n_blocks, labeling[x] + 1);
  }
  std::vector<char> hit(n_blocks, 0);
  for (int b : labeling) hit[b] = 1;
  for (int b = 0; b < n_blocks; ++b)
    if (!hit[b])
      throw std::invalid_argument("factor map '" + name + "': block " + std::to_string(b) +
                                  " has no preimage");

  FactorMap map;
  map.name = std::move(name);
  map.labeling = std::move(labeling);
  map.n_blocks = n_blocks;
  map.block_measure.assign(n_blocks, Rational(0));
  for (int x = 0; x < n; ++x) map.block_measure[map.labeling[x]] += m.mu(x);
  for (int b = 0; b < n_blocks; ++b)
    if (map.block_measure[b] == 0)
      throw std::invalid_argument("factor map '" + map.name + "': block " + std::to_string(b) +
                                  " has measure zero");
  map.block_measure_d.resize(n_blocks);
  for (int b = 0; b < n_blocks; ++b) map.block_measure_d[b] = to_double(map.block_measure[b]);

  if (block_labels.empty()) {
    map.block_labels.resize(n_blocks);
    for (int b = 0; b < n_blocks; ++b) map.block_labels[b] = std::to_string(b);
  } else {
    if (block_labels.size() != static_cast<std::size_t>(n_blocks))
      throw std::invalid_argument("factor map '" + map.name + "': expected " +
                                  std::to_string(n_blocks) + " block labels");
    map.block_labels = std::move(block_labels);
  }
  return map;
}

namespace {

// One-step probabilities of x into each block, as a sorted sparse signature.
std::map<int, Rational> block_signature(const Model& m, const FactorMap& map, int x) {
  std::map<int, Rational> sig;
  for (const auto& e : m.row(x)) sig[map.labeling[e.to]] += e.p;
  return sig;
}

}  // namespace

CommutationReport check_commutation(const Model& m, const FactorMap& map) {
  std::vector<std::vector<int>> members(map.n_blocks);
  for (int x = 0; x < m.size(); ++x) members[map.labeling[x]].push_back(x);

  for (int b = 0; b < map.n_blocks; ++b) {
    const auto& fiber = members[b];
    auto ref = block_signature(m, map, fiber[0]);
    for (std::size_t i = 1; i < fiber.size(); ++i) {
      auto sig = block_signature(m, map, fiber[i]);
      if (sig == ref) continue;
      CommutationReport rep;
      rep.commutes = false;
      rep.x = fiber[0];
      rep.y = fiber[i];
      // First block where the signatures disagree.
      for (int c = 0; c < map.n_blocks; ++c) {
        Rational a = ref.count(c) ? ref.at(c) : Rational(0);
        Rational bb = sig.count(c) ? sig.at(c) : Rational(0);
        if (a != bb) {
          rep.block = c;
          rep.p_x = a;
          rep.p_y = bb;
          break;
        }
      }
      return rep;
    }
  }
  return {};
}

Model quotient_model(const Model& m, const FactorMap& map) {
  auto rep = check_commutation(m, map);
  if (!rep.commutes)
    throw std::invalid_argument("factor map '" + map.name +
                                "' does not commute with the kernel (states " +
                                std::to_string(rep.x) + " and " + std::to_string(rep.y) +
                                " disagree on block " + std::to_string(rep.block) + ")");

  std::vector<int> representative(map.n_blocks, -1);
  for (int x = 0; x < m.size(); ++x)
    if (representative[map.labeling[x]] < 0) representative[map.labeling[x]] = x;

  std::vector<std::vector<KernelEntry>> rows(map.n_blocks);
  for (int b = 0; b < map.n_blocks; ++b) {
    auto sig = block_signature(m, map, representative[b]);
    for (const auto& [c, p] : sig) rows[b].push_back({c, p, to_double(p)});
  }
  return Model::from_rows(map.block_labels, std::move(rows), map.block_measure);
}

namespace {

template <class S>
std::vector<S> conditional_density_impl(const Model& m, const FactorMap& map,
                                        std::span<const S> f) {
  const int n = m.size();
  if (f.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("density has wrong length");
  S total(0);
  for (int x = 0; x < n; ++x) {
    if (f[x] < S(0)) throw std::invalid_argument("density is negative at state " + std::to_string(x));
    if constexpr (std::is_same_v<S, double>)
      total += m.mu_d(x) * f[x];
    else
      total += m.mu(x) * f[x];
  }
  if constexpr (std::is_same_v<S, double>) {
    if (std::fabs(total - 1.0) > 1e-12)
      throw std::invalid_argument("density does not integrate to 1 (got " +
                                  std::to_string(total) + ")");
  } else {
    if (total != S(1)) throw std::invalid_argument("density does not integrate exactly to 1");
  }

  std::vector<S> mass(map.n_blocks, S(0));
  for (int x = 0; x < n; ++x) {
    if constexpr (std::is_same_v<S, double>)
      mass[map.labeling[x]] += m.mu_d(x) * f[x];
    else
      mass[map.labeling[x]] += m.mu(x) * f[x];
  }
  std::vector<S> out(map.n_blocks);
  for (int b = 0; b < map.n_blocks; ++b) {
    if constexpr (std::is_same_v<S, double>)
      out[b] = mass[b] / map.block_measure_d[b];
    else
      out[b] = mass[b] / map.block_measure[b];
  }
  return out;
}

}  // namespace

std::vector<double> conditional_density(const Model& m, const FactorMap& map,
                                        std::span<const double> f) {
  return conditional_density_impl<double>(m, map, f);
}

std::vector<Rational> conditional_density(const Model& m, const FactorMap& map,
                                          std::span<const Rational> f) {
  return conditional_density_impl<Rational>(m, map, f);
}

namespace {

template <class S>
std::vector<S> lift_impl(const FactorMap& map, std::span<const S> g) {
  if (g.size() != static_cast<std::size_t>(map.n_blocks))
    throw std::invalid_argument("block function has length " + std::to_string(g.size()) +
                                ", map has " + std::to_string(map.n_blocks) + " blocks");
  std::vector<S> out(map.labeling.size());
  for (std::size_t x = 0; x < map.labeling.size(); ++x) out[x] = g[map.labeling[x]];
  return out;
}

}  // namespace

std::vector<double> lift_block_function(const FactorMap& map, std::span<const double> g) {
  return lift_impl<double>(map, g);
}

std::vector<Rational> lift_block_function(const FactorMap& map, std::span<const Rational> g) {
  return lift_impl<Rational>(map, g);
}

}  // namespace blv
