#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blv/rational.hpp"

namespace blv {

struct KernelEntry {
  int to;      // target state
  Rational p;  // exact transition probability, > 0
  double pd;   // cached double value of p
};

// Finite Markov model: a row-stochastic kernel K on a finite state space,
// an invariant probability measure mu, and the jump generator L = K - Id.
//
// Kernel entries and mu are exact rationals; double caches back the
// floating-point operators. States are indexed 0..size()-1 and carry
// display labels.
class Model {
 public:
  // Empty placeholder; real models come from the factories below.
  Model() = default;

  // kernel[x][y] = K(x, y); rows must sum to 1 exactly. If mu is absent it
  // is computed exactly from mu K = mu, sum mu = 1 (requires a unique
  // solution and size() <= 512); if present it is validated exactly.
  static Model from_dense(std::vector<std::string> labels,
                          const std::vector<std::vector<Rational>>& kernel,
                          std::optional<std::vector<Rational>> mu = std::nullopt);

  // Sparse variant: rows[x] lists the nonzero transitions out of x.
  static Model from_rows(std::vector<std::string> labels,
                         std::vector<std::vector<KernelEntry>> rows,
                         std::optional<std::vector<Rational>> mu = std::nullopt);

  int size() const { return static_cast<int>(rows_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int x) const { return labels_[x]; }

  // Nonzero transitions out of x, sorted by target index.
  const std::vector<KernelEntry>& row(int x) const { return rows_[x]; }
  // K(x, y), zero when there is no edge.
  Rational kernel(int x, int y) const;

  const std::vector<Rational>& mu() const { return mu_; }
  const Rational& mu(int x) const { return mu_[x]; }
  double mu_d(int x) const { return mu_d_[x]; }
  const std::vector<double>& mu_doubles() const { return mu_d_; }

  // mu(x) K(x,y) == mu(y) K(y,x) for all pairs (checked exactly).
  bool reversible() const { return reversible_; }
  // Kernel graph strongly connected; guarantees a unique invariant measure
  // and convergence of the semigroup to the mu-average.
  bool ergodic() const { return ergodic_; }

 private:
  void finalize(std::optional<std::vector<Rational>> mu);

  std::vector<std::string> labels_;
  std::vector<std::vector<KernelEntry>> rows_;
  std::vector<Rational> mu_;
  std::vector<double> mu_d_;
  bool reversible_ = false;
  bool ergodic_ = false;
};

// (K f)(x) = sum_y K(x,y) f(y).
std::vector<double> apply_kernel(const Model& m, std::span<const double> f);

// (L f)(x) = (K f)(x) - f(x).
std::vector<double> apply_generator(const Model& m, std::span<const double> f);

// P_t f = e^{-t} sum_k t^k/k! K^k f, truncated where the Poisson tail
// drops below 1e-14. Exact at t = 0.
std::vector<double> semigroup_apply(const Model& m, double t, std::span<const double> f);

// Gamma(f,g)(x) = 1/2 sum_y K(x,y) (f(y)-f(x)) (g(y)-g(x)).
std::vector<double> carre_du_champ(const Model& m, std::span<const double> f,
                                   std::span<const double> g);
std::vector<Rational> carre_du_champ(const Model& m, std::span<const Rational> f,
                                     std::span<const Rational> g);

// E(f,g) = integral of Gamma(f,g) against mu.
double dirichlet_form(const Model& m, std::span<const double> f, std::span<const double> g);
Rational dirichlet_form(const Model& m, std::span<const Rational> f, std::span<const Rational> g);

double mu_integral(const Model& m, std::span<const double> f);
Rational mu_integral(const Model& m, std::span<const Rational> f);

}  // namespace blv
