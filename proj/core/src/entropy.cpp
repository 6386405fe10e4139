#include "blv/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "blv/parallel.hpp"
#include "blv/quadrature.hpp"
#include "blv/verify.hpp"

namespace blv {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

void require_positive(std::span<const double> f, const char* what) {
  for (double v : f)
    if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be strictly positive");
}

}  // namespace

void validate_density(const Model& m, std::span<const double> f, double tol) {
  if (f.size() != static_cast<std::size_t>(m.size()))
    throw std::invalid_argument("density has length " + std::to_string(f.size()) + ", model has " +
                                std::to_string(m.size()) + " states");
  double total = 0.0;
  for (int x = 0; x < m.size(); ++x) {
    if (!(f[x] >= 0.0))
      throw std::invalid_argument("density is negative or NaN at state " + std::to_string(x));
    total += m.mu_d(x) * f[x];
  }
  if (std::fabs(total - 1.0) > tol)
    throw std::invalid_argument("density integrates to " + std::to_string(total) +
                                ", expected 1");
}

std::vector<double> make_density(const Model& m, std::span<const double> raw) {
  if (raw.size() != static_cast<std::size_t>(m.size()))
    throw std::invalid_argument("function has wrong length");
  double total = 0.0;
  for (int x = 0; x < m.size(); ++x) {
    if (!(raw[x] >= 0.0)) throw std::invalid_argument("make_density needs a nonnegative function");
    total += m.mu_d(x) * raw[x];
  }
  if (total <= 0.0) throw std::invalid_argument("make_density: function is identically zero");
  std::vector<double> f(raw.begin(), raw.end());
  for (double& v : f) v /= total;
  return f;
}

double entropy(const Model& m, std::span<const double> f) {
  validate_density(m, f);
  double s = 0.0;
  for (int x = 0; x < m.size(); ++x) s += m.mu_d(x) * xlogx(f[x]);
  return s;
}

double fisher_information(const Model& m, std::span<const double> f) {
  validate_density(m, f);
  require_positive(f, "fisher information: density");
  std::vector<double> log_f(m.size());
  for (int x = 0; x < m.size(); ++x) log_f[x] = std::log(f[x]);
  return dirichlet_form(m, f, log_f);
}

namespace {

double block_entropy(const FactorMap& map, std::span<const double> density) {
  double s = 0.0;
  for (int b = 0; b < map.n_blocks; ++b) s += map.block_measure_d[b] * xlogx(density[b]);
  return s;
}

}  // namespace

double entropy_gap(const Model& m, std::span<const FactorMap> maps, const ExponentVector& c,
                   std::span<const double> f) {
  if (c.size() != static_cast<int>(maps.size()))
    throw std::invalid_argument("exponent vector does not match the number of maps");
  double gap = entropy(m, f);
  std::vector<double> cd = c.doubles();
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (cd[i] == 0.0) continue;
    auto fi = conditional_density(m, maps[i], f);
    gap -= cd[i] * block_entropy(maps[i], fi);
  }
  return gap;
}

double fisher_gap(const Model& m, std::span<const FactorMap> maps, const ExponentVector& c,
                  std::span<const double> f) {
  if (c.size() != static_cast<int>(maps.size()))
    throw std::invalid_argument("exponent vector does not match the number of maps");
  double gap = fisher_information(m, f);
  std::vector<double> cd = c.doubles();
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (cd[i] == 0.0) continue;
    Model quotient = quotient_model(m, maps[i]);
    auto fi = conditional_density(m, maps[i], f);
    gap -= cd[i] * fisher_information(quotient, fi);
  }
  return gap;
}

double dual_fisher_gap(const Model& m, std::span<const double> f, std::span<const double> H) {
  if (!m.reversible())
    throw std::invalid_argument("dual Fisher bound requires a reversible model");
  validate_density(m, f);
  require_positive(f, "dual Fisher bound: density");
  if (H.size() != static_cast<std::size_t>(m.size()))
    throw std::invalid_argument("H has wrong length");

  double carre_term = 0.0;
  for (int x = 0; x < m.size(); ++x) {
    double acc = 0.0;
    for (const auto& e : m.row(x)) acc += e.pd * std::expm1(H[e.to] - H[x]);
    carre_term += m.mu_d(x) * f[x] * acc;
  }
  return fisher_information(m, f) + carre_term - dirichlet_form(m, f, H);
}

double debruijn_residual(const Model& m, std::span<const double> f, double t_max,
                         double quad_tol) {
  if (!m.reversible() || !m.ergodic())
    throw std::invalid_argument("entropy production identity requires a reversible ergodic model");
  validate_density(m, f);
  require_positive(f, "entropy production: density");
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");

  std::vector<double> f0(f.begin(), f.end());
  auto dissipation = [&](double t) {
    return fisher_information(m, semigroup_apply(m, t, f0));
  };
  double integral = adaptive_simpson(dissipation, 0.0, t_max, quad_tol);
  double drop = entropy(m, f0) - entropy(m, semigroup_apply(m, t_max, f0));
  return std::fabs(drop - integral);
}

namespace {

// Multiplicative descent on the entropy gap: f <- f exp(-eta (log f -
// sum_i c_i log f_i(T_i .))), renormalized each step. Returns the most
// negative gap seen.
double entropy_descent(const Model& m, std::span<const FactorMap> maps,
                       const ExponentVector& c, Rng rng) {
  const int n = m.size();
  std::vector<double> raw(n);
  for (int x = 0; x < n; ++x) raw[x] = std::exp(rng.normal());
  std::vector<double> f = make_density(m, raw);

  std::vector<double> cd = c.doubles();
  const double eta = 0.2;
  const int steps = 200;
  double best = entropy_gap(m, maps, c, f);

  for (int step = 0; step < steps; ++step) {
    std::vector<double> grad(n);
    for (int x = 0; x < n; ++x) grad[x] = std::log(f[x]);
    for (std::size_t i = 0; i < maps.size(); ++i) {
      if (cd[i] == 0.0) continue;
      auto fi = conditional_density(m, maps[i], f);
      for (int x = 0; x < n; ++x)
        grad[x] -= cd[i] * std::log(std::max(fi[maps[i].labeling[x]], 1e-300));
    }
    for (int x = 0; x < n; ++x)
      f[x] = std::max(f[x] * std::exp(-eta * grad[x]), 1e-300);
    f = make_density(m, f);
    best = std::min(best, entropy_gap(m, maps, c, f));
  }
  return best;
}

}  // namespace

ConsistencyReport superadditivity_consistency(const Model& m, std::span<const FactorMap> maps,
                                              const ExponentVector& c, int trials, int restarts,
                                              std::uint64_t seed, double tolerance) {
  if (trials < 1 || restarts < 1)
    throw std::invalid_argument("consistency check needs trials >= 1 and restarts >= 1");

  auto sys = edge_active_sets(m, maps);
  ConsistencyReport rep;
  rep.criterion_pass = check_edge_criterion(sys, c).pass;

  TrialReport product = random_trial_suite(m, maps, c, trials, seed, tolerance);
  rep.product_min_gap = product.min_global_gap;

  // Entropy side: random densities, decorrelated from the product stream.
  const std::uint64_t entropy_seed = splitmix64(seed ^ 0x5bf0f5d6a3f8c2e1ULL);
  std::vector<double> gaps(trials);
  parallel_for(trials, [&](int tr) {
    Rng rng = Rng::for_trial(entropy_seed, static_cast<std::uint64_t>(tr));
    std::vector<double> raw(m.size());
    for (int x = 0; x < m.size(); ++x) raw[x] = std::exp(rng.normal());
    gaps[tr] = entropy_gap(m, maps, c, make_density(m, raw));
  });
  rep.entropy_min_gap = *std::min_element(gaps.begin(), gaps.end());

  if (!rep.criterion_pass) {
    SearchResult search = adversarial_search(m, maps, c, restarts, seed);
    rep.product_min_gap = std::min(rep.product_min_gap, search.gap);

    std::vector<double> descents(restarts);
    parallel_for(restarts, [&](int r) {
      descents[r] = entropy_descent(m, maps, c,
                                    Rng::for_trial(entropy_seed, 1000003ULL + r));
    });
    rep.entropy_min_gap =
        std::min(rep.entropy_min_gap, *std::min_element(descents.begin(), descents.end()));
  }

  rep.product_violation = rep.product_min_gap < -tolerance;
  rep.entropy_violation = rep.entropy_min_gap < -tolerance;
  rep.consistent = rep.criterion_pass ? (!rep.product_violation && !rep.entropy_violation)
                                      : (rep.product_violation && rep.entropy_violation);
  return rep;
}

}  // namespace blv
