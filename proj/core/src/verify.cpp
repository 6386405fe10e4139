#include "blv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace blv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_inputs(const Model& m, std::span<const FactorMap> maps, const ExponentVector& c,
                     const TestFamily* family) {
  if (c.size() != static_cast<int>(maps.size()))
    throw std::invalid_argument("exponent vector does not match the number of maps");
  for (const auto& map : maps)
    if (map.labeling.size() != static_cast<std::size_t>(m.size()))
      throw std::invalid_argument("factor map '" + map.name + "' does not match the model");
  if (!family) return;
  if (family->f.size() != maps.size())
    throw std::invalid_argument("family has " + std::to_string(family->f.size()) +
                                " members, expected " + std::to_string(maps.size()));
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (family->f[i].size() != static_cast<std::size_t>(maps[i].n_blocks))
      throw std::invalid_argument("family member " + std::to_string(i) + " has length " +
                                  std::to_string(family->f[i].size()) + ", map '" + maps[i].name +
                                  "' has " + std::to_string(maps[i].n_blocks) + " blocks");
    for (double v : family->f[i])
      if (!(v >= 0.0))
        throw std::invalid_argument("family member " + std::to_string(i) +
                                    " has a negative or NaN entry");
  }
}

void require_ergodic(const Model& m) {
  if (!m.ergodic())
    throw std::invalid_argument("model is not ergodic: stationary comparisons are undefined");
}

// prod_i f_i(T_i x)^{c_i} as a state function, with 0^0 = 1.
std::vector<double> product_function(const Model& m, std::span<const FactorMap> maps,
                                     std::span<const double> cd, const TestFamily& family) {
  std::vector<double> g(m.size(), 1.0);
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (cd[i] == 0.0) continue;
    for (int x = 0; x < m.size(); ++x)
      g[x] *= std::pow(family.f[i][maps[i].labeling[x]], cd[i]);
  }
  return g;
}

double block_mean(const FactorMap& map, std::span<const double> f) {
  double s = 0.0;
  for (int b = 0; b < map.n_blocks; ++b) s += map.block_measure_d[b] * f[b];
  return s;
}

}  // namespace

TestFamily lognormal_family(std::span<const FactorMap> maps, Rng& rng, double sigma) {
  TestFamily fam;
  fam.f.resize(maps.size());
  for (std::size_t i = 0; i < maps.size(); ++i) {
    fam.f[i].resize(maps[i].n_blocks);
    for (int b = 0; b < maps[i].n_blocks; ++b) fam.f[i][b] = std::exp(sigma * rng.normal());
  }
  return fam;
}

void normalize_family(std::span<const FactorMap> maps, TestFamily& family) {
  for (std::size_t i = 0; i < maps.size() && i < family.f.size(); ++i) {
    double mean = block_mean(maps[i], family.f[i]);
    if (mean <= 0.0) continue;
    for (double& v : family.f[i]) v /= mean;
  }
}

double global_gap(const Model& m, std::span<const FactorMap> maps, const ExponentVector& c,
                  const TestFamily& family) {
  validate_inputs(m, maps, c, &family);
  require_ergodic(m);

  std::vector<double> cd = c.doubles();
  std::vector<double> g = product_function(m, maps, cd, family);
  double lhs = 0.0;
  for (int x = 0; x < m.size(); ++x) lhs += m.mu_d(x) * g[x];

  double log_rhs = 0.0;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (cd[i] == 0.0) continue;
    double mean = block_mean(maps[i], family.f[i]);
    if (mean == 0.0) return kInf;  // f_i vanishes identically; both sides are 0
    log_rhs += cd[i] * std::log(mean);
  }
  if (lhs == 0.0) return kInf;
  return log_rhs - std::log(lhs);
}

std::vector<double> local_gap_profile(const Model& m, std::span<const FactorMap> maps,
                                      const ExponentVector& c, const TestFamily& family,
                                      double t) {
  validate_inputs(m, maps, c, &family);
  if (!(t >= 0.0)) throw std::invalid_argument("local gap needs t >= 0");

  std::vector<double> cd = c.doubles();
  std::vector<double> lhs = semigroup_apply(m, t, product_function(m, maps, cd, family));

  std::vector<std::vector<double>> rhs(maps.size());
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (cd[i] == 0.0) continue;
    rhs[i] = semigroup_apply(m, t, lift_block_function(maps[i], family.f[i]));
  }

  std::vector<double> gap(m.size());
  for (int x = 0; x < m.size(); ++x) {
    if (lhs[x] == 0.0) {
      gap[x] = kInf;  // left side vanishes, the inequality is trivially true
      continue;
    }
    double log_rhs = 0.0;
    for (std::size_t i = 0; i < maps.size(); ++i) {
      if (cd[i] == 0.0) continue;
      log_rhs += cd[i] * std::log(rhs[i][x]);
    }
    gap[x] = log_rhs - std::log(lhs[x]);
  }
  return gap;
}

double local_gap(const Model& m, std::span<const FactorMap> maps, const ExponentVector& c,
                 const TestFamily& family, double t, int x) {
  if (x < 0 || x >= m.size()) throw std::invalid_argument("local gap: state out of range");
  return local_gap_profile(m, maps, c, family, t)[x];
}

std::vector<std::vector<double>> interpolation_profile(const Model& m,
                                                       std::span<const FactorMap> maps,
                                                       const ExponentVector& c,
                                                       const TestFamily& family, double t,
                                                       int grid) {
  validate_inputs(m, maps, c, &family);
  if (!(t >= 0.0)) throw std::invalid_argument("interpolation profile needs t >= 0");
  if (grid < 2) throw std::invalid_argument("interpolation profile needs at least 2 grid points");
  for (std::size_t i = 0; i < maps.size(); ++i)
    for (double v : family.f[i])
      if (!(v > 0.0))
        throw std::invalid_argument("interpolation profile needs strictly positive families");

  std::vector<double> cd = c.doubles();
  std::vector<std::vector<double>> lifted(maps.size());
  for (std::size_t i = 0; i < maps.size(); ++i)
    lifted[i] = lift_block_function(maps[i], family.f[i]);

  std::vector<std::vector<double>> alpha(grid);
  for (int j = 0; j < grid; ++j) {
    double s = t * j / (grid - 1);
    std::vector<double> log_h(m.size(), 0.0);
    for (std::size_t i = 0; i < maps.size(); ++i) {
      if (cd[i] == 0.0) continue;
      std::vector<double> u = semigroup_apply(m, t - s, lifted[i]);
      for (int x = 0; x < m.size(); ++x) log_h[x] += cd[i] * std::log(u[x]);
    }
    std::vector<double> h(m.size());
    for (int x = 0; x < m.size(); ++x) h[x] = std::exp(log_h[x]);
    alpha[j] = semigroup_apply(m, s, h);
  }
  return alpha;
}

namespace {

struct RestartOutcome {
  double gap = kInf;
  TestFamily family;
};

// Block-coordinate ascent on lhs = int prod_i f_i(T_i .)^{c_i} dmu over
// unit-mean nonnegative families. Holding the other members fixed, the
// optimal f_i against the conditional weights w(b) = E[prod_{j!=i} .. ; T_i = b]
// has a closed form: proportional to (w/mu_i)^{1/(1-c_i)} for c_i < 1, and a
// point mass on argmax w/mu_i for c_i = 1 (the objective is then linear).
// Every sweep increases lhs, so a handful of sweeps converges.
RestartOutcome run_ascent(const Model& m, std::span<const FactorMap> maps,
                          std::span<const double> cd, Rng rng) {
  const int n_maps = static_cast<int>(maps.size());
  TestFamily fam;
  fam.f.resize(n_maps);
  for (int i = 0; i < n_maps; ++i) {
    fam.f[i].resize(maps[i].n_blocks);
    for (int b = 0; b < maps[i].n_blocks; ++b) fam.f[i][b] = std::exp(rng.normal());
  }
  normalize_family(maps, fam);

  const int sweeps = 60;
  RestartOutcome best;

  std::vector<double> g(m.size());
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (int i = 0; i < n_maps; ++i) {
      if (cd[i] == 0.0) continue;

      // Conditional weights of the other members on the blocks of map i.
      std::fill(g.begin(), g.end(), 1.0);
      for (int j = 0; j < n_maps; ++j) {
        if (j == i || cd[j] == 0.0) continue;
        for (int x = 0; x < m.size(); ++x)
          g[x] *= std::pow(fam.f[j][maps[j].labeling[x]], cd[j]);
      }
      std::vector<double> w(maps[i].n_blocks, 0.0);
      for (int x = 0; x < m.size(); ++x) w[maps[i].labeling[x]] += m.mu_d(x) * g[x];
      if (*std::max_element(w.begin(), w.end()) <= 0.0) continue;

      if (cd[i] >= 1.0) {
        int arg = 0;
        double ratio = -kInf;
        for (int b = 0; b < maps[i].n_blocks; ++b) {
          double r = w[b] / maps[i].block_measure_d[b];
          if (r > ratio) {
            ratio = r;
            arg = b;
          }
        }
        std::fill(fam.f[i].begin(), fam.f[i].end(), 0.0);
        fam.f[i][arg] = 1.0 / maps[i].block_measure_d[arg];
      } else {
        const double power = 1.0 / (1.0 - cd[i]);
        double scale = 0.0;
        for (int b = 0; b < maps[i].n_blocks; ++b)
          scale = std::max(scale, w[b] / maps[i].block_measure_d[b]);
        double mean = 0.0;
        for (int b = 0; b < maps[i].n_blocks; ++b) {
          fam.f[i][b] = std::pow(w[b] / (maps[i].block_measure_d[b] * scale), power);
          mean += maps[i].block_measure_d[b] * fam.f[i][b];
        }
        for (double& v : fam.f[i]) v /= mean;
      }
    }

    std::fill(g.begin(), g.end(), 1.0);
    for (int i = 0; i < n_maps; ++i) {
      if (cd[i] == 0.0) continue;
      for (int x = 0; x < m.size(); ++x)
        g[x] *= std::pow(fam.f[i][maps[i].labeling[x]], cd[i]);
    }
    double lhs = 0.0;
    for (int x = 0; x < m.size(); ++x) lhs += m.mu_d(x) * g[x];
    if (lhs <= 0.0) break;

    // With unit-mean members the stationary gap is simply -log lhs.
    double gap_now = -std::log(lhs);
    if (gap_now < best.gap) {
      best.gap = gap_now;
      best.family = fam;
    }
  }
  if (best.family.f.empty()) best.family = fam;
  return best;
}

}  // namespace

SearchResult adversarial_search(const Model& m, std::span<const FactorMap> maps,
                                const ExponentVector& c, int restarts, std::uint64_t seed) {
  validate_inputs(m, maps, c, nullptr);
  require_ergodic(m);
  if (restarts < 1) throw std::invalid_argument("adversarial search needs at least one restart");

  std::vector<double> cd = c.doubles();
  std::vector<RestartOutcome> slots(restarts);
  parallel_for(restarts, [&](int r) {
    slots[r] = run_ascent(m, maps, cd, Rng::for_trial(seed, static_cast<std::uint64_t>(r)));
  });

  SearchResult out;
  out.gap = kInf;
  for (int r = 0; r < restarts; ++r)
    if (slots[r].gap < out.gap) {
      out.gap = slots[r].gap;
      out.family = slots[r].family;
      out.restart = r;
    }
  // Report the exact stationary gap of the winning family.
  out.gap = global_gap(m, maps, c, out.family);
  return out;
}

TrialReport random_trial_suite(const Model& m, std::span<const FactorMap> maps,
                               const ExponentVector& c, int trials, std::uint64_t seed,
                               double tolerance, double mono_slack) {
  validate_inputs(m, maps, c, nullptr);
  require_ergodic(m);
  if (trials < 0) throw std::invalid_argument("trial count must be >= 0");
  if (!(tolerance >= 0.0)) throw std::invalid_argument("tolerance must be >= 0");
  if (trials == 0) {
    TrialReport empty;
    empty.seed = seed;
    return empty;  // nothing sampled: zero gaps, zero violations
  }

  struct Slot {
    double global = kInf;
    double local = kInf;
    double defect = -kInf;
  };
  std::vector<Slot> slots(trials);

  parallel_for(trials, [&](int tr) {
    Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(tr));
    TestFamily fam = lognormal_family(maps, rng);
    Slot& s = slots[tr];
    s.global = global_gap(m, maps, c, fam);
    auto lg = local_gap_profile(m, maps, c, fam, 1.0);
    s.local = *std::min_element(lg.begin(), lg.end());
    auto alpha = interpolation_profile(m, maps, c, fam, 2.0, 11);
    s.defect = -kInf;
    for (std::size_t j = 0; j + 1 < alpha.size(); ++j)
      for (int x = 0; x < m.size(); ++x)
        s.defect = std::max(s.defect, alpha[j + 1][x] - alpha[j][x]);
  });

  TrialReport rep;
  rep.trials = trials;
  rep.seed = seed;
  rep.min_global_gap = kInf;
  rep.min_local_gap = kInf;
  rep.max_monotonicity_defect = -kInf;
  int worst_trial = 0;
  for (int tr = 0; tr < trials; ++tr) {
    const Slot& s = slots[tr];
    if (s.global < rep.min_global_gap) {
      rep.min_global_gap = s.global;
      worst_trial = tr;
    }
    rep.min_local_gap = std::min(rep.min_local_gap, s.local);
    rep.max_monotonicity_defect = std::max(rep.max_monotonicity_defect, s.defect);
    if (s.global < -tolerance || s.local < -tolerance || s.defect > mono_slack)
      ++rep.n_violations;
  }
  Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(worst_trial));
  rep.worst_family = lognormal_family(maps, rng);
  return rep;
}

}  // namespace blv
