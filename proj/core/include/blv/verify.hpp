#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "blv/bl.hpp"
#include "blv/model.hpp"
#include "blv/parallel.hpp"
#include "blv/quotient.hpp"

namespace blv {

// Nonnegative test functions, one per factor map, given on that map's blocks.
struct TestFamily {
  std::vector<std::vector<double>> f;
};

// i.i.d. log-normal entries: f_i(b) = exp(sigma * N(0,1)).
TestFamily lognormal_family(std::span<const FactorMap> maps, Rng& rng, double sigma = 1.0);

// Rescales each member to unit mean against its block measure (skips
// identically zero members). Gaps are invariant under this scaling.
void normalize_family(std::span<const FactorMap> maps, TestFamily& family);

// Stationary inequality, in log scale:
//   gap = sum_i c_i log(int f_i dmu_i) - log(int prod_i f_i^{c_i}(T_i .) dmu).
// Nonnegative gap means the inequality holds for this family. Conventions:
// 0^0 = 1; +inf when the left integral vanishes (in particular when some
// f_i with c_i > 0 is identically zero). Requires an ergodic model.
double global_gap(const Model& m, std::span<const FactorMap> maps, const ExponentVector& c,
                  const TestFamily& family);

// Same ratio under the semigroup at time t, state by state:
//   gap(x) = sum_i c_i log P_t(f_i o T_i)(x) - log P_t(prod f_i^{c_i} o T_i)(x).
std::vector<double> local_gap_profile(const Model& m, std::span<const FactorMap> maps,
                                      const ExponentVector& c, const TestFamily& family,
                                      double t);
double local_gap(const Model& m, std::span<const FactorMap> maps, const ExponentVector& c,
                 const TestFamily& family, double t, int x);

// alpha_j = P_{s_j}( exp( sum_i c_i log P_{t-s_j}(f_i o T_i) ) ) on the even
// grid s_j = t j/(grid-1). Entrywise nonincreasing in j when the edge
// criterion holds. Requires a strictly positive family and grid >= 2.
std::vector<std::vector<double>> interpolation_profile(const Model& m,
                                                       std::span<const FactorMap> maps,
                                                       const ExponentVector& c,
                                                       const TestFamily& family, double t,
                                                       int grid);

struct SearchResult {
  double gap = 0.0;    // most negative stationary gap found
  TestFamily family;   // witness family achieving it
  int restart = -1;    // restart that produced the witness
};

// Multiplicative gradient ascent on the violation of the stationary
// inequality, restarted from random log-normal families. Deterministic for
// a fixed seed, independent of thread count.
SearchResult adversarial_search(const Model& m, std::span<const FactorMap> maps,
                                const ExponentVector& c, int restarts, std::uint64_t seed);

struct TrialReport {
  int trials = 0;
  int n_violations = 0;
  double min_global_gap = 0.0;
  double min_local_gap = 0.0;              // at t = 1, minimized over states
  double max_monotonicity_defect = 0.0;    // interpolation grid of 11 over [0, 2]
  TestFamily worst_family;                 // family attaining min_global_gap
  std::uint64_t seed = 0;
};

// Random log-normal families. A trial counts as a violation when its
// stationary gap or its local gap falls below -tolerance, or the
// interpolation profile increases by more than the monotonicity slack.
TrialReport random_trial_suite(const Model& m, std::span<const FactorMap> maps,
                               const ExponentVector& c, int trials, std::uint64_t seed,
                               double tolerance = 1e-10, double mono_slack = 1e-9);

}  // namespace blv
