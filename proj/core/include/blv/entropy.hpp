#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "blv/bl.hpp"
#include "blv/model.hpp"
#include "blv/quotient.hpp"

namespace blv {

// Throws unless f is a probability density for mu: nonnegative with
// integral 1 within tol.
void validate_density(const Model& m, std::span<const double> f, double tol = 1e-12);

// Rescales a nonnegative, not identically zero function into a density.
std::vector<double> make_density(const Model& m, std::span<const double> raw);

// Ent(f) = int f log f dmu, with 0 log 0 = 0. Requires a density.
double entropy(const Model& m, std::span<const double> f);

// J(f) = E(f, log f). Requires a strictly positive density.
double fisher_information(const Model& m, std::span<const double> f);

// Ent(f) - sum_i c_i Ent_i(f_i), where f_i is the conditional density of f
// under map i and Ent_i uses the block measure. Nonnegative when the edge
// criterion holds for c.
double entropy_gap(const Model& m, std::span<const FactorMap> maps, const ExponentVector& c,
                   std::span<const double> f);

// J(f) - sum_i c_i J_i(f_i), with J_i the Fisher information of the
// conditional density in the quotient model (maps must commute with the
// kernel). Nonnegative when the edge criterion holds for c. Requires a
// strictly positive density.
double fisher_gap(const Model& m, std::span<const FactorMap> maps, const ExponentVector& c,
                  std::span<const double> f);

// Variational bound: for every H,
//   E(f, H) <= J(f) + int f e^{-H} L(e^H) dmu,
// with equality at H = log f. Returns the slack (>= 0). Reversible models
// only; strictly positive density.
double dual_fisher_gap(const Model& m, std::span<const double> f, std::span<const double> H);

// | Ent(f) - Ent(P_T f) - int_0^T J(P_t f) dt |, the defect in the entropy
// production identity. Analytically zero for reversible ergodic models;
// computed with adaptive Simpson at the given tolerance. Strictly positive
// density required.
double debruijn_residual(const Model& m, std::span<const double> f, double t_max,
                         double quad_tol = 1e-8);

struct ConsistencyReport {
  bool criterion_pass = false;     // exact edge criterion for c
  double product_min_gap = 0.0;    // most negative stationary gap observed
  double entropy_min_gap = 0.0;    // most negative entropy gap observed
  bool product_violation = false;  // product side dipped below -tolerance
  bool entropy_violation = false;  // entropy side dipped below -tolerance
  bool consistent = false;
};

// Cross-checks the two manifestations of the edge criterion: the stationary
// product inequality and entropy superadditivity. When the criterion holds,
// both random suites must stay nonnegative; when it fails, adversarial
// searches on both sides must exhibit violations.
ConsistencyReport superadditivity_consistency(const Model& m, std::span<const FactorMap> maps,
                                              const ExponentVector& c, int trials, int restarts,
                                              std::uint64_t seed, double tolerance = 1e-10);

}  // namespace blv
