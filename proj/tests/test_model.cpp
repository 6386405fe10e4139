#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "blv/model.hpp"
#include "blv/parallel.hpp"
#include "blv/zoo.hpp"
#include "oracles.hpp"

using blv::Model;
using blv::Rational;

namespace {

Model flip_chain() {
  return Model::from_dense({"a", "b"}, {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}});
}

// Birth-death chain with a non-uniform invariant measure (1/4, 1/2, 1/4).
Model birth_death() {
  using blv::frac;
  return Model::from_dense({"0", "1", "2"}, {{frac(1, 2), frac(1, 2), Rational(0)},
                                             {frac(1, 4), frac(1, 2), frac(1, 4)},
                                             {Rational(0), frac(1, 2), frac(1, 2)}});
}

// Deterministic 3-cycle: ergodic but not reversible.
Model directed_cycle() {
  return Model::from_dense({"0", "1", "2"}, {{Rational(0), Rational(1), Rational(0)},
                                             {Rational(0), Rational(0), Rational(1)},
                                             {Rational(1), Rational(0), Rational(0)}});
}

std::vector<double> random_vector(blv::Rng& rng, int n) {
  std::vector<double> f(n);
  for (double& v : f) v = rng.normal();
  return f;
}

}  // namespace

TEST_SUITE_BEGIN("model");

TEST_CASE("flip chain: solved measure, reversibility, ergodicity") {
  const Model m = flip_chain();
  CHECK(m.size() == 2);
  CHECK(m.mu(0) == blv::frac(1, 2));
  CHECK(m.mu(1) == blv::frac(1, 2));
  CHECK(m.reversible());
  CHECK(m.ergodic());
  CHECK(m.kernel(0, 1) == Rational(1));
  CHECK(m.kernel(0, 0) == Rational(0));
}

TEST_CASE("birth-death chain: exact invariant solve and detailed balance") {
  const Model m = birth_death();
  CHECK(m.mu(0) == blv::frac(1, 4));
  CHECK(m.mu(1) == blv::frac(1, 2));
  CHECK(m.mu(2) == blv::frac(1, 4));
  CHECK(m.reversible());
}

TEST_CASE("directed cycle: ergodic, not reversible, uniform measure") {
  const Model m = directed_cycle();
  CHECK(m.ergodic());
  CHECK(!m.reversible());
  for (int x = 0; x < 3; ++x) CHECK(m.mu(x) == blv::frac(1, 3));
}

TEST_CASE("construction rejects invalid kernels and measures") {
  using blv::frac;
  // Row sum != 1.
  CHECK_THROWS_AS(Model::from_dense({"a", "b"}, {{frac(1, 2), frac(1, 3)},
                                                 {Rational(0), Rational(1)}}),
                  std::invalid_argument);
  // Negative entry.
  CHECK_THROWS_AS(Model::from_dense({"a", "b"}, {{Rational(2), Rational(-1)},
                                                 {Rational(0), Rational(1)}}),
                  std::invalid_argument);
  // Non-square kernel.
  CHECK_THROWS_AS(Model::from_dense({"a", "b"}, {{Rational(1)}, {Rational(0), Rational(1)}}),
                  std::invalid_argument);
  // mu with the wrong sum.
  CHECK_THROWS_AS(Model::from_dense({"a", "b"}, {{Rational(0), Rational(1)},
                                                 {Rational(1), Rational(0)}},
                                    std::vector<Rational>{frac(1, 3), frac(1, 3)}),
                  std::invalid_argument);
  // mu that is not invariant.
  CHECK_THROWS_AS(Model::from_dense({"a", "b"}, {{frac(1, 2), frac(1, 2)},
                                                 {Rational(0), Rational(1)}},
                                    std::vector<Rational>{frac(1, 2), frac(1, 2)}),
                  std::invalid_argument);
  // Identity kernel: invariant measure not unique.
  CHECK_THROWS_WITH_AS(Model::from_dense({"a", "b"}, {{Rational(1), Rational(0)},
                                                      {Rational(0), Rational(1)}}),
                       doctest::Contains("not unique"), std::invalid_argument);
  // Duplicate sparse targets.
  CHECK_THROWS_AS(Model::from_rows({"a"}, {{{0, blv::frac(1, 2), 0.5},
                                            {0, blv::frac(1, 2), 0.5}}}),
                  std::invalid_argument);
}

TEST_CASE("identity kernel with explicit mu is accepted but not ergodic") {
  const Model m = Model::from_dense({"a", "b"}, {{Rational(1), Rational(0)},
                                                 {Rational(0), Rational(1)}},
                                    std::vector<Rational>{blv::frac(1, 2), blv::frac(1, 2)});
  CHECK(!m.ergodic());
  CHECK(m.reversible());
}

TEST_CASE("semigroup at t = 0 is the identity") {
  const Model m = birth_death();
  const std::vector<double> f{1.5, -2.0, 0.25};
  const auto out = blv::semigroup_apply(m, 0.0, f);
  for (int i = 0; i < 3; ++i) CHECK(out[i] == f[i]);
}

TEST_CASE("semigroup rejects negative time and wrong length") {
  const Model m = flip_chain();
  const std::vector<double> f{1.0, 2.0};
  CHECK_THROWS_AS(blv::semigroup_apply(m, -0.5, f), std::invalid_argument);
  CHECK_THROWS_AS(blv::semigroup_apply(m, 1.0, std::vector<double>{1.0}),
                  std::invalid_argument);
}

TEST_CASE("flip chain semigroup matches the closed form") {
  // Eigenvalues of L are 0 and -2: P_t f = mean + e^{-2t} (f - mean).
  const Model m = flip_chain();
  const std::vector<double> f{1.0, 0.0};
  for (double t : {0.05, 0.3, 1.0, 5.0, 50.0}) {
    const auto out = blv::semigroup_apply(m, t, f);
    const double decay = std::exp(-2.0 * t);
    CHECK(out[0] == doctest::Approx(0.5 + 0.5 * decay).epsilon(1e-13));
    CHECK(out[1] == doctest::Approx(0.5 - 0.5 * decay).epsilon(1e-13));
  }
}

TEST_CASE("semigroup agrees with an independent RK4 integration") {
  const blv::SymmetricGroup sym(3);
  const Model& m = sym.model();
  blv::Rng rng(7);
  const auto f = random_vector(rng, m.size());
  for (double t : {0.3, 0.7, 2.0}) {
    const auto series = blv::semigroup_apply(m, t, f);
    const auto ode = oracle::rk4_heat_flow(m, t, f, 4000);
    for (int x = 0; x < m.size(); ++x)
      CHECK(series[x] == doctest::Approx(ode[x]).epsilon(1e-9));
  }
}

TEST_CASE("semigroup structural properties") {
  const Model m = birth_death();
  blv::Rng rng(12);

  SUBCASE("constants are preserved") {
    const std::vector<double> c(3, 4.25);
    const auto out = blv::semigroup_apply(m, 1.7, c);
    for (double v : out) CHECK(v == doctest::Approx(4.25).epsilon(1e-14));
  }

  SUBCASE("positivity and invariance of the mean") {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> f(3);
      for (double& v : f) v = std::exp(rng.normal());
      const auto out = blv::semigroup_apply(m, 0.9, f);
      for (double v : out) CHECK(v >= 0);
      CHECK(blv::mu_integral(m, out) ==
            doctest::Approx(blv::mu_integral(m, f)).epsilon(1e-12));
    }
  }

  SUBCASE("semigroup property P_s P_t = P_{s+t}") {
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = random_vector(rng, 3);
      const double s = 5.0 * rng.uniform();
      const double t = 5.0 * rng.uniform();
      const auto two_step = blv::semigroup_apply(m, s, blv::semigroup_apply(m, t, f));
      const auto one_step = blv::semigroup_apply(m, s + t, f);
      for (int x = 0; x < 3; ++x)
        CHECK(two_step[x] == doctest::Approx(one_step[x]).epsilon(1e-10).scale(1.0));
    }
  }

  SUBCASE("ergodic long-time limit is the stationary average") {
    const std::vector<double> f{1.0, 0.0, 0.0};
    const auto out = blv::semigroup_apply(m, 200.0, f);
    for (int x = 0; x < 3; ++x) CHECK(out[x] == doctest::Approx(0.25).epsilon(1e-10));
  }
}

TEST_CASE("carre du champ on the flip chain") {
  const Model m = flip_chain();
  const std::vector<double> f{0.0, 1.0};
  const auto gamma = blv::carre_du_champ(m, f, f);
  CHECK(gamma[0] == doctest::Approx(0.5));
  CHECK(gamma[1] == doctest::Approx(0.5));
  CHECK(blv::dirichlet_form(m, f, f) == doctest::Approx(0.5));

  const std::vector<Rational> fr{Rational(0), Rational(1)};
  const auto gr = blv::carre_du_champ(m, fr, fr);
  CHECK(gr[0] == blv::frac(1, 2));
  CHECK(blv::dirichlet_form(m, fr, fr) == blv::frac(1, 2));
}

TEST_CASE("carre du champ identity against the generator expansion") {
  // Gamma(f,g) = 1/2 (L(fg) - f Lg - g Lf), exact in rationals.
  const Model m = birth_death();
  blv::Rng rng(55);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Rational> f(3), g(3), fg(3);
    for (int i = 0; i < 3; ++i) {
      f[i] = blv::frac(rng.uniform_int(21) - 10, 1 + rng.uniform_int(6));
      g[i] = blv::frac(rng.uniform_int(21) - 10, 1 + rng.uniform_int(6));
      fg[i] = f[i] * g[i];
    }
    const auto gamma = blv::carre_du_champ(m, f, g);
    for (int x = 0; x < 3; ++x) {
      Rational lfg(0), lf(0), lg(0);
      for (const auto& e : m.row(x)) {
        lfg += e.p * (fg[e.to] - fg[x]);
        lf += e.p * (f[e.to] - f[x]);
        lg += e.p * (g[e.to] - g[x]);
      }
      const Rational rhs = (lfg - f[x] * lg - g[x] * lf) / 2;
      CHECK(gamma[x] == rhs);
    }
  }
}

TEST_CASE("dirichlet form symmetry and positivity") {
  const Model m = birth_death();
  blv::Rng rng(91);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_vector(rng, 3);
    const auto g = random_vector(rng, 3);
    CHECK(blv::dirichlet_form(m, f, g) ==
          doctest::Approx(blv::dirichlet_form(m, g, f)).epsilon(1e-12).scale(1.0));
    CHECK(blv::dirichlet_form(m, f, f) >= 0.0);
    const auto gamma = blv::carre_du_champ(m, f, f);
    for (double v : gamma) CHECK(v >= 0.0);
  }
}

TEST_CASE("reversible dirichlet form equals minus the generator pairing") {
  const Model m = birth_death();
  REQUIRE(m.reversible());
  blv::Rng rng(18);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_vector(rng, 3);
    const auto g = random_vector(rng, 3);
    const auto lg = blv::apply_generator(m, g);
    double pairing = 0;
    for (int x = 0; x < 3; ++x) pairing += m.mu_d(x) * f[x] * lg[x];
    CHECK(blv::dirichlet_form(m, f, g) ==
          doctest::Approx(-pairing).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("generator pairing differs from the dirichlet form when not reversible") {
  // On the directed cycle E(f,g) is still defined through Gamma, but it no
  // longer matches -int f Lg; pin one concrete discrepancy.
  const Model m = directed_cycle();
  const std::vector<double> f{1.0, 0.0, 0.0};
  const std::vector<double> g{0.0, 1.0, 0.0};
  const auto lg = blv::apply_generator(m, g);
  double pairing = 0;
  for (int x = 0; x < 3; ++x) pairing += m.mu_d(x) * f[x] * lg[x];
  const double gamma_form = blv::dirichlet_form(m, f, g);
  CHECK(std::abs(gamma_form - (-pairing)) > 0.1);
}

TEST_CASE("mu_integral in both scalar modes") {
  const Model m = birth_death();
  const std::vector<double> f{4.0, 1.0, 0.0};
  CHECK(blv::mu_integral(m, f) == doctest::Approx(1.5));
  const std::vector<Rational> fr{Rational(4), Rational(1), Rational(0)};
  CHECK(blv::mu_integral(m, fr) == blv::frac(3, 2));
}

TEST_SUITE_END();
