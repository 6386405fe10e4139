#include <doctest.h>

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "blv/bl.hpp"
#include "blv/quotient.hpp"
#include "blv/zoo.hpp"
#include "oracles.hpp"

using blv::Rational;

TEST_SUITE_BEGIN("zoo");

TEST_CASE("permutation ranking is a lexicographic bijection") {
  CHECK(blv::factorial(5) == 120);
  CHECK(blv::factorial(0) == 1);
  CHECK_THROWS_AS(blv::factorial(21), std::overflow_error);

  std::vector<int> prev;
  for (long long r = 0; r < 120; ++r) {
    const auto p = blv::unrank_permutation(5, r);
    CHECK(blv::rank_permutation(p) == r);
    if (!prev.empty()) CHECK(prev < p);  // lexicographic order
    prev = p;
  }
  CHECK(blv::unrank_permutation(4, 0) == std::vector<int>{0, 1, 2, 3});
  CHECK(blv::unrank_permutation(4, 23) == std::vector<int>{3, 2, 1, 0});
}

TEST_CASE("transposition walk structure") {
  const blv::SymmetricGroup sym(3);
  const blv::Model& m = sym.model();
  REQUIRE(m.size() == 6);
  CHECK(m.label(0) == "123");
  CHECK(m.reversible());
  CHECK(m.ergodic());
  for (int x = 0; x < 6; ++x) {
    CHECK(m.mu(x) == blv::frac(1, 6));
    REQUIRE(m.row(x).size() == 3);
    for (const auto& e : m.row(x)) {
      CHECK(e.p == blv::frac(1, 3));
      CHECK(m.kernel(e.to, x) == e.p);  // symmetric kernel
    }
  }
  CHECK_THROWS_AS(blv::SymmetricGroup(1), std::invalid_argument);
  CHECK_THROWS_AS(blv::SymmetricGroup(9), std::invalid_argument);
}

TEST_CASE("walk edges multiply by a transposition on the left") {
  // y = tau x relabels two values wherever they sit.
  const blv::SymmetricGroup sym(4);
  const blv::Model& m = sym.model();
  for (int x = 0; x < m.size(); ++x) {
    const auto& px = sym.permutation(x);
    for (const auto& e : m.row(x)) {
      const auto& py = sym.permutation(e.to);
      // tau = py o px^{-1} must be a transposition of values.
      std::vector<int> tau(4);
      for (int pos = 0; pos < 4; ++pos) tau[px[pos]] = py[pos];
      int moved = 0;
      for (int v = 0; v < 4; ++v) moved += tau[v] != v;
      CHECK(moved == 2);
    }
  }
}

TEST_CASE("restriction and image block counts") {
  const blv::SymmetricGroup sym(4);
  std::array<int, 2> positions{0, 1};
  const auto restrict2 = sym.restriction_map(positions);
  CHECK(restrict2.n_blocks == 12);  // injective pairs 4*3
  const auto image2 = sym.image_map(positions);
  CHECK(image2.n_blocks == 6);  // 2-subsets of 4
  for (const auto& map : {restrict2, image2})
    CHECK(blv::check_commutation(sym.model(), map).commutes);

  // Full restriction is the identity partition.
  std::array<int, 4> all{0, 1, 2, 3};
  CHECK(sym.restriction_map(all).n_blocks == 24);
  // Full image is constant.
  CHECK(sym.image_map(all).n_blocks == 1);

  // Coordinate maps: three blocks of mass 1/3 each.
  const blv::SymmetricGroup sym3(3);
  for (const auto& map : sym3.coordinate_maps()) {
    CHECK(map.n_blocks == 3);
    for (const auto& mass : map.block_measure) CHECK(mass == blv::frac(1, 3));
  }

  CHECK_THROWS_AS(sym.restriction_map(std::vector<int>{}), std::invalid_argument);
  CHECK_THROWS_AS(sym.restriction_map(std::vector<int>{1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(sym.restriction_map(std::vector<int>{4}), std::invalid_argument);
}

TEST_CASE("count maps push the uniform measure to the sampling law") {
  const blv::SymmetricGroup sym4(4);
  std::array<int, 2> sizes{2, 2};
  const auto map = sym4.hypergeometric_map(sizes, 2);
  REQUIRE(map.n_blocks == 3);
  CHECK(blv::check_commutation(sym4.model(), map).commutes);
  // Counts (2,0), (1,1), (0,2) in block-label order.
  std::map<std::string, Rational> masses;
  for (int b = 0; b < map.n_blocks; ++b) masses[map.block_labels[b]] = map.block_measure[b];
  CHECK(masses.at("2,0") == blv::frac(1, 6));
  CHECK(masses.at("1,1") == blv::frac(4, 6));
  CHECK(masses.at("0,2") == blv::frac(1, 6));

  // Generic oracle comparison.
  const blv::SymmetricGroup sym6(6);
  std::array<int, 3> sizes3{3, 2, 1};
  const auto map6 = sym6.hypergeometric_map(sizes3, 3);
  CHECK(blv::check_commutation(sym6.model(), map6).commutes);
  for (int b = 0; b < map6.n_blocks; ++b) {
    // Parse the label back into counts.
    std::vector<int> counts;
    int cur = 0;
    for (char ch : map6.block_labels[b] + ",") {
      if (ch == ',') {
        counts.push_back(cur);
        cur = 0;
      } else {
        cur = cur * 10 + (ch - '0');
      }
    }
    CHECK(map6.block_measure[b] == oracle::hypergeometric_mass(sizes3, counts, 3));
  }

  // Single interval: the count is constant.
  std::array<int, 1> whole{4};
  CHECK(sym4.hypergeometric_map(whole, 2).n_blocks == 1);

  CHECK_THROWS_AS(sym4.hypergeometric_map(std::array<int, 2>{2, 1}, 1), std::invalid_argument);
  CHECK_THROWS_AS(sym4.hypergeometric_map(sizes, 5), std::invalid_argument);
}

TEST_CASE("swap walk on 2-subsets") {
  const blv::Slice slice(4, 2);
  const blv::Model& m = slice.model();
  REQUIRE(m.size() == 6);
  CHECK(m.reversible());
  CHECK(m.ergodic());
  for (int x = 0; x < 6; ++x) {
    CHECK(m.mu(x) == blv::frac(1, 6));
    REQUIRE(m.row(x).size() == 4);  // k(n-k) neighbors
    for (const auto& e : m.row(x)) CHECK(e.p == blv::frac(1, 4));
  }
  // Mask lookup round trip; labels read coordinate-by-coordinate.
  for (int x = 0; x < 6; ++x) {
    CHECK(slice.state_of_mask(slice.mask(x)) == x);
    const auto label = m.label(x);
    for (int j = 0; j < 4; ++j)
      CHECK(label[j] == ((slice.mask(x) >> j & 1) ? '1' : '0'));
  }
  CHECK_THROWS_AS(blv::Slice(4, 0), std::invalid_argument);
  CHECK_THROWS_AS(blv::Slice(4, 4), std::invalid_argument);

  // Coordinate maps commute; the marked-coordinate mass is k/n.
  for (int j = 0; j < 4; ++j) {
    const auto map = slice.coordinate_map(j);
    CHECK(map.n_blocks == 2);
    CHECK(blv::check_commutation(m, map).commutes);
    CHECK(map.block_measure[1] == blv::frac(1, 2));  // C(3,1)/C(4,2)
  }
  // Swap edges flip exactly two coordinates.
  const auto maps = slice.coordinate_maps();
  const auto sys = blv::edge_active_sets(m, maps);
  for (const auto& e : sys.edges) CHECK(__builtin_popcountll(e.active) == 2);
  CHECK(blv::check_edge_criterion(sys, blv::ExponentVector::constant(4, blv::frac(1, 2))).pass);
}

TEST_CASE("subset walk is the unlazy part of the quotient count walk") {
  // Quotient of the 24-state walk by the 4-interval count map vs the swap
  // walk on 2-subsets: Q = 1/3 Id + 2/3 S, matched block-by-block through
  // the labels.
  const blv::SymmetricGroup sym(4);
  std::array<int, 4> sizes{1, 1, 1, 1};
  const auto map = sym.hypergeometric_map(sizes, 2);
  const blv::Model q = blv::quotient_model(sym.model(), map);
  const blv::Slice slice(4, 2);
  REQUIRE(q.size() == 6);

  // Block label "a,b,c,d" (0/1 counts) corresponds to the slice state with
  // exactly that coordinate pattern.
  std::vector<int> to_slice(q.size());
  for (int b = 0; b < q.size(); ++b) {
    std::uint64_t mask = 0;
    int coord = 0;
    for (char ch : q.label(b))
      if (ch == '0' || ch == '1') {
        if (ch == '1') mask |= std::uint64_t{1} << coord;
        ++coord;
      }
    REQUIRE(coord == 4);
    to_slice[b] = slice.state_of_mask(mask);
    REQUIRE(to_slice[b] >= 0);
  }
  const Rational third = blv::frac(1, 3);
  for (int b = 0; b < q.size(); ++b)
    for (int c = 0; c < q.size(); ++c) {
      const Rational lazy = b == c ? third : Rational(0);
      CHECK(q.kernel(b, c) ==
            lazy + (1 - third) * slice.model().kernel(to_slice[b], to_slice[c]));
    }
}

TEST_CASE("resampling product chain") {
  const blv::Product prod({{blv::frac(1, 2), blv::frac(1, 2)},
                           {blv::frac(1, 3), blv::frac(2, 3)}});
  const blv::Model& m = prod.model();
  REQUIRE(m.size() == 4);
  CHECK(m.reversible());
  CHECK(m.ergodic());
  // Product measure, exact.
  for (int x = 0; x < 4; ++x) {
    const Rational want = (prod.coordinate_value(x, 0) == 0 ? blv::frac(1, 2) : blv::frac(1, 2)) *
                          (prod.coordinate_value(x, 1) == 0 ? blv::frac(1, 3) : blv::frac(2, 3));
    CHECK(m.mu(x) == want);
  }
  // Projections commute; coordinate-0 blocks carry mass 1/2 each.
  std::array<int, 1> c0{0};
  const auto p0 = prod.projection_map(c0);
  CHECK(p0.n_blocks == 2);
  CHECK(blv::check_commutation(m, p0).commutes);
  CHECK(p0.block_measure[0] == blv::frac(1, 2));

  CHECK_THROWS_AS(blv::Product({{Rational(1), Rational(0)}}), std::invalid_argument);
  CHECK_THROWS_AS(blv::Product({{blv::frac(1, 2), blv::frac(1, 3)}}), std::invalid_argument);
}

TEST_CASE("product-chain edges activate the maps whose subset holds the changed coordinate") {
  const blv::Product prod({{blv::frac(1, 2), blv::frac(1, 2)},
                           {blv::frac(1, 4), blv::frac(3, 4)},
                           {blv::frac(1, 3), blv::frac(1, 3), blv::frac(1, 3)}});
  std::array<int, 2> s1{0, 1};
  std::array<int, 2> s2{1, 2};
  std::array<int, 1> s3{2};
  std::vector<blv::FactorMap> maps{prod.projection_map(s1), prod.projection_map(s2),
                                   prod.projection_map(s3)};
  const auto sys = blv::edge_active_sets(prod.model(), maps);
  // Coordinate j -> bitmask of subsets containing j.
  const std::uint64_t by_coord[3] = {0b001, 0b011, 0b110};
  std::vector<std::uint64_t> expected(by_coord, by_coord + 3);
  std::vector<std::uint64_t> got;
  for (const auto& set : sys.distinct_sets) got.push_back(set.mask);
  std::sort(expected.begin(), expected.end());
  CHECK(got == expected);
  // Every edge changes exactly one coordinate.
  for (const auto& e : sys.edges) {
    int changed = 0;
    for (int j = 0; j < 3; ++j)
      changed += prod.coordinate_value(e.x, j) != prod.coordinate_value(e.y, j);
    CHECK(changed == 1);
  }
}

TEST_CASE("lazy hypercube walk") {
  const blv::Product cube = blv::hypercube(3);
  const blv::Model& m = cube.model();
  REQUIRE(m.size() == 8);
  for (int x = 0; x < 8; ++x) {
    CHECK(m.mu(x) == blv::frac(1, 8));
    CHECK(m.kernel(x, x) == blv::frac(1, 2));
    int neighbors = 0;
    for (const auto& e : m.row(x))
      if (e.to != x) {
        CHECK(e.p == blv::frac(1, 6));
        ++neighbors;
      }
    CHECK(neighbors == 3);
  }
}

TEST_CASE("group walk on Z_n") {
  SUBCASE("inverse-closed generators give a reversible walk") {
    const blv::Cayley cayley(blv::cyclic_group_table(6), {1, 5});
    const blv::Model& m = cayley.model();
    CHECK(m.size() == 6);
    CHECK(m.reversible());
    CHECK(m.ergodic());
    CHECK(cayley.identity() == 0);
    CHECK(cayley.inverse(2) == 4);
    // x -> x z^{-1}: from 0 with z = 1 we reach 5.
    CHECK(m.kernel(0, 5) == blv::frac(1, 2));
    CHECK(m.kernel(0, 1) == blv::frac(1, 2));
  }
  SUBCASE("one-sided generator set is ergodic but not reversible") {
    const blv::Cayley cayley(blv::cyclic_group_table(4), {1});
    CHECK(cayley.model().ergodic());
    CHECK(!cayley.model().reversible());
  }
  SUBCASE("non-generating sets are refused") {
    CHECK_THROWS_WITH_AS(blv::Cayley(blv::cyclic_group_table(6), {2, 4}),
                         doctest::Contains("generate"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(blv::Cayley(blv::cyclic_group_table(4), {2}),
                         doctest::Contains("generate"), std::invalid_argument);
    CHECK_THROWS_AS(blv::Cayley(blv::cyclic_group_table(4), {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(blv::Cayley(blv::cyclic_group_table(4), {}), std::invalid_argument);
  }
}

TEST_CASE("group table axioms are verified") {
  // Order-5 loop with identity and two-sided inverses in which every
  // element squares to the identity; no group of order 5 does that, so
  // associativity must fail and the constructor has to notice.
  const std::vector<std::vector<int>> loop{{0, 1, 2, 3, 4},
                                           {1, 0, 3, 4, 2},
                                           {2, 4, 0, 1, 3},
                                           {3, 2, 4, 0, 1},
                                           {4, 3, 1, 2, 0}};
  CHECK_THROWS_WITH_AS(blv::Cayley(loop, {1}), doctest::Contains("associative"),
                       std::invalid_argument);

  // Non-latin table.
  const std::vector<std::vector<int>> repeat{{0, 0}, {1, 1}};
  CHECK_THROWS_AS(blv::Cayley(repeat, {1}), std::invalid_argument);

  // Latin square whose only left identity (element 0) is not a right
  // identity, so no two-sided identity exists.
  const std::vector<std::vector<int>> no_id{{0, 1, 2}, {2, 0, 1}, {1, 2, 0}};
  CHECK_THROWS_WITH_AS(blv::Cayley(no_id, {1}), doctest::Contains("identity"),
                       std::invalid_argument);
}

TEST_CASE("homomorphism maps on cyclic groups") {
  SUBCASE("mod-2 labels on Z_4 leave both generators active") {
    const blv::Cayley cayley(blv::cyclic_group_table(4), {1, 3});
    std::vector<int> mod2{0, 1, 0, 1};
    const auto map = cayley.hom_map("mod2", mod2);
    CHECK(map.n_blocks == 2);
    CHECK(blv::check_commutation(cayley.model(), map).commutes);
    std::vector<blv::FactorMap> maps{map};
    const auto sys = blv::edge_active_sets(cayley.model(), maps);
    REQUIRE(sys.distinct_sets.size() == 1);
    CHECK(sys.distinct_sets[0].mask == 1);  // active on every generator edge
    CHECK(blv::check_edge_criterion(sys, blv::ExponentVector::constant(1, Rational(1))).pass);
  }
  SUBCASE("mod-2 and mod-3 labels on Z_6 are jointly constrained") {
    const blv::Cayley cayley(blv::cyclic_group_table(6), {1, 5});
    const auto mod2 = cayley.hom_map("mod2", {0, 1, 0, 1, 0, 1});
    const auto mod3 = cayley.hom_map("mod3", {0, 1, 2, 0, 1, 2});
    std::vector<blv::FactorMap> maps{mod2, mod3};
    const auto sys = blv::edge_active_sets(cayley.model(), maps);
    REQUIRE(sys.distinct_sets.size() == 1);
    CHECK(sys.distinct_sets[0].mask == 0b11);  // both maps move on each generator
    CHECK(blv::check_edge_criterion(sys, blv::ExponentVector::constant(2, blv::frac(1, 2))).pass);
    CHECK(!blv::check_edge_criterion(
               sys, blv::ExponentVector({blv::frac(2, 3), blv::frac(1, 2)}))
               .pass);
  }
  SUBCASE("trivial labels give empty active sets") {
    const blv::Cayley cayley(blv::cyclic_group_table(4), {1, 3});
    const auto map = cayley.hom_map("trivial", {0, 0, 0, 0});
    std::vector<blv::FactorMap> maps{map};
    const auto sys = blv::edge_active_sets(cayley.model(), maps);
    REQUIRE(sys.distinct_sets.size() == 1);
    CHECK(sys.distinct_sets[0].mask == 0);
  }
  SUBCASE("labelings that do not factor through a quotient are refused") {
    const blv::Cayley cayley(blv::cyclic_group_table(4), {1, 3});
    CHECK_THROWS_WITH_AS(cayley.hom_map("bad", {0, 0, 1, 2}),
                         doctest::Contains("quotient"), std::invalid_argument);
  }
}

TEST_SUITE_END();
