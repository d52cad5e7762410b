#include "doctest.h"

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "symcorr/atlas.hpp"
#include "symcorr/perm.hpp"

using namespace symcorr;
using testutil::P;

TEST_SUITE("perm") {

TEST_CASE("parse accepts cycles, letters, arrays and identity") {
  CHECK(P("(1 2 3)(4 5)", 5).images() == std::vector<Point>{2, 3, 1, 5, 4});
  CHECK(P("(a,b,c)", 3) == P("(1 2 3)", 3));
  CHECK(P("[2 1 3]", 3) == P("(1 2)", 3));
  CHECK(P("()", 4).is_identity());
  CHECK(P("id", 4).is_identity());
  // Cycles in a product apply right to left.
  CHECK(P("(1 2)(2 3)", 3) == P("(1 2)", 3) * P("(2 3)", 3));
  CHECK_THROWS_AS(P("(1 2", 3), PermError);
  CHECK_THROWS_AS(P("(1 4)", 3), PermError);
  CHECK_THROWS_AS(P("(1 1)", 3), PermError);
  CHECK_THROWS_AS(P("[1 1 2]", 3), PermError);
  CHECK_THROWS_AS(P("[1 2]", 3), PermError);
}

TEST_CASE("cycle strings round-trip") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    Perm p = testutil::random_perm(1 + rng() % 12, rng);
    CHECK(Perm::parse(p.to_cycle_string(), p.degree()) == p);
  }
  CHECK(P("(3 1 2)(5 4)", 5).to_cycle_string() == "(1 2 3)(4 5)");
}

TEST_CASE("composition matches an exhaustive S3 table") {
  std::vector<std::vector<Point>> all;
  std::vector<Point> img{1, 2, 3};
  do
    all.push_back(img);
  while (std::next_permutation(img.begin(), img.end()));
  REQUIRE(all.size() == 6);
  for (const auto &p : all)
    for (const auto &q : all) {
      std::vector<Point> pq(3);
      for (int i = 0; i < 3; ++i)
        pq[i] = p[q[i] - 1];
      CHECK(compose(Perm::from_images(p), Perm::from_images(q)).images() == pq);
    }
  // (1 2 3)(1 2): 1 -> 2 -> 3, 3 -> 3 -> 1.
  CHECK(compose(P("(1 2 3)", 3), P("(1 2)", 3)) == P("(1 3)", 3));
  CHECK(compose(P("(1 2)", 2), P("(1 2)", 2)).is_identity());
  CHECK_THROWS_AS(compose(P("(1 2)", 2), P("(1 2)", 3)), PermError);
}

TEST_CASE("group laws on random permutations") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    std::size_t n = 1 + rng() % 12;
    Perm a = testutil::random_perm(n, rng), b = testutil::random_perm(n, rng),
         c = testutil::random_perm(n, rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * Perm::identity(n) == a);
    CHECK(Perm::identity(n) * a == a);
    CHECK((a * a.inverse()).is_identity());
    CHECK(commutator(a, b) == a * b * a.inverse() * b.inverse());
  }
}

TEST_CASE("orbits") {
  CHECK(orbit(PermGroup(3, {}), 1) == std::vector<Point>{1});
  CHECK(orbit(PermGroup({P("(1 2 3)", 3)}), 2) == std::vector<Point>{1, 2, 3});
  CHECK(orbit(PermGroup({P("(1 2)", 4)}), 3) == std::vector<Point>{3});
  CHECK_THROWS_AS(orbit(PermGroup({P("(1 2)", 4)}), 5), PermError);
  CHECK_THROWS_AS(orbit(PermGroup({P("(1 2)", 4)}), 0), PermError);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 2 + rng() % 11;
    // Sparse generators so intransitive groups are common.
    Perm g1 = Perm::from_cycles(n, {{1, static_cast<Point>(2 + rng() % (n - 1))}});
    Perm g2 = testutil::random_perm(n, rng);
    auto small = orbits(PermGroup({g1}));
    auto big = orbits(PermGroup({g1, g2}));
    std::vector<Point> covered;
    for (const auto &o : small)
      covered.insert(covered.end(), o.begin(), o.end());
    std::sort(covered.begin(), covered.end());
    CHECK(covered.size() == n);
    CHECK(std::adjacent_find(covered.begin(), covered.end()) == covered.end());
    // Adding a generator only merges orbits.
    for (const auto &o : small) {
      auto bo = orbit(PermGroup({g1, g2}), o.front());
      for (Point x : o)
        CHECK(std::binary_search(bo.begin(), bo.end(), x));
    }
    CHECK(big.size() <= small.size());
  }
}

TEST_CASE("group order by stabilizer chain") {
  CHECK(group_order(PermGroup({P("(1 2)", 3), P("(1 2 3)", 3)})) == 6);
  CHECK(group_order(PermGroup(5, {})) == 1);
  auto psl7 = builtin_entry("PSL(2,7):2");
  CHECK(closure_order(PermGroup(psl7.generators)) == 336);
  CHECK(group_order(PermGroup(psl7.generators)) == 336);
  auto psl11 = builtin_entry("PSL(2,11):2");
  CHECK(closure_order(PermGroup(psl11.generators)) == 1320);
  CHECK(group_order(PermGroup(psl11.generators)) == 1320);
  CHECK(group_order(PermGroup(builtin_entry("M12").generators)) == 95040);
  CHECK_THROWS_AS(closure_order(PermGroup(builtin_entry("M12").generators)), PermError);
}

TEST_CASE("chain order equals closure on random small groups") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 150; ++t) {
    std::size_t n = 2 + rng() % 6; // n <= 7, so |G| <= 5040
    std::vector<Perm> gens;
    for (std::size_t i = 0, m = 1 + rng() % 3; i < m; ++i) {
      Perm p = testutil::random_perm(n, rng);
      // Square sometimes to land in proper subgroups.
      gens.push_back(rng() % 2 ? p : p * p);
    }
    PermGroup g(gens);
    mpz_class chain = group_order(g);
    CHECK(chain == mpz_class(std::to_string(closure_order(g))));
    StabilizerChain sc(g);
    for (const auto &p : gens)
      CHECK(sc.contains(p * p.inverse() * p));
  }
}

TEST_CASE("stabilizer chain membership") {
  PermGroup a5({P("(1 2 3 4 5)", 5), P("(1 2 3)", 5)});
  StabilizerChain sc(a5);
  CHECK(sc.order() == 60);
  CHECK(sc.contains(P("(1 2)(3 4)", 5)));
  CHECK_FALSE(sc.contains(P("(1 2)", 5)));
}

TEST_CASE("k-transitivity by tuples agrees with the chain for n <= 12") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 120; ++t) {
    std::size_t n = 2 + rng() % 11;
    std::vector<Perm> gens;
    int kind = static_cast<int>(rng() % 3);
    if (kind == 0) {
      gens.push_back(testutil::random_perm(n, rng));
      gens.push_back(testutil::random_perm(n, rng));
    } else if (kind == 1) {
      // A single cycle on part of the points plus an involution.
      Perm p = testutil::random_perm(n, rng);
      gens.push_back(p * p);
    } else {
      gens.push_back(Perm::from_cycles(n, {{1, 2}}));
      if (n >= 3)
        gens.push_back(Perm::from_cycles(n, {{2, 3}}));
    }
    PermGroup g(gens);
    for (std::size_t k = 1; k <= std::min<std::size_t>(n, 5); ++k)
      CHECK(is_k_transitive_by_tuples(g, k) == is_k_transitive_by_chain(g, k));
  }
  for (const auto &e : builtin_entries()) {
    if (e.degree > 12)
      continue;
    PermGroup g(e.degree, e.generators);
    for (std::size_t k = 1; k <= std::min<std::size_t>(e.degree, 6); ++k)
      CHECK(is_k_transitive_by_tuples(g, k) == is_k_transitive_by_chain(g, k));
  }
}

TEST_CASE("k-transitivity examples") {
  for (std::size_t n = 2; n <= 8; ++n)
    CHECK(is_k_transitive(PermGroup(symmetric_entry(n).generators), n));
  PermGroup psl7(builtin_entry("PSL(2,7):2").generators);
  CHECK(is_k_transitive(psl7, 3));
  CHECK_FALSE(is_k_transitive(psl7, 4));
  CHECK(max_transitivity(PermGroup({P("(1 2)", 3)})) == 0);
  CHECK(max_transitivity(PermGroup(builtin_entry("PSL(2,11):2").generators)) == 3);
  CHECK(max_transitivity(PermGroup(alternating_entry(7).generators)) == 5);
  CHECK_THROWS_AS(is_k_transitive(psl7, 0), PermError);
  CHECK_THROWS_AS(is_k_transitive(psl7, 9), PermError);
}

TEST_CASE("k-transitivity is monotone and orbit size is n(n-1)...(n-k+1)") {
  for (const auto &e : builtin_entries()) {
    if (e.degree > 9)
      continue;
    PermGroup g(e.degree, e.generators);
    std::size_t m = max_transitivity(g);
    for (std::size_t k = 1; k <= e.degree; ++k)
      CHECK(is_k_transitive(g, k) == (k <= m));
  }
  CHECK(injective_tuple_count(12, 5) == 95040u);
}

} // TEST_SUITE
