#include "doctest.h"

#include "helpers.hpp"
#include "symcorr/homology.hpp"

using namespace symcorr;
using testutil::P;

namespace {

MonodromyCover cover(int g, std::size_t n, const std::vector<std::string> &gens) {
  std::vector<Perm> images;
  for (const auto &s : gens)
    images.push_back(P(s, n));
  return MonodromyCover(SurfaceBase(g), n, images);
}

MonodromyCover random_cover(std::mt19937_64 &rng, std::size_t n, int g) {
  std::vector<Perm> images;
  int h = 0;
  for (; h + 1 < g; h += 2) {
    Perm p = testutil::random_perm(n, rng);
    Perm q = rng() % 3 ? testutil::random_perm(n, rng) : Perm::identity(n);
    images.insert(images.end(), {p, q, q, p});
  }
  if (h < g) {
    Perm p = testutil::random_perm(n, rng);
    images.insert(images.end(), {p, p * p * p});
  }
  return MonodromyCover(SurfaceBase(g), n, images);
}

std::vector<long long> dims(const ProductCover &pc) {
  std::vector<long long> d;
  for (const auto &e : dimension_table(pc).entries)
    d.push_back(e.d);
  return d;
}

} // namespace

TEST_SUITE("homology") {

TEST_CASE("trivial module gives 2g") {
  for (int g = 1; g <= 4; ++g)
    CHECK(twisted_h1_dim(trivial_action(g)) == static_cast<std::size_t>(2 * g));
}

TEST_CASE("d1 d0 = 0 and the relation is enforced") {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 20; ++t) {
    auto c = random_cover(rng, 2 + rng() % 4, 1 + static_cast<int>(rng() % 3));
    auto tc = twisted_complex(permutation_action(c));
    CHECK((tc.d1 * tc.d0).is_zero());
  }
  auto bad = permutation_action(cover(1, 3, {"(1 2 3)", "(1 2)"}));
  CHECK_THROWS_AS(twisted_complex(bad), RelationNotSatisfied);
  CHECK_THROWS_AS(cw_h1_dim(cover(1, 3, {"(1 2 3)", "(1 2)"})), RelationNotSatisfied);
}

TEST_CASE("full fiber module of a connected cover") {
  auto c = cover(2, 3, {"(1 2 3)", "()", "(1 2)", "()"});
  CHECK(twisted_h1_dim(permutation_action(c)) == 2 * 4);
  CHECK(cw_h1_dim(c) == 2 * 4);
  auto pc = product_cover({c, cover(2, 3, {"(1 2)", "()", "(1 3)", "()"})});
  CHECK(twisted_h1_dim(permutation_action(pc.total())) == 2 * (9 * 1 + 1));
}

TEST_CASE("untwisted n = 2, l = 2 product has H^1 of dimension 12") {
  auto y = cover(2, 2, {"(1 2)", "()", "()", "()"});
  auto pc = product_cover({y, y});
  CHECK(twisted_h1_dim(permutation_action(pc.total())) == 12);
  CHECK(cw_h1_dim(pc.total()) == 12);
  auto t = dimension_table(pc);
  CHECK(t.components == 2);
  CHECK(t.genus_total == 6);
  CHECK(t.h0_trace == 0);
  CHECK(dims(pc) == std::vector<long long>{2, 2, 2});
  for (const auto &f : verify_formulas(t)) {
    if (f.id == "dims.sum_genus" || f.id == "dims.trace_h0")
      CHECK(f.status == FormulaStatus::Pass);
    else
      CHECK(f.status == FormulaStatus::HypothesisNotMet);
  }
}

TEST_CASE("Fox and cellular routes agree on random covers and submodules") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 2 + rng() % 5;
    int g = 1 + static_cast<int>(rng() % 3);
    auto c = random_cover(rng, n, g);
    CHECK(twisted_h1_dim(permutation_action(c)) == cw_h1_dim(c));
    // Trivial submodule (all-ones) and its complement (sum zero).
    IntMatrix ones(n, 1);
    IntMatrix zero_sum(n, n - 1);
    for (std::size_t i = 0; i < n; ++i)
      ones(i, 0) = 1;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      zero_sum(j, j) = 1;
      zero_sum(j + 1, j) = -1;
    }
    auto act = permutation_action(c);
    CHECK(twisted_h1_dim(restrict_action(act, to_q(ones))) == cw_h1_dim(c, ones));
    CHECK(twisted_h1_dim(restrict_action(act, to_q(ones))) ==
          static_cast<std::size_t>(2 * g));
    CHECK(twisted_h1_dim(restrict_action(act, to_q(zero_sum))) == cw_h1_dim(c, zero_sum));
    CHECK(twisted_h1_dim(restrict_action(act, to_q(ones))) +
              twisted_h1_dim(restrict_action(act, to_q(zero_sum))) ==
          twisted_h1_dim(act));
  }
}

TEST_CASE("restriction to a non-invariant subspace throws") {
  auto act = permutation_action(cover(2, 3, {"(1 2 3)", "()", "(1 2)", "()"}));
  IntMatrix e1(3, 1);
  e1(0, 0) = 1;
  CHECK_THROWS_AS(restrict_action(act, to_q(e1)), NotInvariant);
}

TEST_CASE("dimension tables on fixtures") {
  CHECK(dims(to_product(testutil::load("connected_l2.cover"))) ==
        std::vector<long long>{4, 4, 2});
  // l = 1: d_0 = (n-1)(g-1), d_1 = g.
  for (const char *f : {"l1_n3_g2.cover", "l1_n2_g2.cover", "l1_n3_g1.cover", "l1_n4_g3.cover"}) {
    auto pc = to_product(testutil::load(f));
    auto d = dims(pc);
    CHECK(d == std::vector<long long>{static_cast<long long>(pc.n() - 1) * (pc.genus() - 1),
                                      pc.genus()});
  }
  CHECK(dims(to_product(testutil::load("l2_n3_g1.cover"))) == std::vector<long long>{0, 0, 1});
  CHECK(dims(to_product(testutil::load("l3_n2_g2.cover"))) == std::vector<long long>{1, 3, 3, 2});
  CHECK(dims(to_product(testutil::load("l3_n3_g2.cover"))) == std::vector<long long>{8, 12, 6, 2});
}

TEST_CASE("every formula holds on connected fixtures") {
  for (const char *f : {"connected_l2.cover", "l1_n3_g2.cover", "l1_n2_g2.cover",
                        "l1_n4_g3.cover", "l3_n2_g2.cover", "l3_n3_g2.cover"}) {
    auto t = dimension_table(to_product(testutil::load(f)));
    CHECK(t.even);
    CHECK(t.routes_agree);
    CHECK(t.components == 1);
    for (const auto &c : verify_formulas(t))
      CHECK_MESSAGE(c.status == FormulaStatus::Pass, f, " ", c.id);
  }
  // g = 1: the 2^l count needs g >= 2, everything else passes.
  auto t = dimension_table(to_product(testutil::load("l2_n3_g1.cover")));
  for (const auto &c : verify_formulas(t))
    CHECK(c.status == (c.id == "dims.factor_count" ? FormulaStatus::HypothesisNotMet
                                                   : FormulaStatus::Pass));
}

TEST_CASE("relabeling sheets leaves the dimensions unchanged") {
  std::mt19937_64 rng(57);
  auto pc = to_product(testutil::load("connected_l2.cover"));
  for (int t = 0; t < 5; ++t) {
    Perm s = testutil::random_perm(3, rng);
    std::vector<MonodromyCover> factors;
    for (const auto &f : pc.factors()) {
      std::vector<Perm> images;
      for (const auto &p : f.images())
        images.push_back(s * p * s.inverse());
      factors.emplace_back(f.base(), f.degree(), images);
    }
    CHECK(dims(product_cover(factors)) == std::vector<long long>{4, 4, 2});
  }
}

TEST_CASE("additivity over eigenspaces") {
  for (const char *f : {"connected_l2.cover", "sigma_id.cover", "l3_n2_g2.cover"}) {
    auto t = dimension_table(to_product(testutil::load(f)));
    std::size_t sum = 0;
    for (const auto &e : t.entries)
      sum += e.h1_fox;
    CHECK(sum == t.h1_full_fox);
    CHECK(t.h1_full_fox == t.h1_full_cw);
  }
}

} // TEST_SUITE
