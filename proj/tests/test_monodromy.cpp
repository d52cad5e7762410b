#include "doctest.h"

#include <algorithm>

#include "helpers.hpp"
#include "symcorr/monodromy.hpp"

using namespace symcorr;
using testutil::P;

namespace {

MonodromyCover cover(int g, std::size_t n, const std::vector<std::string> &gens) {
  std::vector<Perm> images;
  for (const auto &s : gens)
    images.push_back(P(s, n));
  return MonodromyCover(SurfaceBase(g), n, images);
}

MonodromyCover relabel(const MonodromyCover &c, const Perm &s) {
  std::vector<Perm> images;
  for (const auto &p : c.images())
    images.push_back(s * p * s.inverse());
  return MonodromyCover(c.base(), c.degree(), images);
}

} // namespace

TEST_SUITE("monodromy") {

TEST_CASE("validation examples") {
  CHECK(validate(cover(2, 3, {"(1 2 3)", "()", "(1 2)", "()"})).valid);
  CHECK(validate(cover(1, 2, {"(1 2)", "(1 2)"})).valid);
  auto bad = validate(cover(1, 3, {"(1 2 3)", "(1 2)"}));
  CHECK_FALSE(bad.valid);
  REQUIRE(bad.failures.size() == 1);
  CHECK(bad.failures[0].find("[a1,b1]") != std::string::npos);
  // [(1 2 3), (1 2)] computed by hand: (1 3 2).
  CHECK(cover(1, 3, {"(1 2 3)", "(1 2)"}).relator_image() == P("(1 3 2)", 3));
}

TEST_CASE("construction rejects bad shapes") {
  CHECK_THROWS_AS(SurfaceBase(0), InvalidCover);
  CHECK_THROWS_AS(cover(2, 3, {"(1 2 3)", "()", "(1 2)"}), InvalidCover);
  CHECK_THROWS_AS(MonodromyCover(SurfaceBase(1), 3, {P("(1 2)", 2), P("()", 3)}),
                  InvalidCover);
  CHECK_THROWS_AS(components(cover(1, 3, {"(1 2 3)", "(1 2)"})), InvalidCover);
}

TEST_CASE("components and genera") {
  auto c = cover(2, 3, {"(1 2 3)", "()", "(1 2)", "()"});
  CHECK(is_connected(c));
  CHECK(genus_total(c) == 4);

  auto trivial = cover(2, 2, {"()", "()", "()", "()"});
  auto rep = components(trivial);
  REQUIRE(rep.components.size() == 2);
  CHECK(rep.components[0].genus == 2);
  CHECK(rep.components[1].genus == 2);

  CHECK(genus_total(cover(3, 2, {"()", "()", "()", "()", "()", "()"})) == 6);
  auto torus = cover(1, 2, {"(1 2)", "(1 2)"});
  CHECK(is_connected(torus));
  CHECK(genus_total(torus) == 1);
  for (const auto &comp : components(cover(1, 4, {"(1 2)", "(3 4)"})).components)
    CHECK(comp.genus == 1);
  CHECK(cover_genus(9, 2) == 10);
}

TEST_CASE("Euler characteristic and relabeling on random covers") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 2 + rng() % 7;
    int g = 1 + static_cast<int>(rng() % 3);
    std::vector<Perm> images;
    // (p, q), (q, p) pairs satisfy the relation; the last handle commutes.
    int h = 0;
    for (; h + 1 < g; h += 2) {
      Perm p = testutil::random_perm(n, rng), q = testutil::random_perm(n, rng);
      if (rng() % 2)
        q = Perm::identity(n);
      images.insert(images.end(), {p, q, q, p});
    }
    if (h < g) {
      Perm p = rng() % 3 ? testutil::random_perm(n, rng) : Perm::identity(n);
      images.insert(images.end(), {p, p * p});
    }
    MonodromyCover c(SurfaceBase(g), n, images);
    REQUIRE(validate(c).valid);
    auto rep = components(c);
    long long euler = 0;
    std::size_t total = 0;
    for (const auto &comp : rep.components) {
      euler += 2 * comp.genus - 2;
      total += comp.degree;
      CHECK(comp.genus == cover_genus(comp.degree, g));
    }
    CHECK(total == n);
    CHECK(euler == static_cast<long long>(n) * (2 * g - 2));
    CHECK(is_connected(c) == (rep.components.size() == 1));

    auto shuffled = components(relabel(c, testutil::random_perm(n, rng)));
    std::vector<std::pair<std::size_t, long long>> a, b;
    for (const auto &x : rep.components)
      a.emplace_back(x.degree, x.genus);
    for (const auto &x : shuffled.components)
      b.emplace_back(x.degree, x.genus);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
  }
}

} // TEST_SUITE
