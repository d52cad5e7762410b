#include "doctest.h"

#include <random>

#include "symcorr/exact.hpp"

using namespace symcorr;

namespace {

// Random unimodular matrix as a product of elementary row operations.
ZMatrix unimodular(std::size_t n, std::mt19937_64 &rng) {
  ZMatrix u = ZMatrix::identity(n);
  if (n < 2)
    return u;
  for (int step = 0; step < 12; ++step) {
    std::size_t i = rng() % n, j = rng() % n;
    if (i == j)
      continue;
    long c = static_cast<long>(rng() % 5) - 2;
    for (std::size_t k = 0; k < n; ++k)
      u(i, k) += c * u(j, k);
  }
  return u;
}

} // namespace

TEST_SUITE("exact") {

TEST_CASE("checked int64 arithmetic") {
  CHECK(detail::add(std::int64_t{2}, std::int64_t{3}) == 5);
  CHECK_THROWS_AS(detail::mul(INT64_MAX, std::int64_t{2}), ArithmeticOverflow);
  CHECK_THROWS_AS(detail::add(INT64_MAX, std::int64_t{1}), ArithmeticOverflow);
}

TEST_CASE("rank and Smith form of matrices with planted structure") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 60; ++t) {
    std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
    std::size_t r = rng() % (std::min(rows, cols) + 1);
    // Diagonal d_1 | d_2 | ... built as running products.
    ZMatrix d(rows, cols);
    std::vector<mpz_class> diag;
    mpz_class cur = 1;
    for (std::size_t i = 0; i < r; ++i) {
      cur *= 1 + rng() % 3;
      d(i, i) = cur;
      diag.push_back(cur);
    }
    ZMatrix a = unimodular(rows, rng) * d * unimodular(cols, rng);
    CHECK(rank(a) == r);
    CHECK(rank(to_q(a)) == r);
    CHECK(rank(a.transpose()) == r);
    SmithForm s = smith_normal_form(a);
    CHECK(s.u * a * s.v == s.s);
    CHECK(s.invariants == diag);
    CHECK(pivot_columns(a).size() == r);
  }
}

TEST_CASE("Smith form of a small example") {
  ZMatrix a(2, 2);
  a(0, 0) = 2;
  a(0, 1) = 4;
  a(1, 0) = 6;
  a(1, 1) = 8;
  auto s = smith_normal_form(a);
  CHECK(s.invariants == std::vector<mpz_class>{2, 4});
}

TEST_CASE("rational inverse") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 1 + rng() % 5;
    QMatrix m = to_q(unimodular(n, rng));
    m(0, 0) += mpq_class(1, 3);
    auto inv = inverse(m);
    if (!inv) {
      CHECK(rank(m) < n);
      continue;
    }
    CHECK(m * *inv == QMatrix::identity(n));
  }
  QMatrix sing(2, 2);
  sing(0, 0) = 1;
  sing(0, 1) = 2;
  sing(1, 0) = 2;
  sing(1, 1) = 4;
  CHECK_FALSE(inverse(sing).has_value());
}

TEST_CASE("sparse operations agree with dense ones") {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = 1 + rng() % 8, m = 1 + rng() % 8, k = 1 + rng() % 8;
    auto rand_sparse = [&](std::size_t r, std::size_t c) {
      std::vector<SparseMatrix::Entry> e;
      for (int i = 0; i < 20; ++i)
        e.push_back({rng() % r, rng() % c, static_cast<std::int64_t>(rng() % 7) - 3});
      return SparseMatrix(r, c, e);
    };
    SparseMatrix a = rand_sparse(n, m), b = rand_sparse(m, k);
    CHECK((a * b).to_dense() == a.to_dense() * b.to_dense());
    CHECK((a * b.to_dense()) == a.to_dense() * b.to_dense());
    CHECK(a.transpose().to_dense() == a.to_dense().transpose());
    std::vector<std::int64_t> x(m);
    for (auto &v : x)
      v = static_cast<std::int64_t>(rng() % 9) - 4;
    IntMatrix xm(m, 1);
    for (std::size_t i = 0; i < m; ++i)
      xm(i, 0) = x[i];
    IntMatrix ax = a.to_dense() * xm;
    auto y = a.apply(x);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(y[i] == ax(i, 0));
    if (n == m) {
      IntMatrix sh = a.to_dense() - scaled(IntMatrix::identity(n), std::int64_t{5});
      CHECK(a.shifted(5).to_dense() == sh);
    }
  }
  SparseMatrix z(2, 2, {{0, 1, 3}, {0, 1, -3}});
  CHECK(z.is_zero());
}

TEST_CASE("binomials and factorials") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(3, 4) == 0);
  CHECK(factorial(12) == 479001600);
}

} // TEST_SUITE
