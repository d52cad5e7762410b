#include "symcorr/exact.hpp"

#include <algorithm>
#include <numeric>

namespace symcorr {

ZMatrix to_z(const IntMatrix &m) {
  ZMatrix z(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      z(i, j) = static_cast<long>(m(i, j));
  return z;
}

QMatrix to_q(const IntMatrix &m) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      q(i, j) = static_cast<long>(m(i, j));
  return q;
}

QMatrix to_q(const ZMatrix &m) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      q(i, j) = m(i, j);
  return q;
}

namespace {

using Row = std::vector<mpz_class>;

void reduce_content(Row &row) {
  mpz_class g = 0;
  for (const auto &x : row) {
    if (x != 0)
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1)
      return;
  }
  if (g > 1)
    for (auto &x : row)
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// Row echelon form by fraction-free elimination; returns pivot columns.
std::vector<std::size_t> echelon(std::vector<Row> rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t top = 0;
  for (std::size_t c = 0; c < cols && top < rows.size(); ++c) {
    std::size_t best = rows.size();
    for (std::size_t r = top; r < rows.size(); ++r) {
      if (rows[r][c] == 0)
        continue;
      // Prefer the smallest pivot to limit growth.
      if (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c]))
        best = r;
    }
    if (best == rows.size())
      continue;
    std::swap(rows[top], rows[best]);
    const Row &piv = rows[top];
    for (std::size_t r = top + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0)
        continue;
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), piv[c].get_mpz_t(), rows[r][c].get_mpz_t());
      mpz_class fp = piv[c] / g;
      mpz_class fr = rows[r][c] / g;
      for (std::size_t k = c; k < cols; ++k)
        rows[r][k] = rows[r][k] * fp - piv[k] * fr;
      reduce_content(rows[r]);
    }
    pivots.push_back(c);
    ++top;
  }
  return pivots;
}

std::vector<Row> rows_of(const ZMatrix &m) {
  std::vector<Row> rows(m.rows(), Row(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      rows[i][j] = m(i, j);
  for (auto &r : rows)
    reduce_content(r);
  return rows;
}

} // namespace

std::size_t rank(const ZMatrix &m) {
  return echelon(rows_of(m), m.cols()).size();
}

std::size_t rank(const IntMatrix &m) { return rank(to_z(m)); }

std::size_t rank(const QMatrix &m) {
  // Clear denominators row by row; scaling a row keeps the rank.
  ZMatrix z(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j)
      z(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
  }
  return rank(z);
}

std::vector<std::size_t> pivot_columns(const ZMatrix &m) {
  return echelon(rows_of(m), m.cols());
}

std::optional<QMatrix> inverse(const QMatrix &m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  QMatrix a = m;
  QMatrix inv = QMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0)
      ++p;
    if (p == n)
      return std::nullopt;
    if (p != c)
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(a(p, k), a(c, k));
        std::swap(inv(p, k), inv(c, k));
      }
    mpq_class piv = a(c, c);
    for (std::size_t k = 0; k < n; ++k) {
      a(c, k) /= piv;
      inv(c, k) /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0)
        continue;
      mpq_class f = a(r, c);
      for (std::size_t k = 0; k < n; ++k) {
        a(r, k) -= f * a(c, k);
        inv(r, k) -= f * inv(c, k);
      }
    }
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

struct SnfState {
  ZMatrix u, s, v;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j)
      return;
    for (std::size_t k = 0; k < s.cols(); ++k)
      std::swap(s(i, k), s(j, k));
    for (std::size_t k = 0; k < u.cols(); ++k)
      std::swap(u(i, k), u(j, k));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j)
      return;
    for (std::size_t k = 0; k < s.rows(); ++k)
      std::swap(s(k, i), s(k, j));
    for (std::size_t k = 0; k < v.rows(); ++k)
      std::swap(v(k, i), v(k, j));
  }
  // row_i += f * row_j
  void add_row(std::size_t i, std::size_t j, const mpz_class &f) {
    for (std::size_t k = 0; k < s.cols(); ++k)
      s(i, k) += f * s(j, k);
    for (std::size_t k = 0; k < u.cols(); ++k)
      u(i, k) += f * u(j, k);
  }
  // col_i += f * col_j
  void add_col(std::size_t i, std::size_t j, const mpz_class &f) {
    for (std::size_t k = 0; k < s.rows(); ++k)
      s(k, i) += f * s(k, j);
    for (std::size_t k = 0; k < v.rows(); ++k)
      v(k, i) += f * v(k, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < s.cols(); ++k)
      s(i, k) = -s(i, k);
    for (std::size_t k = 0; k < u.cols(); ++k)
      u(i, k) = -u(i, k);
  }
};

mpz_class floor_div(const mpz_class &a, const mpz_class &b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

} // namespace

SmithForm smith_normal_form(const ZMatrix &a) {
  const std::size_t m = a.rows(), n = a.cols();
  SnfState st{ZMatrix::identity(m), a, ZMatrix::identity(n)};
  ZMatrix &s = st.s;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    auto place_min = [&]() {
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (s(i, j) != 0 && (bi == m || abs(s(i, j)) < abs(s(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == m)
        return false;
      st.swap_rows(t, bi);
      st.swap_cols(t, bj);
      return true;
    };
    if (!place_min())
      break;

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (s(i, t) == 0)
          continue;
        st.add_row(i, t, -floor_div(s(i, t), s(t, t)));
        if (s(i, t) != 0)
          clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s(t, j) == 0)
          continue;
        st.add_col(j, t, -floor_div(s(t, j), s(t, t)));
        if (s(t, j) != 0)
          clean = false;
      }
      if (!clean) {
        place_min();
        continue;
      }
      // Pivot must divide the whole trailing block.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (s(i, j) % s(t, t) != 0) {
            st.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides)
        break;
    }
    if (s(t, t) < 0)
      st.negate_row(t);
  }

  SmithForm out{st.u, st.s, st.v, {}};
  for (std::size_t t = 0; t < std::min(m, n); ++t)
    if (out.s(t, t) != 0)
      out.invariants.push_back(out.s(t, t));
  return out;
}

// ---------------------------------------------------------------------------
// Sparse matrices

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols,
                           std::vector<Entry> entries)
    : rows_(rows), cols_(cols) {
  std::sort(entries.begin(), entries.end(), [](const Entry &a, const Entry &b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  row_ptr_.assign(rows + 1, 0);
  for (std::size_t k = 0; k < entries.size();) {
    const Entry &e = entries[k];
    if (e.row >= rows || e.col >= cols)
      throw std::out_of_range("sparse entry outside matrix");
    std::int64_t v = 0;
    std::size_t k2 = k;
    while (k2 < entries.size() && entries[k2].row == e.row &&
           entries[k2].col == e.col)
      v = detail::add(v, entries[k2++].value);
    if (v != 0) {
      cols_idx_.push_back(e.col);
      values_.push_back(v);
      ++row_ptr_[e.row + 1];
    }
    k = k2;
  }
  for (std::size_t i = 0; i < rows; ++i)
    row_ptr_[i + 1] += row_ptr_[i];
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<Entry> e;
  for (std::size_t i = 0; i < n; ++i)
    e.push_back({i, i, 1});
  return SparseMatrix(n, n, std::move(e));
}

std::int64_t SparseMatrix::at(std::size_t i, std::size_t j) const {
  auto cols = row_cols(i);
  auto it = std::lower_bound(cols.begin(), cols.end(), j);
  if (it == cols.end() || *it != j)
    return 0;
  return row_values(i)[static_cast<std::size_t>(it - cols.begin())];
}

std::vector<std::int64_t> SparseMatrix::apply(std::span<const std::int64_t> x) const {
  if (x.size() != cols_)
    throw std::invalid_argument("sparse apply shape mismatch");
  std::vector<std::int64_t> y(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::int64_t acc = 0;
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      if (x[cols_idx_[k]] != 0)
        acc = detail::add(acc, detail::mul(values_[k], x[cols_idx_[k]]));
    y[i] = acc;
  }
  return y;
}

SparseMatrix SparseMatrix::shifted(std::int64_t lambda) const {
  std::vector<Entry> e;
  e.reserve(nnz() + rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      e.push_back({i, cols_idx_[k], values_[k]});
    if (i < cols_)
      e.push_back({i, i, -lambda});
  }
  return SparseMatrix(rows_, cols_, std::move(e));
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Entry> e;
  e.reserve(nnz());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      e.push_back({cols_idx_[k], i, values_[k]});
  return SparseMatrix(cols_, rows_, std::move(e));
}

IntMatrix SparseMatrix::to_dense() const {
  IntMatrix d(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      d(i, cols_idx_[k]) = values_[k];
  return d;
}

SparseMatrix operator*(const SparseMatrix &a, const SparseMatrix &b) {
  if (a.cols_ != b.rows_)
    throw std::invalid_argument("sparse product shape mismatch");
  SparseMatrix c;
  c.rows_ = a.rows_;
  c.cols_ = b.cols_;
  c.row_ptr_.assign(a.rows_ + 1, 0);
  std::vector<std::int64_t> acc(b.cols_, 0);
  std::vector<bool> touched(b.cols_, false);
  std::vector<std::size_t> pattern;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    pattern.clear();
    for (std::size_t ka = a.row_ptr_[i]; ka < a.row_ptr_[i + 1]; ++ka) {
      std::size_t k = a.cols_idx_[ka];
      std::int64_t av = a.values_[ka];
      for (std::size_t kb = b.row_ptr_[k]; kb < b.row_ptr_[k + 1]; ++kb) {
        std::size_t j = b.cols_idx_[kb];
        if (!touched[j]) {
          touched[j] = true;
          pattern.push_back(j);
        }
        acc[j] = detail::add(acc[j], detail::mul(av, b.values_[kb]));
      }
    }
    std::sort(pattern.begin(), pattern.end());
    for (std::size_t j : pattern) {
      if (acc[j] != 0) {
        c.cols_idx_.push_back(j);
        c.values_.push_back(acc[j]);
      }
      acc[j] = 0;
      touched[j] = false;
    }
    c.row_ptr_[i + 1] = c.values_.size();
  }
  return c;
}

IntMatrix operator*(const SparseMatrix &s, const IntMatrix &d) {
  if (s.cols() != d.rows())
    throw std::invalid_argument("sparse-dense product shape mismatch");
  IntMatrix out(s.rows(), d.cols());
  for (std::size_t i = 0; i < s.rows(); ++i) {
    auto cols = s.row_cols(i);
    auto vals = s.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k)
      for (std::size_t j = 0; j < d.cols(); ++j)
        if (d(cols[k], j) != 0)
          out(i, j) = detail::add(out(i, j), detail::mul(vals[k], d(cols[k], j)));
  }
  return out;
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class factorial(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

} // namespace symcorr
