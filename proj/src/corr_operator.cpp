#include "symcorr/corr_operator.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <numeric>
#include <set>
#include <thread>

namespace symcorr {

std::vector<std::int64_t> CorrespondenceOperator::eigenvalues() const {
  std::vector<std::int64_t> ev;
  const auto n = static_cast<std::int64_t>(this->n());
  const auto ell = static_cast<std::int64_t>(this->ell());
  for (std::int64_t r = 0; r <= ell; ++r)
    ev.push_back(n * r - ell);
  return ev;
}

CorrespondenceOperator build_operator(std::size_t n, std::size_t ell,
                                      std::uint64_t max_fiber) {
  FiberSpace fiber(n, ell, max_fiber);
  std::vector<SparseMatrix::Entry> entries;
  entries.reserve(fiber.size() * ell * (n - 1));
  for (std::size_t t = 0; t < fiber.size(); ++t)
    for (std::size_t u : fiber.neighbours(t))
      entries.push_back({t, u, 1});
  return {fiber, SparseMatrix(fiber.size(), fiber.size(), std::move(entries))};
}

OperatorStructure check_structure(const CorrespondenceOperator &op) {
  OperatorStructure s;
  const SparseMatrix &m = op.matrix;
  s.symmetric = m == m.transpose();
  s.zero_diagonal = true;
  s.zero_one_entries = true;
  std::optional<std::int64_t> common;
  bool uniform = true;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m.at(i, i) != 0)
      s.zero_diagonal = false;
    std::int64_t sum = 0;
    for (std::int64_t v : m.row_values(i)) {
      if (v != 1)
        s.zero_one_entries = false;
      sum = detail::add(sum, v);
    }
    if (!common)
      common = sum;
    else if (*common != sum)
      uniform = false;
  }
  if (uniform)
    s.row_sum = common;

  // Column t of M against the divisor D(t).
  const SparseMatrix mt = m.transpose();
  s.matches_divisor_map = true;
  for (std::size_t t = 0; t < op.dimension() && s.matches_divisor_map; ++t) {
    DivisorOnC point;
    point.add(t, 1);
    DivisorOnC image = apply_D(op.fiber, point);
    auto cols = mt.row_cols(t);
    auto vals = mt.row_values(t);
    if (cols.size() != image.terms().size()) {
      s.matches_divisor_map = false;
      break;
    }
    std::size_t k = 0;
    for (const auto &[idx, c] : image.terms()) {
      if (cols[k] != idx || c != vals[k]) {
        s.matches_divisor_map = false;
        break;
      }
      ++k;
    }
  }
  return s;
}

namespace {

bool column_nonzero(const SparseMatrix &m, const std::vector<std::int64_t> &roots,
                    std::size_t j) {
  std::vector<std::int64_t> v(m.cols(), 0);
  v[j] = 1;
  for (std::int64_t lambda : roots) {
    std::vector<std::int64_t> w = m.apply(v);
    for (std::size_t i = 0; i < w.size(); ++i)
      w[i] = detail::sub(w[i], detail::mul(lambda, v[i]));
    v = std::move(w);
  }
  return std::any_of(v.begin(), v.end(), [](std::int64_t x) { return x != 0; });
}

std::optional<std::size_t> first_nonzero_column_parallel(
    const SparseMatrix &m, const std::vector<std::int64_t> &roots,
    unsigned threads) {
  const std::size_t n = m.cols();
  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1)
    return first_nonzero_column(m, roots);

  // Columns are interleaved across workers; the smallest witness wins, so
  // the answer does not depend on scheduling.
  std::atomic<std::size_t> best{n};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t j = w; j < n; j += threads) {
          if (j >= best.load())
            return;
          if (column_nonzero(m, roots, j)) {
            std::size_t cur = best.load();
            while (j < cur && !best.compare_exchange_weak(cur, j)) {
            }
            return;
          }
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto &t : pool)
    t.join();
  for (auto &e : errors)
    if (e)
      std::rethrow_exception(e);
  if (best.load() == n)
    return std::nullopt;
  return best.load();
}

} // namespace

std::optional<std::size_t> first_nonzero_column(const SparseMatrix &m,
                                                const std::vector<std::int64_t> &roots) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (column_nonzero(m, roots, j))
      return j;
  return std::nullopt;
}

namespace {

// Upper bound on nnz(a * b): every product term counted once.
std::size_t product_nnz_bound(const SparseMatrix &a, const SparseMatrix &b) {
  std::size_t bound = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k : a.row_cols(i))
      bound += b.row_cols(k).size();
  return bound;
}

// M commutes with the permutation matrix of g iff M(g i, g j) = M(i, j).
bool commutes_with(const SparseMatrix &m, const std::vector<std::size_t> &g) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto cols = m.row_cols(i);
    auto vals = m.row_values(i);
    if (m.row_cols(g[i]).size() != cols.size())
      return false;
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (m.at(g[i], g[cols[k]]) != vals[k])
        return false;
  }
  return true;
}

// Generators of S_n acting on one coordinate: a transposition and an n-cycle
// of the values. Over all coordinates they generate S_n^l, which is
// transitive on the fiber.
std::vector<std::vector<std::size_t>> coordinate_generators(const FiberSpace &f) {
  std::vector<std::vector<std::size_t>> gens;
  for (std::size_t c = 0; c < f.ell(); ++c)
    for (int kind = 0; kind < 2; ++kind) {
      std::vector<std::size_t> g(f.size());
      for (std::size_t idx = 0; idx < f.size(); ++idx) {
        std::size_t d = f.digit(idx, c);
        std::size_t nd = kind == 0 ? (d < 2 ? 1 - d : d) : (d + 1) % f.n();
        g[idx] = idx - d * f.stride(c) + nd * f.stride(c);
      }
      gens.push_back(std::move(g));
    }
  return gens;
}

} // namespace

MinEquationReport verify_min_equation(const CorrespondenceOperator &op,
                                      std::size_t nnz_budget, unsigned threads,
                                      bool use_symmetry) {
  MinEquationReport rep;
  rep.roots = op.eigenvalues();
  const SparseMatrix &m = op.matrix;

  // Full product: sparse products while they stay within budget.
  SparseMatrix acc = m.shifted(rep.roots.front());
  bool fallback = acc.nnz() > nnz_budget;
  for (std::size_t k = 1; k < rep.roots.size() && !fallback; ++k) {
    SparseMatrix factor = m.shifted(rep.roots[k]);
    if (product_nnz_bound(acc, factor) > nnz_budget) {
      fallback = true;
      break;
    }
    acc = acc * factor;
  }
  if (!fallback) {
    rep.strategy = "sparse-product";
    rep.vanishes = acc.is_zero();
    if (!rep.vanishes) {
      std::size_t best = acc.cols();
      for (std::size_t i = 0; i < acc.rows(); ++i)
        if (!acc.row_cols(i).empty())
          best = std::min(best, acc.row_cols(i).front());
      rep.witness_column = best;
    }
  } else {
    bool symmetric = use_symmetry;
    if (symmetric)
      for (const auto &g : coordinate_generators(op.fiber))
        symmetric = symmetric && commutes_with(m, g);
    if (symmetric) {
      // The product is a polynomial in M, so it commutes with a group that
      // is transitive on the basis; it vanishes iff its column 0 does.
      rep.strategy = "symmetry-reduced";
      rep.vanishes = !column_nonzero(m, rep.roots, 0);
      if (!rep.vanishes)
        rep.witness_column = 0;
    } else {
      rep.strategy = "column-by-column";
      rep.witness_column = first_nonzero_column_parallel(m, rep.roots, threads);
      rep.vanishes = !rep.witness_column;
    }
  }

  rep.minimal = true;
  for (std::size_t k = 0; k < rep.roots.size(); ++k) {
    std::vector<std::int64_t> rest;
    for (std::size_t s = 0; s < rep.roots.size(); ++s)
      if (s != k)
        rest.push_back(rep.roots[s]);
    auto w = first_nonzero_column(m, rest);
    rep.omit_one.push_back({rep.roots[k], w.has_value(), w});
    rep.minimal = rep.minimal && w.has_value();
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Eigen-decomposition

QMatrix EigenDecomposition::projector(std::size_t r) const {
  const auto &c = components.at(r);
  QMatrix p = to_q(c.numerator);
  const mpq_class d(static_cast<long>(c.denominator));
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j)
      p(i, j) /= d;
  return p;
}

namespace {

// Elimination is cubic in mpz; above this size the rank of a verified
// idempotent is read off its trace instead.
constexpr std::size_t kEliminationRankLimit = 512;

} // namespace

EigenDecomposition eigen_decompose(const CorrespondenceOperator &op,
                                   std::size_t dense_limit) {
  const std::size_t dim = op.dimension();
  if (dim > dense_limit)
    throw ResourceLimitError("dense projectors of size " + std::to_string(dim) +
                                 " exceed limit " + std::to_string(dense_limit),
                             dim, dense_limit);
  const auto roots = op.eigenvalues();
  EigenDecomposition ed;
  ed.dimension = dim;
  const auto n = static_cast<unsigned long>(op.n());
  const auto ell = static_cast<unsigned long>(op.ell());
  for (std::size_t r = 0; r < roots.size(); ++r) {
    IntMatrix num = IntMatrix::identity(dim);
    std::int64_t den = 1;
    for (std::size_t s = 0; s < roots.size(); ++s) {
      if (s == r)
        continue;
      num = op.matrix.shifted(roots[s]) * num;
      den = detail::mul(den, detail::sub(roots[r], roots[s]));
    }
    EigenComponent c{r, roots[r], std::move(num), den, 0, 0};
    if (dim <= kEliminationRankLimit) {
      c.multiplicity = rank(c.numerator);
    } else {
      std::int64_t tr = c.numerator.trace();
      c.multiplicity = static_cast<std::size_t>(tr / den);
    }
    mpz_class nm1_pow;
    mpz_ui_pow_ui(nm1_pow.get_mpz_t(), n - 1, ell - r);
    c.expected_multiplicity = binomial(ell, r) * nm1_pow;
    ed.components.push_back(std::move(c));
  }
  return ed;
}

ProjectorChecks verify_projectors(const CorrespondenceOperator &op,
                                  const EigenDecomposition &ed) {
  ProjectorChecks chk;
  const std::size_t dim = ed.dimension;
  std::int64_t lcm = 1;
  for (const auto &c : ed.components)
    lcm = std::lcm(lcm, c.denominator < 0 ? -c.denominator : c.denominator);

  IntMatrix sum(dim, dim);
  std::size_t rank_total = 0;
  std::int64_t weighted_trace = 0;
  for (const auto &c : ed.components) {
    const IntMatrix &q = c.numerator;
    if (!(q * q == scaled(q, c.denominator)))
      chk.idempotent = false;
    for (const auto &other : ed.components)
      if (other.r > c.r && !(q * other.numerator).is_zero())
        chk.orthogonal = false;
    if (!(op.matrix * q == scaled(q, c.eigenvalue)))
      chk.eigen_relation = false;
    if (c.expected_multiplicity != static_cast<unsigned long>(c.multiplicity))
      chk.multiplicities_match = false;
    if (q.trace() != detail::mul(c.denominator, static_cast<std::int64_t>(c.multiplicity)))
      chk.trace_equals_rank = false;
    sum = sum + scaled(q, lcm / c.denominator);
    rank_total += c.multiplicity;
    weighted_trace = detail::add(
        weighted_trace,
        detail::mul(c.eigenvalue, static_cast<std::int64_t>(c.multiplicity)));
  }
  chk.sum_identity = sum == scaled(IntMatrix::identity(dim), lcm);
  chk.ranks_sum = rank_total == dim;
  chk.trace_identity = op.matrix.to_dense().trace() == 0 && weighted_trace == 0;
  return chk;
}

EquivarianceReport verify_equivariance(const CorrespondenceOperator &op,
                                       const ProductCover &pc) {
  if (op.n() != pc.n() || op.ell() != pc.ell())
    throw std::invalid_argument("operator (n, l) = (" + std::to_string(op.n()) +
                                ", " + std::to_string(op.ell()) +
                                ") does not match the cover (" +
                                std::to_string(pc.n()) + ", " +
                                std::to_string(pc.ell()) + ")");
  EquivarianceReport rep;
  rep.all = true;
  for (const auto &g : pc.total().images()) {
    std::vector<SparseMatrix::Entry> e;
    for (std::size_t j = 0; j < g.degree(); ++j)
      e.push_back({g(static_cast<Point>(j + 1)) - 1u, j, 1});
    SparseMatrix p(g.degree(), g.degree(), std::move(e));
    bool ok = op.matrix * p == p * op.matrix;
    rep.commutes.push_back(ok);
    rep.all = rep.all && ok;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Subquotients

IntMatrix subquotient_basis(const FiberSpace &fiber,
                            const std::vector<std::size_t> &subset) {
  std::size_t cols = 1;
  for (std::size_t k = 0; k < subset.size(); ++k)
    cols *= fiber.n();
  IntMatrix basis(fiber.size(), cols);
  for (std::size_t idx = 0; idx < fiber.size(); ++idx) {
    // Column = the J-coordinates of the tuple read as a base-n number.
    std::size_t col = 0;
    for (std::size_t i : subset)
      col = col * fiber.n() + fiber.digit(idx, i - 1);
    basis(idx, col) = 1;
  }
  return basis;
}

SubquotientReport verify_subquotient_action(const CorrespondenceOperator &op,
                                            std::vector<std::size_t> subset) {
  std::sort(subset.begin(), subset.end());
  if (std::adjacent_find(subset.begin(), subset.end()) != subset.end())
    throw std::invalid_argument("subset repeats an index");
  for (std::size_t i : subset)
    if (i < 1 || i > op.ell())
      throw std::invalid_argument("subset index " + std::to_string(i) +
                                  " outside 1.." + std::to_string(op.ell()));

  SubquotientReport rep;
  rep.subset = subset;
  rep.r = subset.size();
  const auto n = static_cast<std::int64_t>(op.n());
  const auto ell = static_cast<std::int64_t>(op.ell());
  rep.eigenvalue = n * (ell - static_cast<std::int64_t>(rep.r)) - ell;

  IntMatrix vj = subquotient_basis(op.fiber, subset);
  rep.dim_vj = vj.cols();
  IntMatrix image = op.matrix.shifted(rep.eigenvalue) * vj;

  // The maximal proper subsets J \ {j} span the sum over all proper subsets.
  IntMatrix lower(op.dimension(), 0);
  for (std::size_t drop = 0; drop < subset.size(); ++drop) {
    std::vector<std::size_t> smaller;
    for (std::size_t k = 0; k < subset.size(); ++k)
      if (k != drop)
        smaller.push_back(subset[k]);
    lower = hconcat(lower, subquotient_basis(op.fiber, smaller));
  }
  if (lower.cols() == 0) {
    rep.dim_lower = 0;
    rep.contained = image.is_zero();
    return rep;
  }
  ZMatrix lz = to_z(lower);
  rep.dim_lower = rank(lz);
  rep.contained = rank(hconcat(lz, to_z(image))) == rep.dim_lower;
  return rep;
}

// ---------------------------------------------------------------------------
// Torsion exponents

bool TorsionSystem::all_divide() const {
  return std::all_of(divides_bound.begin(), divides_bound.end(), [](bool b) { return b; }) &&
         std::all_of(divides_global.begin(), divides_global.end(), [](bool b) { return b; });
}

TorsionSystem torsion_exponents(std::size_t n, std::size_t ell) {
  if (n < 2 || ell < 1)
    throw std::invalid_argument("torsion system needs n >= 2 and l >= 1");
  TorsionSystem ts;
  ts.n = n;
  ts.ell = ell;
  ts.relations = ZMatrix(ell, ell);
  const auto un = static_cast<unsigned long>(n);
  for (std::size_t k = 1; k <= ell; ++k) {
    mpz_class nk;
    mpz_ui_pow_ui(nk.get_mpz_t(), un, k);
    for (std::size_t r = 1; r <= ell; ++r)
      ts.relations(k - 1, r - 1) = nk * factorial(k) * binomial(r, k);
  }

  // Row lattice L = Z^l B. With U B V = S, B^-1 = V S^-1 U, and e * unit_r
  // lies in L iff e times row r of B^-1 is integral.
  SmithForm snf = smith_normal_form(ts.relations);
  ts.invariant_factors = snf.invariants;
  if (snf.invariants.size() != ell)
    throw std::logic_error("torsion relation matrix is singular");
  for (std::size_t r = 0; r < ell; ++r) {
    mpz_class e = 1;
    for (std::size_t j = 0; j < ell; ++j) {
      mpq_class entry = 0;
      for (std::size_t k = 0; k < ell; ++k)
        entry += mpq_class(snf.v(r, k) * snf.u(k, j), snf.s(k, k));
      entry.canonicalize();
      mpz_lcm(e.get_mpz_t(), e.get_mpz_t(), entry.get_den_mpz_t());
    }
    ts.exponents.push_back(e);
  }

  mpz_class nl;
  mpz_ui_pow_ui(nl.get_mpz_t(), un, ell);
  ts.global_bound = factorial(ell) * nl;
  for (std::size_t r = 1; r <= ell; ++r) {
    mpz_class bound = factorial(r) * factorial(ell - r) * nl;
    ts.bounds.push_back(bound);
    ts.divides_bound.push_back(bound % ts.exponents[r - 1] == 0);
    ts.divides_global.push_back(ts.global_bound % ts.exponents[r - 1] == 0);
  }
  return ts;
}

} // namespace symcorr
