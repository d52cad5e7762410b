#include "symcorr/homology.hpp"

#include <utility>

namespace symcorr {

namespace {

struct Letter {
  std::size_t gen; // index into a_1, b_1, ..., a_g, b_g
  int sign;        // +1 or -1
};

// R = [a_1, b_1] ... [a_g, b_g] with [a, b] = a b a^-1 b^-1.
std::vector<Letter> surface_relator(int genus) {
  std::vector<Letter> word;
  for (std::size_t i = 0; i < static_cast<std::size_t>(genus); ++i) {
    word.push_back({2 * i, +1});
    word.push_back({2 * i + 1, +1});
    word.push_back({2 * i, -1});
    word.push_back({2 * i + 1, -1});
  }
  return word;
}

QMatrix permutation_matrix(const Perm &p) {
  QMatrix m(p.degree(), p.degree());
  for (std::size_t j = 0; j < p.degree(); ++j)
    m(p(static_cast<Point>(j + 1)) - 1, j) = 1;
  return m;
}

} // namespace

LinearAction trivial_action(int genus) {
  LinearAction a;
  a.genus = genus;
  a.dim = 1;
  for (int i = 0; i < 2 * genus; ++i) {
    a.images.push_back(QMatrix::identity(1));
    a.inverses.push_back(QMatrix::identity(1));
  }
  return a;
}

LinearAction permutation_action(const MonodromyCover &cover) {
  LinearAction a;
  a.genus = cover.genus();
  a.dim = cover.degree();
  for (const auto &p : cover.images()) {
    a.images.push_back(permutation_matrix(p));
    a.inverses.push_back(permutation_matrix(p.inverse()));
  }
  return a;
}

LinearAction restrict_action(const LinearAction &action, const QMatrix &basis) {
  if (basis.rows() != action.dim)
    throw std::invalid_argument("basis rows do not match the module dimension");
  const std::size_t m = basis.cols();
  // Independent rows of the basis give a square invertible block.
  std::vector<Point> dummy;
  QMatrix bt = basis.transpose();
  ZMatrix scaled_bt(bt.rows(), bt.cols());
  {
    // Pivot columns of B^T are independent rows of B; scaling rows of B^T by
    // positive integers does not change them.
    for (std::size_t i = 0; i < bt.rows(); ++i) {
      mpz_class l = 1;
      for (std::size_t j = 0; j < bt.cols(); ++j)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), bt(i, j).get_den_mpz_t());
      for (std::size_t j = 0; j < bt.cols(); ++j)
        scaled_bt(i, j) = bt(i, j).get_num() * (l / bt(i, j).get_den());
    }
  }
  auto rows = pivot_columns(scaled_bt);
  if (rows.size() != m)
    throw std::invalid_argument("basis columns are not independent");
  QMatrix block(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      block(i, j) = basis(rows[i], j);
  auto block_inv = inverse(block);
  if (!block_inv)
    throw std::logic_error("pivot block unexpectedly singular");

  auto restrict_one = [&](const QMatrix &g) {
    QMatrix gb = g * basis;
    QMatrix sel(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        sel(i, j) = gb(rows[i], j);
    QMatrix coords = *block_inv * sel;
    if (!(basis * coords == gb))
      throw NotInvariant("subspace is not invariant under the action");
    return coords;
  };

  LinearAction out;
  out.genus = action.genus;
  out.dim = m;
  for (std::size_t k = 0; k < action.images.size(); ++k) {
    out.images.push_back(restrict_one(action.images[k]));
    out.inverses.push_back(restrict_one(action.inverses[k]));
  }
  return out;
}

TwistedComplex twisted_complex(const LinearAction &action) {
  const std::size_t gens = 2 * static_cast<std::size_t>(action.genus);
  if (action.images.size() != gens || action.inverses.size() != gens)
    throw std::invalid_argument("action needs 2g generator images");
  const std::size_t dim = action.dim;
  const QMatrix id = QMatrix::identity(dim);

  // Fox derivatives evaluated in the action, accumulated left to right:
  // d(w x)/dx adds rho(w), d(w x^-1)/dx adds -rho(w x^-1).
  std::vector<QMatrix> blocks(gens, QMatrix(dim, dim));
  QMatrix prefix = id;
  for (const Letter &l : surface_relator(action.genus)) {
    if (l.sign > 0) {
      blocks[l.gen] = blocks[l.gen] + prefix;
      prefix = prefix * action.images[l.gen];
    } else {
      prefix = prefix * action.inverses[l.gen];
      blocks[l.gen] = blocks[l.gen] - prefix;
    }
  }
  if (!(prefix == id))
    throw RelationNotSatisfied("action does not satisfy the surface relation");

  TwistedComplex tc;
  tc.genus = action.genus;
  tc.dim = dim;
  tc.d0 = QMatrix(gens * dim, dim);
  tc.d1 = QMatrix(dim, gens * dim);
  for (std::size_t j = 0; j < gens; ++j) {
    QMatrix delta = action.images[j] - id;
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) {
        tc.d0(j * dim + r, c) = delta(r, c);
        tc.d1(r, j * dim + c) = blocks[j](r, c);
      }
  }
  return tc;
}

std::size_t twisted_h1_dim(const LinearAction &action) {
  TwistedComplex tc = twisted_complex(action);
  const std::size_t cochains = tc.d1.cols();
  return cochains - rank(tc.d1) - rank(tc.d0);
}

std::size_t cw_h1_dim(const MonodromyCover &cover, const IntMatrix &basis) {
  const std::size_t n = cover.degree();
  const std::size_t gens = cover.images().size();
  if (basis.rows() != n)
    throw std::invalid_argument("basis rows do not match the cover degree");
  const std::size_t m = basis.cols();

  // Lifting generator x from sheet i ends at sheet rho(x)^-1(i); with this
  // rule lifting a word w ends at rho(w)^-1(i).
  std::vector<Perm> step;
  for (const auto &p : cover.images())
    step.push_back(p.inverse());

  // Boundary of edges: edge (x, i) runs from sheet i to step_x(i).
  ZMatrix boundary1(n, gens * n);
  for (std::size_t x = 0; x < gens; ++x)
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t target = step[x](static_cast<Point>(i + 1)) - 1;
      boundary1(target, x * n + i) += 1;
      boundary1(i, x * n + i) -= 1;
    }

  // Boundary of the face over sheet s: the relator lifted from s.
  ZMatrix boundary2(gens * n, n);
  const auto relator = surface_relator(cover.genus());
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t cur = s;
    for (const Letter &l : relator) {
      if (l.sign > 0) {
        boundary2(l.gen * n + cur, s) += 1;
        cur = step[l.gen](static_cast<Point>(cur + 1)) - 1;
      } else {
        std::size_t prev = cover.images()[l.gen](static_cast<Point>(cur + 1)) - 1;
        boundary2(l.gen * n + prev, s) -= 1;
        cur = prev;
      }
    }
    if (cur != s)
      throw RelationNotSatisfied("relator does not lift to a closed loop");
  }

  ZMatrix b = to_z(basis);
  ZMatrix edge_basis(gens * n, gens * m);
  for (std::size_t x = 0; x < gens; ++x)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < m; ++k)
        edge_basis(x * n + i, x * m + k) = b(i, k);

  const std::size_t rank1 = rank(boundary1 * edge_basis);
  const std::size_t rank2 = rank(boundary2 * b);
  return gens * m - rank1 - rank2;
}

std::size_t cw_h1_dim(const MonodromyCover &cover) {
  return cw_h1_dim(cover, IntMatrix::identity(cover.degree()));
}

long long DimensionTable::sum_d() const {
  long long s = 0;
  for (const auto &e : entries)
    s += e.d;
  return s;
}

DimensionTable dimension_table(const ProductCover &pc, std::size_t dense_limit) {
  DimensionTable t;
  t.n = pc.n();
  t.ell = pc.ell();
  t.genus = pc.genus();
  const MonodromyCover &total = pc.total();

  auto comps = components(total);
  t.components = comps.components.size();
  for (const auto &c : comps.components)
    t.genus_total += c.genus;

  CorrespondenceOperator op = build_operator(pc.n(), pc.ell(), UINT64_MAX);
  auto equiv = verify_equivariance(op, pc);
  if (!equiv.all)
    throw NotInvariant("operator does not commute with the monodromy");

  for (const auto &c : comps.components) {
    Point rep = c.sheets.front();
    std::size_t inside = 0;
    for (std::size_t u : pc.fiber().neighbours(rep - 1))
      if (std::binary_search(c.sheets.begin(), c.sheets.end(),
                             static_cast<Point>(u + 1)))
        ++inside;
    t.h0_trace += static_cast<std::int64_t>(inside);
  }

  LinearAction action = permutation_action(total);
  t.h1_full_fox = twisted_h1_dim(action);
  t.h1_full_cw = cw_h1_dim(total);
  t.routes_agree = t.h1_full_fox == t.h1_full_cw;

  EigenDecomposition ed = eigen_decompose(op, dense_limit);
  for (const auto &comp : ed.components) {
    DimensionEntry e;
    e.r = comp.r;
    e.eigenvalue = comp.eigenvalue;
    auto cols = pivot_columns(to_z(comp.numerator));
    IntMatrix basis = select_columns(comp.numerator, cols);
    e.eigenspace_dim = cols.size();
    e.h1_fox = twisted_h1_dim(restrict_action(action, to_q(basis)));
    e.h1_cw = cw_h1_dim(total, basis);
    if (e.h1_fox % 2 != 0)
      t.even = false;
    if (e.h1_fox != e.h1_cw)
      t.routes_agree = false;
    e.d = static_cast<long long>(e.h1_fox / 2);
    t.entries.push_back(e);
  }
  return t;
}

namespace {

long long ipow(long long base, std::size_t exp) {
  long long r = 1;
  for (std::size_t i = 0; i < exp; ++i)
    r *= base;
  return r;
}

FormulaCheck make_check(std::string id, std::string statement, long long lhs,
                        long long rhs, bool applicable, std::string note = {}) {
  FormulaCheck c;
  c.id = std::move(id);
  c.statement = std::move(statement);
  c.lhs = std::to_string(lhs);
  c.rhs = std::to_string(rhs);
  c.note = std::move(note);
  if (!applicable)
    c.status = FormulaStatus::HypothesisNotMet;
  else
    c.status = lhs == rhs ? FormulaStatus::Pass : FormulaStatus::Fail;
  return c;
}

} // namespace

std::vector<FormulaCheck> verify_formulas(const DimensionTable &t) {
  std::vector<FormulaCheck> out;
  const long long n = static_cast<long long>(t.n);
  const long long g = t.genus;
  const std::size_t ell = t.ell;
  const bool connected = t.components == 1;
  const std::string not_irreducible =
      connected ? "" : "hypothesis not met: C has " + std::to_string(t.components) +
                           " components";

  out.push_back(make_check("dims.sum_genus", "sum_r d_r = genus of C", t.sum_d(),
                           t.genus_total, true));
  {
    long long lhs = 0;
    for (const auto &e : t.entries)
      lhs += e.eigenvalue * e.d;
    out.push_back(make_check("dims.trace_h0",
                             "sum_r (n r - l) d_r = trace of D on H^0(C)", lhs,
                             t.h0_trace, true));
    out.push_back(make_check("dims.trace", "sum_r (n r - l) d_r = l (n - 1)", lhs,
                             static_cast<long long>(ell) * (n - 1), connected,
                             not_irreducible));
  }
  {
    long long lhs = 0;
    for (std::size_t r = 0; r < ell; ++r)
      lhs += t.entries[r].d;
    out.push_back(make_check("dims.eqn1", "d_0 + ... + d_{l-1} = (n^l - 1)(g - 1)",
                             lhs, (ipow(n, ell) - 1) * (g - 1), connected,
                             not_irreducible));
  }
  {
    long long lhs = 0;
    for (std::size_t r = 1; r < ell; ++r)
      lhs += static_cast<long long>(r) * t.entries[r].d;
    out.push_back(make_check("dims.eqn2",
                             "d_1 + 2 d_2 + ... + (l-1) d_{l-1} = l (n^{l-1} - 1)(g - 1)",
                             lhs,
                             static_cast<long long>(ell) * (ipow(n, ell - 1) - 1) * (g - 1),
                             connected, not_irreducible));
  }
  for (std::size_t r = 0; r < ell; ++r) {
    long long rhs = binomial(ell, r).get_si() * ipow(n - 1, ell - r) * (g - 1);
    out.push_back(make_check("dims.closed_form.r" + std::to_string(r),
                             "d_" + std::to_string(r) + " = C(l," + std::to_string(r) +
                                 ") (n-1)^(l-" + std::to_string(r) + ") (g-1)",
                             t.entries[r].d, rhs, connected, not_irreducible));
  }
  out.push_back(make_check("dims.top", "d_l = g", t.entries[ell].d, g, connected,
                           not_irreducible));
  {
    long long count = 0;
    for (std::size_t r = 0; r <= ell; ++r)
      if (t.entries[r].d > 0)
        count += binomial(ell, r).get_si();
    std::string note = not_irreducible;
    if (note.empty() && g < 2)
      note = "hypothesis not met: base genus below 2";
    out.push_back(make_check("dims.factor_count",
                             "sum over r with d_r > 0 of C(l, r) = 2^l", count,
                             ipow(2, ell), connected && g >= 2, note));
  }
  return out;
}

} // namespace symcorr
