#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "symcorr/exact.hpp"
#include "symcorr/fiber_space.hpp"
#include "symcorr/fiberprod.hpp"

namespace symcorr {

/// The correspondence D acting on the fiber module Q^(n^l): entry (t, u) is 1
/// iff the tuples t and u differ in exactly one coordinate. Equivalently
/// sum_i I x .. x (J - I) x .. x I with J the all-ones n x n matrix.
struct CorrespondenceOperator {
  FiberSpace fiber;
  SparseMatrix matrix;

  std::size_t n() const { return fiber.n(); }
  std::size_t ell() const { return fiber.ell(); }
  std::size_t dimension() const { return fiber.size(); }
  /// n r - l for r = 0..l, increasing.
  std::vector<std::int64_t> eigenvalues() const;
};

/// Throws std::invalid_argument for n < 2 or l < 1 and ResourceLimitError
/// when n^l exceeds max_fiber.
CorrespondenceOperator build_operator(std::size_t n, std::size_t ell,
                                      std::uint64_t max_fiber = kDefaultMaxFiber);

struct OperatorStructure {
  bool symmetric = false;
  bool zero_diagonal = false;
  bool zero_one_entries = false;
  /// Common row sum, when every row has the same sum.
  std::optional<std::int64_t> row_sum;
  /// Column t equals the divisor D(t) for every basis tuple t.
  bool matches_divisor_map = false;
};

OperatorStructure check_structure(const CorrespondenceOperator &op);

struct MinEquationReport {
  std::vector<std::int64_t> roots;
  bool vanishes = false;
  /// First column of the full product that is nonzero, when it does not vanish.
  std::optional<std::size_t> witness_column;

  struct SubProduct {
    std::int64_t omitted_root;
    bool nonzero;
    std::optional<std::size_t> witness_column;
  };
  /// Products omitting one root each. If all are nonzero then so is every
  /// product over a strict subset of the roots.
  std::vector<SubProduct> omit_one;
  bool minimal = false;
  std::string strategy;

  bool passed() const { return vanishes && minimal; }
};

/// Evaluates prod_{r=0}^{l} (M - (n r - l) I) exactly.
///
/// The product is first formed by sparse matrix products. When a product
/// could exceed `nnz_budget` entries it is instead applied factor by factor
/// to basis vectors: only to e_0 when M is checked to commute with the
/// coordinatewise action of S_n^l (transitive on the basis, so column 0
/// decides), otherwise to every e_j, split across `threads` workers.
MinEquationReport verify_min_equation(const CorrespondenceOperator &op,
                                      std::size_t nnz_budget = 4'000'000,
                                      unsigned threads = 0,
                                      bool use_symmetry = true);

/// First basis column j with prod_k (M - roots[k] I) e_j != 0, scanning j
/// upward. nullopt when the product is the zero matrix.
std::optional<std::size_t> first_nonzero_column(const SparseMatrix &m,
                                                const std::vector<std::int64_t> &roots);

struct EigenComponent {
  std::size_t r;
  std::int64_t eigenvalue; // n r - l
  /// Projector = numerator / denominator, numerator = prod_{s != r}
  /// (M - lambda_s I), denominator = prod_{s != r} (lambda_r - lambda_s).
  IntMatrix numerator;
  std::int64_t denominator;
  std::size_t multiplicity;          // rank of the projector
  mpz_class expected_multiplicity;   // C(l, r) (n - 1)^(l - r)
};

struct EigenDecomposition {
  std::vector<EigenComponent> components; // ordered by r
  std::size_t dimension = 0;

  QMatrix projector(std::size_t r) const;
};

inline constexpr std::size_t kDefaultDenseLimit = 4096;

/// Projectors by Lagrange interpolation on the roots n r - l. Throws
/// ResourceLimitError above `dense_limit` (dense projectors are n^l x n^l).
EigenDecomposition eigen_decompose(const CorrespondenceOperator &op,
                                   std::size_t dense_limit = kDefaultDenseLimit);

struct ProjectorChecks {
  bool idempotent = true;
  bool orthogonal = true;
  bool sum_identity = true;
  bool eigen_relation = true;  // M P_r = lambda_r P_r
  bool multiplicities_match = true;
  bool ranks_sum = true;       // sum of ranks = n^l
  bool trace_equals_rank = true;
  bool trace_identity = true;  // trace M = 0 = sum lambda_r rank P_r

  bool all() const {
    return idempotent && orthogonal && sum_identity && eigen_relation &&
           multiplicities_match && ranks_sum && trace_equals_rank &&
           trace_identity;
  }
};

ProjectorChecks verify_projectors(const CorrespondenceOperator &op,
                                  const EigenDecomposition &ed);

struct EquivarianceReport {
  std::vector<bool> commutes; // one entry per surface-group generator
  bool all = false;
};

/// Throws std::invalid_argument when (n, l) differ between op and pc.
EquivarianceReport verify_equivariance(const CorrespondenceOperator &op,
                                       const ProductCover &pc);

struct SubquotientReport {
  std::vector<std::size_t> subset; // 1-based, sorted
  std::size_t r = 0;               // |J|
  std::int64_t eigenvalue = 0;     // n (l - r) - l
  std::size_t dim_vj = 0;
  std::size_t dim_lower = 0;       // dim sum_{I < J} V_I
  bool contained = false;
};

/// V_J is spanned by the vectors that are the all-ones vector in each
/// coordinate outside J. Checks (M - (n (l - r) - l) I) V_J lies in the sum
/// of V_I over proper subsets I of J. Throws std::invalid_argument for an
/// index outside 1..l or a repeated index.
SubquotientReport verify_subquotient_action(const CorrespondenceOperator &op,
                                            std::vector<std::size_t> subset);

/// Basis of V_J as integer columns (indicator vectors of the J-coordinates).
IntMatrix subquotient_basis(const FiberSpace &fiber,
                            const std::vector<std::size_t> &subset);

struct TorsionSystem {
  std::size_t n = 0, ell = 0;
  /// Row k, column r (both 1..l, stored 0-based): n^k k! C(r, k).
  ZMatrix relations;
  std::vector<mpz_class> invariant_factors;
  /// e_r: least positive e with e * unit_r in the integer row span.
  std::vector<mpz_class> exponents;
  std::vector<mpz_class> bounds;   // r! (l - r)! n^l
  mpz_class global_bound;          // l! n^l
  std::vector<bool> divides_bound;
  std::vector<bool> divides_global;

  bool all_divide() const;
};

/// Throws std::invalid_argument for n < 2 or l < 1.
TorsionSystem torsion_exponents(std::size_t n, std::size_t ell);

} // namespace symcorr
