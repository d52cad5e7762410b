#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "symcorr/corr_operator.hpp"
#include "symcorr/exact.hpp"
#include "symcorr/fiberprod.hpp"
#include "symcorr/monodromy.hpp"

namespace symcorr {

class RelationNotSatisfied : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class NotInvariant : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Left action of the genus-g surface group on Q^dim, by the images of
/// a_1, b_1, ..., a_g, b_g (and their inverses).
struct LinearAction {
  int genus = 1;
  std::size_t dim = 0;
  std::vector<QMatrix> images;
  std::vector<QMatrix> inverses;
};

LinearAction trivial_action(int genus);
/// Permutation matrices: the image of x sends e_i to e_{rho(x)(i)}.
LinearAction permutation_action(const MonodromyCover &cover);
/// Action on the span of the columns of `basis` (full column rank), in that
/// basis. Throws NotInvariant if the span is not preserved.
LinearAction restrict_action(const LinearAction &action, const QMatrix &basis);

/// Cochains V -> V^2g -> V of the one-relator presentation:
/// d0(v) = (rho(x_j) v - v)_j and d1(u) = sum_j rho(dR/dx_j) u_j with Fox
/// derivatives of R = [a_1, b_1] ... [a_g, b_g].
struct TwistedComplex {
  int genus = 1;
  std::size_t dim = 0;
  QMatrix d0; // (2g dim) x dim
  QMatrix d1; // dim x (2g dim)
};

/// Throws RelationNotSatisfied unless the action satisfies the surface
/// relation.
TwistedComplex twisted_complex(const LinearAction &action);

/// dim H^1 = dim ker d1 - rank d0, computed exactly.
std::size_t twisted_h1_dim(const LinearAction &action);

/// Cellular chain model of the cover (one vertex, 2g edges and one face over
/// each sheet), restricted to the subcomplex whose coefficients over every
/// cell of the base lie in the span of `basis` (columns, an invariant
/// subspace of Q^degree). Returns dim H_1.
std::size_t cw_h1_dim(const MonodromyCover &cover, const IntMatrix &basis);
std::size_t cw_h1_dim(const MonodromyCover &cover);

struct DimensionEntry {
  std::size_t r = 0;
  std::int64_t eigenvalue = 0; // n r - l
  std::size_t eigenspace_dim = 0;
  std::size_t h1_fox = 0;
  std::size_t h1_cw = 0;
  long long d = 0; // h1_fox / 2
};

struct DimensionTable {
  std::size_t n = 0, ell = 0;
  int genus = 1;
  std::vector<DimensionEntry> entries; // r = 0..l
  std::size_t components = 0;
  long long genus_total = 0;
  std::size_t h1_full_fox = 0;
  std::size_t h1_full_cw = 0;
  /// Trace of D on H^0(C): sum over components of the number of D-images of
  /// a point that stay in its component. Equals l(n-1) when C is connected.
  std::int64_t h0_trace = 0;
  bool even = true;
  bool routes_agree = true;

  long long sum_d() const;
};

DimensionTable dimension_table(const ProductCover &pc,
                               std::size_t dense_limit = kDefaultDenseLimit);

enum class FormulaStatus { Pass, Fail, HypothesisNotMet };

struct FormulaCheck {
  std::string id;
  std::string statement;
  FormulaStatus status = FormulaStatus::Pass;
  std::string lhs;
  std::string rhs;
  std::string note;
};

/// Dimension identities for the eigen-pieces. Identities that assume C
/// irreducible report HypothesisNotMet on disconnected C; the 2^l factor
/// count additionally needs g >= 2.
std::vector<FormulaCheck> verify_formulas(const DimensionTable &table);

} // namespace symcorr
