#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "symcorr/fiber_space.hpp"
#include "symcorr/monodromy.hpp"

namespace symcorr {

class ProductCover;

/// Throws InvalidCover for an empty list, mismatched (g, n), or an invalid
/// factor; ResourceLimitError when n^l exceeds max_fiber.
ProductCover product_cover(std::vector<MonodromyCover> factors,
                           std::uint64_t max_fiber = kDefaultMaxFiber);

/// Fiber product of l covers of equal degree n over the same base. Its
/// monodromy acts coordinatewise on the fiber {1..n}^l.
class ProductCover {
public:
  const std::vector<MonodromyCover> &factors() const { return factors_; }
  const FiberSpace &fiber() const { return fiber_; }
  /// The fiber product as a single cover of degree n^l.
  const MonodromyCover &total() const { return total_; }
  std::size_t n() const { return fiber_.n(); }
  std::size_t ell() const { return fiber_.ell(); }
  int genus() const { return total_.genus(); }
  bool factors_equal() const;

private:
  friend ProductCover product_cover(std::vector<MonodromyCover>, std::uint64_t);
  ProductCover(std::vector<MonodromyCover> factors, FiberSpace fiber,
               MonodromyCover total)
      : factors_(std::move(factors)), fiber_(fiber), total_(std::move(total)) {}

  std::vector<MonodromyCover> factors_;
  FiberSpace fiber_;
  MonodromyCover total_;
};

/// Coordinatewise action p_1 x ... x p_l on the fiber.
Perm product_perm(const FiberSpace &fiber, const std::vector<Perm> &factors);

struct IrreducibilityReport {
  /// Orbits of the product action on all of {1..n}^l.
  std::size_t product_orbit_count = 0;
  bool product_transitive = false;
  bool factors_equal = false;
  /// Max transitivity of each factor's monodromy group.
  std::vector<std::size_t> factor_max_transitivity;
  /// Equal factors only: the common monodromy group is l-transitive.
  std::optional<bool> monodromy_l_transitive;
  /// Equal factors only: the product action restricted to tuples with
  /// pairwise distinct coordinates (an invariant set) is transitive.
  std::optional<bool> injective_tuples_transitive;
  /// Product transitivity disagrees with l-transitivity of the monodromy.
  bool discrepancy = false;
};

IrreducibilityReport irreducibility_report(const ProductCover &pc);

/// Finite integer combination of fiber tuples, keyed by fiber index.
class DivisorOnC {
public:
  DivisorOnC() = default;

  void add(std::size_t index, const mpz_class &coefficient);
  const std::map<std::size_t, mpz_class> &terms() const { return terms_; }
  mpz_class degree() const;

  friend bool operator==(const DivisorOnC &, const DivisorOnC &) = default;

private:
  std::map<std::size_t, mpz_class> terms_; // zero coefficients never stored
};

/// Each tuple goes to the sum of the l(n-1) tuples differing from it in
/// exactly one coordinate, extended linearly. Throws std::out_of_range for a
/// term outside the fiber.
DivisorOnC apply_D(const FiberSpace &fiber, const DivisorOnC &divisor);
inline DivisorOnC apply_D(const ProductCover &pc, const DivisorOnC &divisor) {
  return apply_D(pc.fiber(), divisor);
}

/// Ordered pairs (t, u) of fiber indices with t, u differing in exactly one
/// coordinate, sorted.
std::vector<std::pair<std::size_t, std::size_t>>
correspondence_as_set(const FiberSpace &fiber);

bool check_symmetric(const std::vector<std::pair<std::size_t, std::size_t>> &pairs);
bool check_fixed_point_free(
    const std::vector<std::pair<std::size_t, std::size_t>> &pairs);
/// Degrees of the two projections; nullopt when a projection's fiber
/// cardinality varies over the points of C.
std::pair<std::optional<std::size_t>, std::optional<std::size_t>>
bidegree(const FiberSpace &fiber,
         const std::vector<std::pair<std::size_t, std::size_t>> &pairs);

} // namespace symcorr
