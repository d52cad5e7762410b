#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace symcorr {

/// Points are 1-based: a permutation of degree n acts on {1, ..., n}.
using Point = std::uint32_t;

class PermError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A bijection of {1..n}, stored as its one-line image array.
///
/// Composition is right-to-left: (p * q)(i) == p(q(i)). Every word in the
/// library (commutators, monodromy relators) is evaluated under this rule.
class Perm {
public:
  Perm() = default;

  static Perm identity(std::size_t degree);
  /// Throws PermError unless `images` is a bijection of {1..images.size()}.
  static Perm from_images(std::vector<Point> images);
  /// Cycles may omit fixed points; each cycle lists distinct points in 1..degree.
  static Perm from_cycles(std::size_t degree,
                          const std::vector<std::vector<Point>> &cycles);
  /// Accepts cycle notation "(1 2 3)(4 5)", "(a,b,c)", "()" or a one-line
  /// image array "[2 1 3]". Letters a..l stand for 1..12.
  static Perm parse(std::string_view text, std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point i) const { return images_[i - 1]; }
  const std::vector<Point> &images() const { return images_; }

  Perm inverse() const;
  bool is_identity() const;
  /// Canonical cycle string: cycles start at their smallest point, ordered by
  /// that point, fixed points omitted, "()" for the identity.
  std::string to_cycle_string() const;

  friend bool operator==(const Perm &, const Perm &) = default;
  friend auto operator<=>(const Perm &, const Perm &) = default;

private:
  explicit Perm(std::vector<Point> images) : images_(std::move(images)) {}
  std::vector<Point> images_;
};

/// (p * q)(i) = p(q(i)). Throws PermError on degree mismatch.
Perm compose(const Perm &p, const Perm &q);
inline Perm operator*(const Perm &p, const Perm &q) { return compose(p, q); }
/// [p, q] = p q p^-1 q^-1.
Perm commutator(const Perm &p, const Perm &q);

class PermGroup {
public:
  /// Throws PermError for an empty generator list or mixed degrees.
  PermGroup(std::vector<Perm> generators);
  PermGroup(std::size_t degree, std::vector<Perm> generators);

  std::size_t degree() const { return degree_; }
  const std::vector<Perm> &generators() const { return generators_; }

private:
  std::size_t degree_ = 0;
  std::vector<Perm> generators_;
};

/// Sorted orbit of `point`. Throws PermError if point is outside 1..n.
std::vector<Point> orbit(const PermGroup &group, Point point);
/// All orbits, each sorted, ordered by smallest element.
std::vector<std::vector<Point>> orbits(const PermGroup &group);
bool is_transitive(const PermGroup &group);

/// Schreier-Sims stabilizer chain with base 1, 2, ..., n (redundant base
/// points allowed), so level i describes the stabilizer of 1..i-1.
class StabilizerChain {
public:
  explicit StabilizerChain(const PermGroup &group);

  /// Sizes of the basic orbits, one per base point 1..n.
  const std::vector<std::size_t> &basic_orbit_sizes() const {
    return orbit_sizes_;
  }
  mpz_class order() const;
  /// Membership test by sifting.
  bool contains(const Perm &p) const;

private:
  struct Level {
    Point base = 0;
    std::vector<Perm> gens;
    // transversal[p] maps the base point to p; empty optional when p is
    // outside the basic orbit.
    std::vector<std::optional<Perm>> transversal;
  };

  void rebuild_orbit(Level &level) const;
  // Returns the level index where sifting stopped, or levels_.size() when the
  // residue fixes every base point.
  std::size_t sift(Perm &h, std::size_t from) const;

  std::size_t degree_;
  std::vector<Level> levels_;
  std::vector<std::size_t> orbit_sizes_;
};

mpz_class group_order(const PermGroup &group);

/// Exhaustive closure; throws PermError once more than `limit` elements are
/// found.
std::uint64_t closure_order(const PermGroup &group, std::uint64_t limit = 10000);

/// n (n-1) ... (n-k+1), or nullopt when it exceeds 64 bits.
std::optional<std::uint64_t> injective_tuple_count(std::size_t n, std::size_t k);

/// Orbit test on injective k-tuples. Throws PermError if k is outside 1..n.
bool is_k_transitive_by_tuples(const PermGroup &group, std::size_t k);
/// Same question answered from the basic orbits of the stabilizer chain.
bool is_k_transitive_by_chain(const PermGroup &group, std::size_t k);

/// Injective k-tuples above this count are handled by the chain method.
inline constexpr std::uint64_t kTupleOrbitLimit = 4'000'000;

bool is_k_transitive(const PermGroup &group, std::size_t k);
/// Largest k with is_k_transitive true; 0 for an intransitive group.
std::size_t max_transitivity(const PermGroup &group);

} // namespace symcorr
