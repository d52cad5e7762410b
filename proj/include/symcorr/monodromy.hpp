#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "symcorr/perm.hpp"

namespace symcorr {

/// Closed orientable surface of genus g >= 1.
struct SurfaceBase {
  int genus = 1;

  explicit SurfaceBase(int g);
  friend bool operator==(const SurfaceBase &, const SurfaceBase &) = default;
};

class InvalidCover : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An unramified degree-n cover of a genus-g surface, given by the images of
/// the standard generators a_1, b_1, ..., a_g, b_g in S_n.
///
/// The images define a homomorphism under right-to-left composition; the
/// surface relation is [a_1, b_1] ... [a_g, b_g] = 1 with
/// [p, q] = p q p^-1 q^-1. Construction only checks shapes; call validate()
/// for the relation.
class MonodromyCover {
public:
  /// Throws InvalidCover if the image count is not 2g or a degree differs.
  MonodromyCover(SurfaceBase base, std::size_t degree, std::vector<Perm> images);

  const SurfaceBase &base() const { return base_; }
  int genus() const { return base_.genus; }
  std::size_t degree() const { return degree_; }
  const std::vector<Perm> &images() const { return images_; }
  const Perm &a(int i) const { return images_[2 * static_cast<std::size_t>(i)]; }
  const Perm &b(int i) const {
    return images_[2 * static_cast<std::size_t>(i) + 1];
  }

  /// Product of commutators, identity iff the relation holds.
  Perm relator_image() const;
  PermGroup monodromy_group() const;

  friend bool operator==(const MonodromyCover &, const MonodromyCover &) = default;

private:
  SurfaceBase base_;
  std::size_t degree_;
  std::vector<Perm> images_;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> failures;
};

ValidationReport validate(const MonodromyCover &cover);

/// Per-orbit data: an orbit of size m is a connected cover of degree m, of
/// genus m(g - 1) + 1.
struct Component {
  std::vector<Point> sheets;
  std::size_t degree;
  long long genus;
};

struct ComponentReport {
  std::vector<Component> components;
  std::size_t fiber_size = 0;
};

/// Throws InvalidCover if the cover fails validation.
ComponentReport components(const MonodromyCover &cover);
bool is_connected(const MonodromyCover &cover);
long long genus_total(const MonodromyCover &cover);

/// Genus of a connected unramified degree-m cover of a genus-g surface.
long long cover_genus(std::size_t degree, int base_genus);

} // namespace symcorr
