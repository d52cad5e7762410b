#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "symcorr/perm.hpp"

namespace symcorr {

class ResourceLimitError : public std::runtime_error {
public:
  ResourceLimitError(const std::string &what, std::uint64_t requested,
                     std::uint64_t limit)
      : std::runtime_error(what), requested_(requested), limit_(limit) {}
  std::uint64_t requested() const { return requested_; }
  std::uint64_t limit() const { return limit_; }

private:
  std::uint64_t requested_;
  std::uint64_t limit_;
};

inline constexpr std::uint64_t kDefaultMaxFiber = 100'000;

/// The index set {1..n}^l of a fiber-product fiber.
///
/// Tuples are enumerated row-major with the first coordinate most
/// significant: (j_1, ..., j_l) has index sum (j_i - 1) n^(l - i), so
/// (1,..,1) is index 0 and (n,..,n) is index n^l - 1.
class FiberSpace {
public:
  /// Throws std::invalid_argument for n < 2 or l < 1, ResourceLimitError when
  /// n^l exceeds max_fiber.
  FiberSpace(std::size_t n, std::size_t ell,
             std::uint64_t max_fiber = kDefaultMaxFiber);

  std::size_t n() const { return n_; }
  std::size_t ell() const { return ell_; }
  std::size_t size() const { return size_; }
  /// n^(l - 1 - i): index step of coordinate i (0-based).
  std::size_t stride(std::size_t coord) const { return strides_[coord]; }

  std::size_t index(const std::vector<Point> &tuple) const;
  std::vector<Point> tuple(std::size_t index) const;
  /// 0-based value of coordinate `coord` of the tuple at `index`.
  std::size_t digit(std::size_t index, std::size_t coord) const {
    return (index / strides_[coord]) % n_;
  }

  /// Indices of the l(n-1) tuples differing from `index` in exactly one
  /// coordinate, in increasing order of coordinate then value.
  std::vector<std::size_t> neighbours(std::size_t index) const;

private:
  std::size_t n_, ell_, size_;
  std::vector<std::size_t> strides_;
};

} // namespace symcorr
