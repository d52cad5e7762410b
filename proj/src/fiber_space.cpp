#include "symcorr/fiber_space.hpp"

namespace symcorr {

FiberSpace::FiberSpace(std::size_t n, std::size_t ell, std::uint64_t max_fiber)
    : n_(n), ell_(ell), size_(1), strides_(ell) {
  if (n < 2)
    throw std::invalid_argument("fiber degree n must be at least 2");
  if (ell < 1)
    throw std::invalid_argument("number of factors l must be at least 1");
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < ell; ++i) {
    if (__builtin_mul_overflow(size, static_cast<std::uint64_t>(n), &size) ||
        size > max_fiber) {
      throw ResourceLimitError("fiber size n^l = " + std::to_string(n) + "^" +
                                   std::to_string(ell) + " exceeds limit " +
                                   std::to_string(max_fiber),
                               size > max_fiber ? size : UINT64_MAX, max_fiber);
    }
  }
  size_ = static_cast<std::size_t>(size);
  std::size_t s = 1;
  for (std::size_t i = ell; i-- > 0;) {
    strides_[i] = s;
    s *= n;
  }
}

std::size_t FiberSpace::index(const std::vector<Point> &tuple) const {
  if (tuple.size() != ell_)
    throw std::out_of_range("tuple has " + std::to_string(tuple.size()) +
                            " coordinates, expected " + std::to_string(ell_));
  std::size_t idx = 0;
  for (std::size_t i = 0; i < ell_; ++i) {
    if (tuple[i] < 1 || tuple[i] > n_)
      throw std::out_of_range("tuple coordinate " + std::to_string(tuple[i]) +
                              " outside 1.." + std::to_string(n_));
    idx += (tuple[i] - 1) * strides_[i];
  }
  return idx;
}

std::vector<Point> FiberSpace::tuple(std::size_t index) const {
  if (index >= size_)
    throw std::out_of_range("fiber index out of range");
  std::vector<Point> t(ell_);
  for (std::size_t i = 0; i < ell_; ++i)
    t[i] = static_cast<Point>(digit(index, i) + 1);
  return t;
}

std::vector<std::size_t> FiberSpace::neighbours(std::size_t index) const {
  std::vector<std::size_t> out;
  out.reserve(ell_ * (n_ - 1));
  for (std::size_t i = 0; i < ell_; ++i) {
    std::size_t d = digit(index, i);
    std::size_t base = index - d * strides_[i];
    for (std::size_t v = 0; v < n_; ++v)
      if (v != d)
        out.push_back(base + v * strides_[i]);
  }
  return out;
}

} // namespace symcorr
