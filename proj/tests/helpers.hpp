#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "symcorr/cover_file.hpp"
#include "symcorr/perm.hpp"

namespace testutil {

inline symcorr::Perm random_perm(std::size_t n, std::mt19937_64 &rng) {
  std::vector<symcorr::Point> img(n);
  std::iota(img.begin(), img.end(), symcorr::Point{1});
  for (std::size_t i = n; i > 1; --i)
    std::swap(img[i - 1], img[rng() % i]);
  return symcorr::Perm::from_images(img);
}

inline std::string fixture(const std::string &name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

inline symcorr::CoverFile load(const std::string &name) {
  return symcorr::parse_cover_file(fixture(name));
}

inline symcorr::Perm P(const std::string &text, std::size_t n) {
  return symcorr::Perm::parse(text, n);
}

} // namespace testutil
