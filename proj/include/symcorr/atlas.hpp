#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "symcorr/perm.hpp"

namespace symcorr {

struct AtlasEntry {
  std::string name;
  std::size_t degree = 0;
  std::vector<Perm> generators;
  std::optional<mpz_class> expected_order;
  std::size_t expected_max_transitivity = 0;
  /// Where the generators come from.
  std::string provenance;
};

/// S_n and A_n for 2 <= n <= 12 (A_n from n = 3), PSL(2,7):2 on 8 points,
/// PSL(2,11):2 on 12 points, M11 and M12. Letters a..l in the transcribed
/// generators stand for 1..12.
std::vector<AtlasEntry> builtin_entries();

/// Throws std::out_of_range when no builtin entry has that name.
AtlasEntry builtin_entry(const std::string &name);

AtlasEntry symmetric_entry(std::size_t n);
AtlasEntry alternating_entry(std::size_t n);

struct AtlasCheck {
  std::string name;
  mpz_class order;
  std::size_t max_transitivity = 0;
  bool order_ok = true;
  bool transitivity_ok = true;
  /// Empty on success, else one "field: expected X, computed Y" per mismatch.
  std::string diff;

  bool passed() const { return order_ok && transitivity_ok; }
};

AtlasCheck check_entry(const AtlasEntry &entry);

} // namespace symcorr
