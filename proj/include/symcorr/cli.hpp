#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "symcorr/corr_operator.hpp"
#include "symcorr/cover_file.hpp"
#include "symcorr/report.hpp"

namespace symcorr {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResourceLimit = 3;

struct RunOptions {
  std::uint64_t max_fiber = kDefaultMaxFiber;
  std::size_t dense_limit = kDefaultDenseLimit;
  unsigned threads = 0;
};

Report validate_report(const CoverFile &file, const RunOptions &opt);
Report transitivity_report(const PermGroup &group, std::size_t k,
                           const std::string &source);
Report components_report(const CoverFile &file, const RunOptions &opt);
Report minpoly_report(std::size_t n, std::size_t ell, const RunOptions &opt);
Report dims_report(const CoverFile &file, const RunOptions &opt);
Report torsion_report(std::size_t n, std::size_t ell);
/// Every nonempty subset of 1..l when `subset` is empty.
Report subquotient_report(std::size_t n, std::size_t ell,
                          const std::vector<std::size_t> &subset,
                          const RunOptions &opt);
Report atlas_check_report(const std::vector<AtlasEntry> &entries);
/// Every check the other reports make, on one cover file.
Report full_report(const CoverFile &file, const RunOptions &opt);

struct SearchResult {
  Report report;
  std::optional<CoverFile> found;
};

/// Random covers with images (p, q), (q, p) paired across handles (and a
/// commuting pair (p, p^j) on a leftover handle), kept when the monodromy
/// group is k-transitive.
SearchResult search_cover(int genus, std::size_t degree, std::size_t k,
                          std::uint64_t seed, std::size_t tries);

/// Entry point: args excludes the program name. Text report on `out`,
/// diagnostics on `err`; returns the process exit code.
int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err);

} // namespace symcorr
