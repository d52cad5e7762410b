#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "symcorr/atlas.hpp"
#include "symcorr/fiberprod.hpp"
#include "symcorr/monodromy.hpp"
#include "symcorr/perm.hpp"

namespace symcorr {

// Line-oriented cover files; the grammar is in docs/cover-format.md.

enum class ParseErrorKind { Io, Syntax, GeneratorCount, SurfaceRelation, DegreeMismatch };

const char *to_string(ParseErrorKind kind);

class CoverParseError : public std::runtime_error {
public:
  CoverParseError(ParseErrorKind kind, std::size_t line, std::size_t column,
                  const std::string &message);

  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string &message() const { return message_; }

private:
  ParseErrorKind kind_;
  std::size_t line_, column_;
  std::string message_;
};

struct GroupRecord {
  std::string name;
  std::size_t degree = 0;
  std::vector<Perm> generators;
  std::optional<mpz_class> order;
  std::size_t transitivity = 0; // expected max transitivity, required

  friend bool operator==(const GroupRecord &, const GroupRecord &) = default;
};

/// An explicit factor carries its own 2g images; nullopt means `same`.
using FactorSpec = std::optional<std::vector<Perm>>;

struct CoverFile {
  int format_version = 1;
  std::optional<std::string> label;
  std::optional<std::string> notes;
  /// Absent in files that only hold group records.
  std::optional<int> genus;
  std::optional<std::size_t> degree;
  std::vector<Perm> generators;
  /// Empty means a single `same` factor.
  std::vector<FactorSpec> factors;
  std::vector<GroupRecord> groups;

  bool has_cover() const { return genus.has_value(); }
  std::size_t ell() const { return factors.empty() ? 1 : factors.size(); }

  friend bool operator==(const CoverFile &, const CoverFile &) = default;
};

CoverFile parse_cover_text(std::string_view text);
/// Io errors are reported at line 0.
CoverFile parse_cover_file(const std::string &path);
std::string serialize(const CoverFile &file);

MonodromyCover base_cover(const CoverFile &file);
std::vector<MonodromyCover> factor_covers(const CoverFile &file);
ProductCover to_product(const CoverFile &file,
                        std::uint64_t max_fiber = kDefaultMaxFiber);
AtlasEntry to_atlas_entry(const GroupRecord &group);

} // namespace symcorr
