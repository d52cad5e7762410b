#include "symcorr/cover_file.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace symcorr {

const char *to_string(ParseErrorKind kind) {
  switch (kind) {
  case ParseErrorKind::Io: return "io";
  case ParseErrorKind::Syntax: return "syntax";
  case ParseErrorKind::GeneratorCount: return "generator-count";
  case ParseErrorKind::SurfaceRelation: return "surface-relation";
  case ParseErrorKind::DegreeMismatch: return "degree-mismatch";
  }
  return "unknown";
}

CoverParseError::CoverParseError(ParseErrorKind kind, std::size_t line,
                                 std::size_t column, const std::string &message)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + to_string(kind) +
                         " error: " + message),
      kind_(kind), line_(line), column_(column), message_(message) {}

namespace {

struct Pos {
  std::size_t line = 0, column = 0;
};

struct Line {
  std::size_t number;
  std::string_view key;
  std::string_view value;
  std::size_t key_col, value_col; // 1-based
};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Splits "key value..." and strips a trailing '#' comment.
std::optional<Line> split_line(std::string_view raw, std::size_t number) {
  if (auto hash = raw.find('#'); hash != std::string_view::npos)
    raw = raw.substr(0, hash);
  std::size_t i = 0;
  while (i < raw.size() && is_space(raw[i]))
    ++i;
  if (i == raw.size())
    return std::nullopt;
  std::size_t k = i;
  while (k < raw.size() && !is_space(raw[k]))
    ++k;
  std::size_t v = k;
  while (v < raw.size() && is_space(raw[v]))
    ++v;
  std::size_t end = raw.size();
  while (end > v && is_space(raw[end - 1]))
    --end;
  return Line{number, raw.substr(i, k - i), raw.substr(v, end - v), i + 1, v + 1};
}

[[noreturn]] void fail(ParseErrorKind kind, const Line &l, std::size_t col,
                       const std::string &msg) {
  throw CoverParseError(kind, l.number, col, msg);
}

[[noreturn]] void syntax(const Line &l, const std::string &msg) {
  fail(ParseErrorKind::Syntax, l, l.key_col, msg);
}

long long parse_int(const Line &l, long long min) {
  std::string s(l.value);
  if (s.empty())
    fail(ParseErrorKind::Syntax, l, l.value_col, "expected an integer after '" +
                                                     std::string(l.key) + "'");
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used != s.size() || !std::isdigit(static_cast<unsigned char>(s[0])))
    fail(ParseErrorKind::Syntax, l, l.value_col, "expected an integer, got '" + s + "'");
  if (v < min)
    fail(ParseErrorKind::Syntax, l, l.value_col,
         std::string(l.key) + " must be at least " + std::to_string(min));
  return v;
}

Perm parse_gen(const Line &l, std::optional<std::size_t> degree) {
  if (!degree)
    syntax(l, "'gen' before 'degree'");
  try {
    return Perm::parse(l.value, *degree);
  } catch (const PermError &e) {
    // Distinguish an out-of-range point from malformed text by retrying with
    // room for any plausible point.
    std::string msg = e.what();
    bool mismatch = msg.find("entries, expected") != std::string::npos;
    if (!mismatch && !l.value.empty() && l.value.front() != '[') {
      try {
        Perm::parse(l.value, 4096);
        mismatch = true;
      } catch (const PermError &) {
      }
    }
    if (mismatch)
      fail(ParseErrorKind::DegreeMismatch, l, l.value_col,
           "generator '" + std::string(l.value) + "' does not act on 1.." +
               std::to_string(*degree));
    fail(ParseErrorKind::Syntax, l, l.value_col, msg);
  }
}

struct GenBlock {
  std::vector<Perm> gens;
  std::optional<Line> first; // position of the first gen line
  std::optional<Line> last;
};

void check_count(const GenBlock &b, int genus, const Line &where) {
  std::size_t want = 2 * static_cast<std::size_t>(genus);
  if (b.gens.size() == want)
    return;
  const Line &at = b.last ? *b.last : where;
  fail(ParseErrorKind::GeneratorCount, at, at.key_col,
       "generator count must be 2*genus = " + std::to_string(want) + ", got " +
           std::to_string(b.gens.size()));
}

void check_relation(const GenBlock &b, int genus, std::size_t degree) {
  MonodromyCover c(SurfaceBase(genus), degree, b.gens);
  Perm rel = c.relator_image();
  if (rel.is_identity())
    return;
  std::string word;
  for (int i = 1; i <= genus; ++i)
    word += "[a" + std::to_string(i) + ",b" + std::to_string(i) + "]";
  fail(ParseErrorKind::SurfaceRelation, *b.first, b.first->key_col,
       "surface relation " + word + " = 1 fails: product is " +
           rel.to_cycle_string());
}

} // namespace

CoverFile parse_cover_text(std::string_view text) {
  CoverFile f;
  bool saw_version = false;
  GenBlock top;
  std::vector<GenBlock> factor_blocks; // aligned with f.factors
  std::optional<Line> genus_line, degree_line;

  enum class State { Top, Factor, Group } state = State::Top;
  GroupRecord group;
  std::optional<Line> group_begin;
  bool group_has_trans = false, group_has_degree = false;
  std::optional<Line> factor_begin;

  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view raw =
        text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
    if (!raw.empty() && raw.back() == '\r')
      raw.remove_suffix(1);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++number;
    auto ol = split_line(raw, number);
    if (!ol)
      continue;
    const Line &l = *ol;
    const std::string key(l.key);

    if (!saw_version) {
      if (key != "cover-format")
        syntax(l, "file must start with 'cover-format 1'");
      f.format_version = static_cast<int>(parse_int(l, 1));
      if (f.format_version != 1)
        fail(ParseErrorKind::Syntax, l, l.value_col,
             "unsupported format version " + std::to_string(f.format_version));
      saw_version = true;
      continue;
    }

    if (state == State::Factor) {
      if (key == "gen") {
        auto &b = factor_blocks.back();
        b.gens.push_back(parse_gen(l, f.degree));
        if (!b.first)
          b.first = l;
        b.last = l;
      } else if (key == "factor" && l.value == "end") {
        f.factors.back() = factor_blocks.back().gens;
        check_count(factor_blocks.back(), *f.genus, l);
        check_relation(factor_blocks.back(), *f.genus, *f.degree);
        state = State::Top;
      } else {
        syntax(l, "only 'gen' lines are allowed inside a factor block");
      }
      continue;
    }

    if (state == State::Group) {
      if (key == "name") {
        if (l.value.empty())
          syntax(l, "empty group name");
        group.name = std::string(l.value);
      } else if (key == "degree") {
        group.degree = static_cast<std::size_t>(parse_int(l, 1));
        group_has_degree = true;
      } else if (key == "gen") {
        if (!group_has_degree)
          syntax(l, "'gen' before 'degree' in group record");
        group.generators.push_back(parse_gen(l, group.degree));
      } else if (key == "order") {
        try {
          group.order = mpz_class(std::string(l.value));
        } catch (const std::invalid_argument &) {
          fail(ParseErrorKind::Syntax, l, l.value_col, "bad order");
        }
        if (*group.order < 1)
          fail(ParseErrorKind::Syntax, l, l.value_col, "order must be positive");
      } else if (key == "transitivity") {
        group.transitivity = static_cast<std::size_t>(parse_int(l, 0));
        group_has_trans = true;
      } else if (key == "group" && l.value == "end") {
        if (group.name.empty() || !group_has_degree || !group_has_trans)
          syntax(l, "group record needs 'name', 'degree' and 'transitivity'");
        f.groups.push_back(std::move(group));
        group = GroupRecord{};
        state = State::Top;
      } else {
        syntax(l, "unknown key '" + key + "' in group record");
      }
      continue;
    }

    if (key == "label") {
      f.label = std::string(l.value);
    } else if (key == "notes") {
      f.notes = std::string(l.value);
    } else if (key == "genus") {
      if (f.genus)
        syntax(l, "duplicate 'genus'");
      f.genus = static_cast<int>(parse_int(l, 1));
      genus_line = l;
    } else if (key == "degree") {
      if (f.degree)
        syntax(l, "duplicate 'degree'");
      f.degree = static_cast<std::size_t>(parse_int(l, 2));
      degree_line = l;
    } else if (key == "gen") {
      if (!f.factors.empty())
        syntax(l, "'gen' after the first 'factor' line");
      top.gens.push_back(parse_gen(l, f.degree));
      f.generators.push_back(top.gens.back());
      if (!top.first)
        top.first = l;
      top.last = l;
    } else if (key == "factor") {
      if (!f.genus || !f.degree)
        syntax(l, "'factor' before 'genus' and 'degree'");
      if (f.factors.empty()) {
        check_count(top, *f.genus, l);
        check_relation(top, *f.genus, *f.degree);
      }
      if (l.value == "same") {
        f.factors.emplace_back(std::nullopt);
        factor_blocks.emplace_back();
      } else if (l.value == "begin") {
        f.factors.emplace_back(std::vector<Perm>{});
        factor_blocks.emplace_back();
        factor_begin = l;
        state = State::Factor;
      } else {
        fail(ParseErrorKind::Syntax, l, l.value_col,
             "expected 'same' or 'begin' after 'factor'");
      }
    } else if (key == "group") {
      if (l.value != "begin")
        fail(ParseErrorKind::Syntax, l, l.value_col, "expected 'group begin'");
      group_begin = l;
      group_has_trans = group_has_degree = false;
      state = State::Group;
    } else {
      syntax(l, "unknown key '" + key + "'");
    }
  }

  Line eof{number, "", "", 1, 1};
  if (!saw_version)
    fail(ParseErrorKind::Syntax, eof, 1, "empty file");
  if (state == State::Factor)
    fail(ParseErrorKind::Syntax, *factor_begin, 1, "unterminated factor block");
  if (state == State::Group)
    fail(ParseErrorKind::Syntax, *group_begin, 1, "unterminated group record");
  if (f.genus.has_value() != f.degree.has_value()) {
    const Line &at = genus_line ? *genus_line : *degree_line;
    syntax(at, "'genus' and 'degree' must appear together");
  }
  if (!f.genus) {
    if (top.first)
      syntax(*top.first, "'gen' without 'genus'");
    if (f.groups.empty())
      fail(ParseErrorKind::Syntax, eof, 1, "file holds neither a cover nor a group");
    return f;
  }
  if (f.factors.empty()) {
    check_count(top, *f.genus, eof);
    check_relation(top, *f.genus, *f.degree);
  }
  return f;
}

CoverFile parse_cover_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw CoverParseError(ParseErrorKind::Io, 0, 0, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_cover_text(ss.str());
}

std::string serialize(const CoverFile &f) {
  std::ostringstream os;
  os << "cover-format " << f.format_version << '\n';
  if (f.label)
    os << "label " << *f.label << '\n';
  if (f.notes)
    os << "notes " << *f.notes << '\n';
  if (f.genus) {
    os << "genus " << *f.genus << '\n';
    os << "degree " << *f.degree << '\n';
    for (const auto &g : f.generators)
      os << "gen " << g.to_cycle_string() << '\n';
    for (const auto &fac : f.factors) {
      if (!fac) {
        os << "factor same\n";
        continue;
      }
      os << "factor begin\n";
      for (const auto &g : *fac)
        os << "gen " << g.to_cycle_string() << '\n';
      os << "factor end\n";
    }
  }
  for (const auto &g : f.groups) {
    os << "group begin\n";
    os << "name " << g.name << '\n';
    os << "degree " << g.degree << '\n';
    for (const auto &p : g.generators)
      os << "gen " << p.to_cycle_string() << '\n';
    if (g.order)
      os << "order " << g.order->get_str() << '\n';
    os << "transitivity " << g.transitivity << '\n';
    os << "group end\n";
  }
  return os.str();
}

MonodromyCover base_cover(const CoverFile &f) {
  if (!f.has_cover())
    throw InvalidCover("file holds no cover");
  return MonodromyCover(SurfaceBase(*f.genus), *f.degree, f.generators);
}

std::vector<MonodromyCover> factor_covers(const CoverFile &f) {
  MonodromyCover base = base_cover(f);
  if (f.factors.empty())
    return {base};
  std::vector<MonodromyCover> out;
  for (const auto &fac : f.factors) {
    if (fac)
      out.emplace_back(SurfaceBase(*f.genus), *f.degree, *fac);
    else
      out.push_back(base);
  }
  return out;
}

ProductCover to_product(const CoverFile &f, std::uint64_t max_fiber) {
  return product_cover(factor_covers(f), max_fiber);
}

AtlasEntry to_atlas_entry(const GroupRecord &g) {
  AtlasEntry e;
  e.name = g.name;
  e.degree = g.degree;
  e.generators = g.generators;
  e.expected_order = g.order;
  e.expected_max_transitivity = g.transitivity;
  e.provenance = "user file";
  return e;
}

} // namespace symcorr
