#include "symcorr/perm.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace symcorr {

namespace {

std::vector<Point> parse_points(std::string_view body, std::size_t degree) {
  std::vector<Point> pts;
  std::size_t i = 0;
  while (i < body.size()) {
    char c = body[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++i;
      continue;
    }
    Point value = 0;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) {
        value = value * 10 + static_cast<Point>(body[i] - '0');
        if (value > 1'000'000'000u)
          throw PermError("point index too large");
        ++i;
      }
    } else if (c >= 'a' && c <= 'l') {
      value = static_cast<Point>(c - 'a' + 1);
      ++i;
      if (i < body.size() && std::isalnum(static_cast<unsigned char>(body[i])))
        throw PermError(std::string("bad point token near '") + c + "'");
    } else {
      throw PermError(std::string("unexpected character '") + c + "'");
    }
    if (value < 1 || value > degree)
      throw PermError("point " + std::to_string(value) + " outside 1.." +
                      std::to_string(degree));
    pts.push_back(value);
  }
  return pts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

} // namespace

Perm Perm::identity(std::size_t degree) {
  std::vector<Point> images(degree);
  for (std::size_t i = 0; i < degree; ++i)
    images[i] = static_cast<Point>(i + 1);
  return Perm(std::move(images));
}

Perm Perm::from_images(std::vector<Point> images) {
  std::vector<bool> seen(images.size() + 1, false);
  for (Point p : images) {
    if (p < 1 || p > images.size())
      throw PermError("image " + std::to_string(p) + " outside 1.." +
                      std::to_string(images.size()));
    if (seen[p])
      throw PermError("image " + std::to_string(p) + " repeated");
    seen[p] = true;
  }
  return Perm(std::move(images));
}

Perm Perm::from_cycles(std::size_t degree,
                       const std::vector<std::vector<Point>> &cycles) {
  Perm result = identity(degree);
  for (const auto &cycle : cycles) {
    std::vector<Point> images = identity(degree).images_;
    std::set<Point> distinct(cycle.begin(), cycle.end());
    if (distinct.size() != cycle.size())
      throw PermError("cycle repeats a point");
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      Point from = cycle[i];
      Point to = cycle[(i + 1) % cycle.size()];
      if (from < 1 || from > degree)
        throw PermError("point " + std::to_string(from) + " outside 1.." +
                        std::to_string(degree));
      images[from - 1] = to;
    }
    // Cycles in a product apply right to left.
    result = result * Perm(std::move(images));
  }
  return result;
}

Perm Perm::parse(std::string_view text, std::size_t degree) {
  text = trim(text);
  if (text.empty() || text == "id" || text == "()")
    return identity(degree);
  if (text.front() == '[') {
    if (text.back() != ']')
      throw PermError("unterminated image array");
    std::vector<Point> images =
        parse_points(text.substr(1, text.size() - 2), degree);
    if (images.size() != degree)
      throw PermError("image array has " + std::to_string(images.size()) +
                      " entries, expected " + std::to_string(degree));
    return from_images(std::move(images));
  }
  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(')
      throw PermError(std::string("expected '(' but found '") + text[i] + "'");
    std::size_t close = text.find(')', i);
    if (close == std::string_view::npos)
      throw PermError("unterminated cycle");
    std::string_view body = text.substr(i + 1, close - i - 1);
    if (body.find('(') != std::string_view::npos)
      throw PermError("nested '(' in cycle");
    auto pts = parse_points(body, degree);
    if (!pts.empty())
      cycles.push_back(std::move(pts));
    i = close + 1;
  }
  return from_cycles(degree, cycles);
}

Perm Perm::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    inv[images_[i] - 1] = static_cast<Point>(i + 1);
  return Perm(std::move(inv));
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i + 1)
      return false;
  return true;
}

std::string Perm::to_cycle_string() const {
  std::ostringstream os;
  std::vector<bool> done(images_.size() + 1, false);
  bool any = false;
  for (Point start = 1; start <= images_.size(); ++start) {
    if (done[start] || (*this)(start) == start)
      continue;
    any = true;
    os << '(';
    Point p = start;
    bool first = true;
    while (!done[p]) {
      done[p] = true;
      if (!first)
        os << ' ';
      os << p;
      first = false;
      p = (*this)(p);
    }
    os << ')';
  }
  if (!any)
    return "()";
  return os.str();
}

Perm compose(const Perm &p, const Perm &q) {
  if (p.degree() != q.degree())
    throw PermError("degree mismatch in composition: " +
                    std::to_string(p.degree()) + " vs " +
                    std::to_string(q.degree()));
  std::vector<Point> images(p.degree());
  for (std::size_t i = 0; i < images.size(); ++i)
    images[i] = p(q.images()[i]);
  return Perm::from_images(std::move(images));
}

Perm commutator(const Perm &p, const Perm &q) {
  return p * q * p.inverse() * q.inverse();
}

PermGroup::PermGroup(std::vector<Perm> generators)
    : generators_(std::move(generators)) {
  if (generators_.empty())
    throw PermError("a group needs at least one generator");
  degree_ = generators_.front().degree();
  for (const auto &g : generators_)
    if (g.degree() != degree_)
      throw PermError("generators of different degrees");
}

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> generators)
    : degree_(degree), generators_(std::move(generators)) {
  if (generators_.empty())
    generators_.push_back(Perm::identity(degree));
  for (const auto &g : generators_)
    if (g.degree() != degree_)
      throw PermError("generator degree " + std::to_string(g.degree()) +
                      " differs from group degree " + std::to_string(degree_));
}

std::vector<Point> orbit(const PermGroup &group, Point point) {
  if (point < 1 || point > group.degree())
    throw PermError("point " + std::to_string(point) + " outside 1.." +
                    std::to_string(group.degree()));
  std::vector<bool> seen(group.degree() + 1, false);
  std::vector<Point> out{point};
  seen[point] = true;
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto &g : group.generators()) {
      Point q = g(out[head]);
      if (!seen[q]) {
        seen[q] = true;
        out.push_back(q);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Point>> orbits(const PermGroup &group) {
  std::vector<std::vector<Point>> result;
  std::vector<bool> covered(group.degree() + 1, false);
  for (Point p = 1; p <= group.degree(); ++p) {
    if (covered[p])
      continue;
    auto orb = orbit(group, p);
    for (Point q : orb)
      covered[q] = true;
    result.push_back(std::move(orb));
  }
  return result;
}

bool is_transitive(const PermGroup &group) {
  return group.degree() > 0 && orbit(group, 1).size() == group.degree();
}

// ---------------------------------------------------------------------------
// Stabilizer chain

StabilizerChain::StabilizerChain(const PermGroup &group)
    : degree_(group.degree()), levels_(group.degree()) {
  for (std::size_t i = 0; i < degree_; ++i)
    levels_[i].base = static_cast<Point>(i + 1);

  for (const auto &g : group.generators()) {
    if (g.is_identity())
      continue;
    std::size_t first_moved = 0;
    while (g.images()[first_moved] == first_moved + 1)
      ++first_moved;
    for (std::size_t l = 0; l <= first_moved; ++l)
      levels_[l].gens.push_back(g);
  }
  for (auto &level : levels_)
    rebuild_orbit(level);

  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(degree_) - 1;
  while (i >= 0) {
    Level &level = levels_[static_cast<std::size_t>(i)];
    bool complete = true;
    for (Point p = 1; p <= degree_ && complete; ++p) {
      if (!level.transversal[p])
        continue;
      for (std::size_t gi = 0; gi < level.gens.size(); ++gi) {
        const Perm &s = level.gens[gi];
        Perm h = level.transversal[s(p)]->inverse() * s * *level.transversal[p];
        if (h.is_identity())
          continue;
        std::size_t j = sift(h, static_cast<std::size_t>(i) + 1);
        if (j < degree_) {
          for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= j; ++l) {
            levels_[l].gens.push_back(h);
            rebuild_orbit(levels_[l]);
          }
          i = static_cast<std::ptrdiff_t>(j);
          complete = false;
          break;
        }
      }
    }
    if (complete)
      --i;
  }

  for (const auto &level : levels_) {
    std::size_t count = 0;
    for (const auto &t : level.transversal)
      count += t.has_value();
    orbit_sizes_.push_back(count);
  }
}

void StabilizerChain::rebuild_orbit(Level &level) const {
  level.transversal.assign(degree_ + 1, std::nullopt);
  level.transversal[level.base] = Perm::identity(degree_);
  std::vector<Point> queue{level.base};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Point p = queue[head];
    for (const auto &s : level.gens) {
      Point q = s(p);
      if (!level.transversal[q]) {
        level.transversal[q] = s * *level.transversal[p];
        queue.push_back(q);
      }
    }
  }
}

std::size_t StabilizerChain::sift(Perm &h, std::size_t from) const {
  for (std::size_t j = from; j < levels_.size(); ++j) {
    const Level &level = levels_[j];
    Point p = h(level.base);
    if (!level.transversal[p])
      return j;
    h = level.transversal[p]->inverse() * h;
  }
  return levels_.size();
}

mpz_class StabilizerChain::order() const {
  mpz_class result = 1;
  for (std::size_t s : orbit_sizes_)
    result *= static_cast<unsigned long>(s);
  return result;
}

bool StabilizerChain::contains(const Perm &p) const {
  if (p.degree() != degree_)
    return false;
  Perm h = p;
  return sift(h, 0) == levels_.size() && h.is_identity();
}

mpz_class group_order(const PermGroup &group) {
  return StabilizerChain(group).order();
}

std::uint64_t closure_order(const PermGroup &group, std::uint64_t limit) {
  std::set<Perm> seen;
  std::vector<Perm> queue{Perm::identity(group.degree())};
  seen.insert(queue.front());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto &g : group.generators()) {
      Perm next = g * queue[head];
      if (seen.insert(next).second) {
        if (seen.size() > limit)
          throw PermError("closure exceeds limit of " + std::to_string(limit) +
                          " elements");
        queue.push_back(std::move(next));
      }
    }
  }
  return seen.size();
}

std::optional<std::uint64_t> injective_tuple_count(std::size_t n,
                                                   std::size_t k) {
  if (k > n)
    return 0;
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (__builtin_mul_overflow(count, static_cast<std::uint64_t>(n - i), &count))
      return std::nullopt;
  }
  return count;
}

namespace {

// Ranks injective k-tuples of {1..n} in lexicographic order.
class TupleRanker {
public:
  TupleRanker(std::size_t n, std::size_t k) : n_(n), k_(k), weights_(k) {
    for (std::size_t i = 0; i < k; ++i)
      weights_[i] = *injective_tuple_count(n - i - 1, k - i - 1);
  }

  std::uint64_t rank(const std::vector<Point> &t) const {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < k_; ++i) {
      std::uint64_t smaller_unused = t[i] - 1;
      for (std::size_t j = 0; j < i; ++j)
        if (t[j] < t[i])
          --smaller_unused;
      r += smaller_unused * weights_[i];
    }
    return r;
  }

  void unrank(std::uint64_t r, std::vector<Point> &t,
              std::vector<bool> &used) const {
    std::fill(used.begin(), used.end(), false);
    for (std::size_t i = 0; i < k_; ++i) {
      std::uint64_t c = r / weights_[i];
      r %= weights_[i];
      Point p = 1;
      for (;; ++p) {
        if (used[p])
          continue;
        if (c == 0)
          break;
        --c;
      }
      used[p] = true;
      t[i] = p;
    }
  }

  std::size_t n() const { return n_; }

private:
  std::size_t n_, k_;
  std::vector<std::uint64_t> weights_;
};

void check_k(const PermGroup &group, std::size_t k) {
  if (k < 1 || k > group.degree())
    throw PermError("k = " + std::to_string(k) + " outside 1.." +
                    std::to_string(group.degree()));
}

} // namespace

bool is_k_transitive_by_tuples(const PermGroup &group, std::size_t k) {
  check_k(group, k);
  const std::size_t n = group.degree();
  auto total = injective_tuple_count(n, k);
  if (!total || *total > std::uint64_t{1} << 32)
    throw PermError("too many injective tuples for the orbit method");

  TupleRanker ranker(n, k);
  std::vector<bool> seen(*total, false);
  std::vector<std::uint32_t> queue;
  queue.reserve(static_cast<std::size_t>(*total));
  queue.push_back(0); // (1, 2, ..., k)
  seen[0] = true;

  std::vector<Point> t(k), image(k);
  std::vector<bool> used(n + 1);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    ranker.unrank(queue[head], t, used);
    for (const auto &g : group.generators()) {
      for (std::size_t i = 0; i < k; ++i)
        image[i] = g(t[i]);
      std::uint64_t r = ranker.rank(image);
      if (!seen[r]) {
        seen[r] = true;
        queue.push_back(static_cast<std::uint32_t>(r));
      }
    }
  }
  return queue.size() == *total;
}

bool is_k_transitive_by_chain(const PermGroup &group, std::size_t k) {
  check_k(group, k);
  StabilizerChain chain(group);
  const auto &sizes = chain.basic_orbit_sizes();
  for (std::size_t i = 0; i < k; ++i)
    if (sizes[i] != group.degree() - i)
      return false;
  return true;
}

bool is_k_transitive(const PermGroup &group, std::size_t k) {
  check_k(group, k);
  auto total = injective_tuple_count(group.degree(), k);
  if (total && *total <= kTupleOrbitLimit)
    return is_k_transitive_by_tuples(group, k);
  return is_k_transitive_by_chain(group, k);
}

std::size_t max_transitivity(const PermGroup &group) {
  std::size_t k = 0;
  while (k < group.degree() && is_k_transitive(group, k + 1))
    ++k;
  return k;
}

} // namespace symcorr
