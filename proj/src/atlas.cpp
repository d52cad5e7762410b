#include "symcorr/atlas.hpp"

#include <stdexcept>

#include "symcorr/exact.hpp"

namespace symcorr {

namespace {

Perm cycle(std::size_t n, Point first, Point last) {
  std::vector<Point> c;
  for (Point p = first; p <= last; ++p)
    c.push_back(p);
  return Perm::from_cycles(n, {c});
}

AtlasEntry make(std::string name, std::size_t degree,
                const std::vector<std::string> &gens,
                std::optional<mpz_class> order, std::size_t max_trans,
                std::string provenance) {
  AtlasEntry e;
  e.name = std::move(name);
  e.degree = degree;
  for (const auto &g : gens)
    e.generators.push_back(Perm::parse(g, degree));
  e.expected_order = std::move(order);
  e.expected_max_transitivity = max_trans;
  e.provenance = std::move(provenance);
  return e;
}

} // namespace

AtlasEntry symmetric_entry(std::size_t n) {
  if (n < 2)
    throw std::invalid_argument("S_n entry needs n >= 2");
  AtlasEntry e;
  e.name = "S" + std::to_string(n);
  e.degree = n;
  e.generators = {cycle(n, 1, static_cast<Point>(n)), cycle(n, 1, 2)};
  e.expected_order = factorial(n);
  e.expected_max_transitivity = n;
  e.provenance = "n-cycle and transposition (1 2)";
  return e;
}

AtlasEntry alternating_entry(std::size_t n) {
  if (n < 3)
    throw std::invalid_argument("A_n entry needs n >= 3");
  AtlasEntry e;
  e.name = "A" + std::to_string(n);
  e.degree = n;
  // (1..n) is even for odd n; for even n use the (n-1)-cycle (2..n).
  if (n % 2 == 1) {
    e.generators = {cycle(n, 1, static_cast<Point>(n)), cycle(n, 1, 3)};
    e.provenance = "n-cycle and 3-cycle (1 2 3)";
  } else {
    e.generators = {cycle(n, 2, static_cast<Point>(n)), cycle(n, 1, 3)};
    e.provenance = "(n-1)-cycle (2 .. n) and 3-cycle (1 2 3)";
  }
  e.expected_order = factorial(n) / 2;
  e.expected_max_transitivity = n - 2;
  return e;
}

std::vector<AtlasEntry> builtin_entries() {
  std::vector<AtlasEntry> out;
  for (std::size_t n = 2; n <= 12; ++n)
    out.push_back(symmetric_entry(n));
  for (std::size_t n = 3; n <= 12; ++n)
    out.push_back(alternating_entry(n));
  out.push_back(make("PSL(2,7):2", 8,
                     {"(a,b,c,d)(e,f,g,h)", "(a,f,c)(d,e,g)", "(e,f)(d,h)(b,c)"},
                     mpz_class(336), 3,
                     "transcribed verbatim from the catalog of multiply "
                     "transitive groups, letters a..h = 1..8"));
  out.push_back(make("PSL(2,11):2", 12,
                     {"(g,b,c,i,d)(j,e,h,f,l)", "(a,b,c)(d,e,f)(g,h,i)(j,k,l)",
                      "(a,i)(d,g)(e,j)(h,k)(c,f)"},
                     mpz_class(1320), 3,
                     "transcribed verbatim from the catalog of multiply "
                     "transitive groups, letters a..l = 1..12"));
  out.push_back(make("M11", 11,
                     {"(1 2 3 4 5 6 7 8 9 10 11)", "(3 7 11 8)(4 10 5 6)"},
                     mpz_class(7920), 4,
                     "standard generators: the 11-cycle and (3 7 11 8)(4 10 5 6)"));
  out.push_back(make("M12", 12,
                     {"(1 2 3 4 5 6 7 8 9 10 11)", "(3 7 11 8)(4 10 5 6)",
                      "(1 12)(2 11)(3 6)(4 8)(5 9)(7 10)"},
                     mpz_class(95040), 5,
                     "M11 generators plus (1 12)(2 11)(3 6)(4 8)(5 9)(7 10)"));
  return out;
}

AtlasEntry builtin_entry(const std::string &name) {
  for (auto &e : builtin_entries())
    if (e.name == name)
      return e;
  throw std::out_of_range("no atlas entry named '" + name + "'");
}

AtlasCheck check_entry(const AtlasEntry &entry) {
  AtlasCheck c;
  c.name = entry.name;
  PermGroup g(entry.degree, entry.generators);
  c.order = group_order(g);
  c.max_transitivity = max_transitivity(g);
  if (entry.expected_order && *entry.expected_order != c.order) {
    c.order_ok = false;
    c.diff += "order: expected " + entry.expected_order->get_str() + ", computed " +
              c.order.get_str() + "\n";
  }
  if (entry.expected_max_transitivity != c.max_transitivity) {
    c.transitivity_ok = false;
    c.diff += "max_transitivity: expected " +
              std::to_string(entry.expected_max_transitivity) + ", computed " +
              std::to_string(c.max_transitivity) + "\n";
  }
  return c;
}

} // namespace symcorr
