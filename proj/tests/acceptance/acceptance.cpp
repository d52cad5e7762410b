// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "symcorr/atlas.hpp"
#include "symcorr/cli.hpp"
#include "symcorr/corr_operator.hpp"
#include "symcorr/cover_file.hpp"
#include "symcorr/homology.hpp"

using namespace symcorr;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;

  void expect(bool cond, const std::string &what) {
    if (!cond) {
      ok = false;
      if (note.size() < 400)
        note += (note.empty() ? "" : "; ") + what;
    }
  }
};

std::string fixture(const std::string &name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

std::vector<std::string> good_fixtures() {
  std::vector<std::string> out;
  for (const auto &e : std::filesystem::directory_iterator(FIXTURE_DIR)) {
    auto name = e.path().filename().string();
    if (name.rfind("bad_", 0) == 0 || name == "groups.cover")
      continue;
    out.push_back(name);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct GridPoint {
  std::size_t n, ell;
};

std::vector<GridPoint> grid() {
  std::vector<GridPoint> g;
  for (std::size_t n = 2; n <= 5; ++n)
    for (std::size_t ell = 1; ell <= 3; ++ell) {
      std::size_t N = 1;
      for (std::size_t i = 0; i < ell; ++i)
        N *= n;
      if (N <= 10000)
        g.push_back({n, ell});
    }
  return g;
}

std::string label(std::size_t n, std::size_t ell) {
  return "(n,l)=(" + std::to_string(n) + "," + std::to_string(ell) + ")";
}

mpz_class expected_multiplicity(std::size_t n, std::size_t ell, std::size_t r) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), n - 1, ell - r);
  return binomial(ell, r) * p;
}

Outcome minimal_equation() {
  Outcome o;
  for (auto [n, ell] : grid()) {
    auto rep = verify_min_equation(build_operator(n, ell));
    o.expect(rep.vanishes, "product nonzero at " + label(n, ell));
    o.expect(rep.minimal, "a sub-product vanishes at " + label(n, ell));
  }
  return o;
}

Outcome multiplicities() {
  Outcome o;
  for (auto [n, ell] : grid()) {
    auto op = build_operator(n, ell);
    auto ed = eigen_decompose(op);
    std::size_t sum = 0;
    for (const auto &c : ed.components) {
      sum += c.multiplicity;
      o.expect(mpz_class(std::to_string(c.multiplicity)) == expected_multiplicity(n, ell, c.r),
               "rank P_" + std::to_string(c.r) + " at " + label(n, ell));
    }
    o.expect(sum == op.dimension(), "ranks do not sum to n^l at " + label(n, ell));
  }
  return o;
}

Outcome structure() {
  Outcome o;
  for (auto [n, ell] : grid()) {
    auto s = check_structure(build_operator(n, ell));
    o.expect(s.symmetric, "not symmetric at " + label(n, ell));
    o.expect(s.zero_diagonal, "nonzero diagonal at " + label(n, ell));
    o.expect(s.row_sum && *s.row_sum == static_cast<std::int64_t>(ell * (n - 1)),
             "row sums at " + label(n, ell));
  }
  return o;
}

Outcome subquotients() {
  Outcome o;
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t ell = 1; ell <= 3; ++ell) {
      auto op = build_operator(n, ell);
      for (std::size_t mask = 0; mask < (std::size_t{1} << ell); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < ell; ++i)
          if (mask >> i & 1)
            s.push_back(i + 1);
        o.expect(verify_subquotient_action(op, s).contained,
                 "containment fails at " + label(n, ell) + " mask " + std::to_string(mask));
      }
    }
  return o;
}

Outcome dimensions() {
  Outcome o;
  using clock = std::chrono::steady_clock;
  auto timed = [&](const std::string &name) {
    auto t0 = clock::now();
    auto pc = to_product(parse_cover_file(fixture(name)));
    auto t = dimension_table(pc);
    double secs = std::chrono::duration<double>(clock::now() - t0).count();
    o.expect(secs < 10.0, name + " took " + std::to_string(secs) + " s");
    return std::pair{pc.genus(), t};
  };
  auto [g, t] = timed("connected_l2.cover");
  std::vector<long long> d;
  for (const auto &e : t.entries)
    d.push_back(e.d);
  o.expect(d == std::vector<long long>{4, 4, 2}, "connected l=2 fixture dims");
  o.expect(t.sum_d() == 10 && t.genus_total == 10 && cover_genus(9, g) == 10,
           "sum of dims is not g_2 = 10");
  for (const auto &name : good_fixtures()) {
    auto f = parse_cover_file(fixture(name));
    if (f.ell() != 1)
      continue;
    auto [g1, t1] = timed(name);
    if (t1.components != 1)
      continue;
    const long long n = static_cast<long long>(t1.n);
    o.expect(t1.entries[0].d == (n - 1) * (g1 - 1), name + ": d_0");
    o.expect(t1.entries[1].d == g1, name + ": d_1");
  }
  return o;
}

Outcome trace_and_sums() {
  Outcome o;
  std::size_t connected = 0;
  for (const auto &name : good_fixtures()) {
    auto t = dimension_table(to_product(parse_cover_file(fixture(name))));
    if (t.components != 1)
      continue;
    ++connected;
    for (const auto &c : verify_formulas(t))
      if (c.id == "dims.trace" || c.id == "dims.eqn1" || c.id == "dims.eqn2")
        o.expect(c.status == FormulaStatus::Pass,
                 name + ": " + c.id + " " + c.lhs + " != " + c.rhs);
  }
  o.expect(connected >= 5, "too few connected fixtures");
  o.note += (o.note.empty() ? "" : "; ") + std::to_string(connected) + " connected fixtures";
  return o;
}

Outcome torsion() {
  Outcome o;
  for (std::size_t n = 2; n <= 5; ++n)
    for (std::size_t ell = 1; ell <= 4; ++ell) {
      auto t = torsion_exponents(n, ell);
      for (std::size_t r = 1; r <= ell; ++r)
        o.expect(t.divides_bound[r - 1],
                 "e_" + std::to_string(r) + " does not divide its bound at " + label(n, ell));
    }
  auto t = torsion_exponents(2, 2);
  o.expect(t.exponents == std::vector<mpz_class>{4, 8}, "(n,l)=(2,2) exponents");
  return o;
}

Outcome irreducibility() {
  Outcome o;
  std::vector<ProductCover> covers;
  for (const auto &name : good_fixtures())
    covers.push_back(to_product(parse_cover_file(fixture(name))));
  // Equal-factor products from small atlas groups, via (p, q), (q, p) images.
  for (const auto &e : builtin_entries()) {
    if (e.degree > 6 || e.generators.size() < 2)
      continue;
    const Perm &p = e.generators[0], &q = e.generators[1];
    MonodromyCover y(SurfaceBase(2), e.degree, {p, q, q, p});
    for (std::size_t ell = 2; ell <= 3; ++ell)
      covers.push_back(product_cover(std::vector<MonodromyCover>(ell, y)));
  }
  std::size_t equal_checked = 0;
  for (const auto &pc : covers) {
    auto rep = irreducibility_report(pc);
    o.expect(rep.product_transitive == is_transitive(pc.total().monodromy_group()),
             "product transitivity");
    if (!rep.factors_equal)
      continue;
    ++equal_checked;
    if (*rep.monodromy_l_transitive)
      o.expect(*rep.injective_tuples_transitive,
               "l-transitive monodromy but injective tuples not transitive");
    o.expect(*rep.monodromy_l_transitive == *rep.injective_tuples_transitive,
             "injective-tuple transitivity disagrees with l-transitivity");
    if (pc.ell() >= 2)
      o.expect(rep.discrepancy == *rep.monodromy_l_transitive,
               "equal factors with l >= 2 must be reducible");
  }
  auto sigma = to_product(parse_cover_file(fixture("sigma_id.cover")));
  auto rep = irreducibility_report(sigma);
  o.expect(rep.product_orbit_count == 2 && rep.discrepancy, "untwisted n=2 example");
  Report full = full_report(parse_cover_file(fixture("sigma_id.cover")), RunOptions{});
  bool flagged = false;
  for (const auto &c : full.checks)
    if (c.id == "irreducibility.agrees_with_monodromy")
      flagged = c.status == CheckStatus::Flagged;
  o.expect(flagged, "discrepancy not flagged in the report");
  o.note += (o.note.empty() ? "" : "; ") + std::to_string(equal_checked) +
            " equal-factor products";
  return o;
}

Outcome atlas() {
  Outcome o;
  auto psl7 = check_entry(builtin_entry("PSL(2,7):2"));
  o.expect(psl7.order == 336 && psl7.max_transitivity == 3, "PSL(2,7):2");
  auto psl11 = check_entry(builtin_entry("PSL(2,11):2"));
  o.expect(psl11.order == 1320 && psl11.max_transitivity == 3, "PSL(2,11):2");
  o.expect(check_entry(builtin_entry("M12")).max_transitivity == 5, "M12");
  for (std::size_t n = 3; n <= 10; ++n) {
    o.expect(check_entry(symmetric_entry(n)).max_transitivity == n,
             "S" + std::to_string(n));
    o.expect(check_entry(alternating_entry(n)).max_transitivity == n - 2,
             "A" + std::to_string(n));
  }
  o.expect(check_entry(symmetric_entry(2)).max_transitivity == 2, "S2");
  return o;
}

Outcome oracles() {
  Outcome o;
  std::size_t groups = 0;
  auto compare_orders = [&](const PermGroup &g, const std::string &what) {
    mpz_class order = group_order(g);
    if (order > 10000)
      return;
    ++groups;
    o.expect(order == mpz_class(std::to_string(closure_order(g))), what + ": chain != closure");
  };
  for (const auto &name : good_fixtures()) {
    auto pc = to_product(parse_cover_file(fixture(name)));
    auto t = dimension_table(pc);
    o.expect(t.routes_agree && t.h1_full_fox == t.h1_full_cw, name + ": Fox != CW");
    for (const auto &f : pc.factors())
      compare_orders(f.monodromy_group(), name);
    compare_orders(pc.total().monodromy_group(), name + " product");
  }
  for (const auto &e : builtin_entries())
    compare_orders(PermGroup(e.degree, e.generators), e.name);
  o.note += (o.note.empty() ? "" : "; ") + std::to_string(groups) + " groups by closure";
  return o;
}

} // namespace

int main() {
  struct Criterion {
    int id;
    const char *name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "minimal equation vanishes and is minimal", minimal_equation},
      {2, "projector ranks C(l,r)(n-1)^(l-r), summing to n^l", multiplicities},
      {3, "row sums l(n-1), symmetric, zero diagonal", structure},
      {4, "subquotient containment for every J", subquotients},
      {5, "dimension pieces on connected fixtures", dimensions},
      {6, "trace formula and the two dimension sums", trace_and_sums},
      {7, "torsion exponents divide their bounds", torsion},
      {8, "irreducibility versus l-transitivity", irreducibility},
      {9, "atlas orders and transitivity thresholds", atlas},
      {10, "Fox vs cellular H^1, chain vs closure order", oracles},
  };
  int failures = 0;
  for (const auto &c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d: %s  %s (%.2f s)%s%s\n", c.id, o.ok ? "PASS" : "FAIL",
                c.name, secs, o.note.empty() ? "" : "  ", o.note.c_str());
    failures += o.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
