#include "symcorr/cli.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "symcorr/corr_operator.hpp"
#include "symcorr/homology.hpp"

namespace symcorr {

namespace {

std::string join(const std::vector<std::size_t> &v, const char *sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

Json mpz_list(const std::vector<mpz_class> &v) {
  Json j = Json::array();
  for (const auto &x : v)
    j.push_back(x.get_str());
  return j;
}

void merge(Report &dst, const Report &src, const std::string &section) {
  if (!src.info.empty())
    dst.info[section] = src.info;
  for (const auto &c : src.checks)
    dst.checks.push_back(c);
}

void add_irreducibility(Report &rep, const ProductCover &pc) {
  IrreducibilityReport ir = irreducibility_report(pc);
  Json v = {{"product_orbits", ir.product_orbit_count},
            {"factors_equal", ir.factors_equal},
            {"factor_max_transitivity", ir.factor_max_transitivity}};
  rep.add("irreducibility.product_transitive",
          "the product monodromy is transitive on {1..n}^l (C irreducible)",
          ir.product_transitive ? CheckStatus::Pass : CheckStatus::Flagged, v,
          ir.product_transitive
              ? ""
              : "C is reducible: " + std::to_string(ir.product_orbit_count) +
                    " components");
  if (!ir.factors_equal)
    return;
  Json w = {{"monodromy_l_transitive", *ir.monodromy_l_transitive},
            {"injective_tuples_transitive", *ir.injective_tuples_transitive}};
  rep.add("irreducibility.injective_tuples",
          "monodromy l-transitive iff the product action is transitive on "
          "injective l-tuples",
          *ir.monodromy_l_transitive == *ir.injective_tuples_transitive, w);
  Json x = {{"product_transitive", ir.product_transitive},
            {"monodromy_l_transitive", *ir.monodromy_l_transitive}};
  std::string detail;
  if (ir.discrepancy)
    detail = "equal factors: the tuples with a repeated coordinate form "
             "further orbits, so l-transitivity does not make C irreducible";
  rep.add("irreducibility.agrees_with_monodromy",
          "product transitivity agrees with l-transitivity of the monodromy",
          ir.discrepancy ? CheckStatus::Flagged : CheckStatus::Pass, x, detail);
}

void add_structure(Report &rep, const CorrespondenceOperator &op) {
  OperatorStructure s = check_structure(op);
  const std::int64_t deg = static_cast<std::int64_t>(op.ell() * (op.n() - 1));
  Json v = {{"symmetric", s.symmetric},
            {"zero_diagonal", s.zero_diagonal},
            {"zero_one_entries", s.zero_one_entries},
            {"row_sum", s.row_sum ? Json(*s.row_sum) : Json(nullptr)},
            {"expected_row_sum", deg},
            {"matches_divisor_map", s.matches_divisor_map}};
  bool ok = s.symmetric && s.zero_diagonal && s.zero_one_entries && s.row_sum &&
            *s.row_sum == deg && s.matches_divisor_map;
  rep.add("operator.structure",
          "M is symmetric 0/1 with zero diagonal, row sums l(n-1), and column t "
          "is D(t)",
          ok, v);
}

void add_correspondence(Report &rep, const FiberSpace &fiber) {
  auto pairs = correspondence_as_set(fiber);
  rep.add("correspondence.symmetric", "D is symmetric", check_symmetric(pairs));
  rep.add("correspondence.fixed_point_free", "D misses the diagonal",
          check_fixed_point_free(pairs));
  auto [d1, d2] = bidegree(fiber, pairs);
  const std::size_t deg = fiber.ell() * (fiber.n() - 1);
  Json v = {{"d1", d1 ? Json(*d1) : Json(nullptr)},
            {"d2", d2 ? Json(*d2) : Json(nullptr)},
            {"expected", deg}};
  rep.add("correspondence.bidegree", "D has bidegree (l(n-1), l(n-1))",
          d1 && d2 && *d1 == deg && *d2 == deg, v);
}

void add_minpoly(Report &rep, const CorrespondenceOperator &op, const RunOptions &opt) {
  MinEquationReport m = verify_min_equation(op, 4'000'000, opt.threads);
  rep.info["roots"] = m.roots;
  rep.info["strategy"] = m.strategy;
  rep.add("minpoly.vanishes", "prod_{r=0}^{l} (M - (n r - l) I) = 0", m.vanishes,
          {{"witness_column",
            m.witness_column ? Json(*m.witness_column) : Json(nullptr)}});
  Json omit = Json::array();
  for (const auto &s : m.omit_one)
    omit.push_back({{"omitted_root", s.omitted_root},
                    {"nonzero", s.nonzero},
                    {"witness_column",
                     s.witness_column ? Json(*s.witness_column) : Json(nullptr)}});
  rep.add("minpoly.minimal", "every product omitting one root is nonzero",
          m.minimal, {{"omit_one", omit}});
}

void add_projectors(Report &rep, const CorrespondenceOperator &op,
                    const RunOptions &opt) {
  Json expected = Json::array();
  for (std::size_t r = 0; r <= op.ell(); ++r) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), op.n() - 1, op.ell() - r);
    expected.push_back(mpz_class(binomial(op.ell(), r) * p).get_str());
  }
  rep.info["expected_multiplicities"] = expected;
  if (op.dimension() > opt.dense_limit) {
    rep.info["multiplicities"] = "not computed: n^l above the dense limit " +
                                 std::to_string(opt.dense_limit);
    return;
  }
  EigenDecomposition ed = eigen_decompose(op, opt.dense_limit);
  std::vector<std::size_t> mult;
  for (const auto &c : ed.components)
    mult.push_back(c.multiplicity);
  rep.info["multiplicities"] = mult;
  ProjectorChecks pc = verify_projectors(op, ed);
  Json v = {{"idempotent", pc.idempotent},
            {"orthogonal", pc.orthogonal},
            {"sum_identity", pc.sum_identity},
            {"eigen_relation", pc.eigen_relation},
            {"multiplicities_match", pc.multiplicities_match},
            {"ranks_sum", pc.ranks_sum},
            {"trace_equals_rank", pc.trace_equals_rank},
            {"trace_identity", pc.trace_identity}};
  rep.add("projectors",
          "Lagrange projectors are orthogonal idempotents summing to I with rank "
          "C(l,r)(n-1)^(l-r)",
          pc.all(), v);
}

std::vector<std::vector<std::size_t>> all_subsets(std::size_t ell) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << ell); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < ell; ++i)
      if (mask & (std::size_t{1} << i))
        s.push_back(i + 1);
    out.push_back(s);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

void add_subquotients(Report &rep, const CorrespondenceOperator &op,
                      std::vector<std::vector<std::size_t>> subsets) {
  for (auto &s : subsets) {
    SubquotientReport sq = verify_subquotient_action(op, s);
    Json v = {{"r", sq.r},
              {"eigenvalue", sq.eigenvalue},
              {"dim_VJ", sq.dim_vj},
              {"dim_lower", sq.dim_lower}};
    rep.add("subquotient.J" + join(sq.subset, "-"),
            "(M - (" + std::to_string(sq.eigenvalue) + ") I) V_J lies in the sum "
            "of V_I over proper subsets I of J = {" + join(sq.subset, ",") + "}",
            sq.contained, v);
  }
}

void add_dims(Report &rep, const ProductCover &pc, const RunOptions &opt) {
  DimensionTable t = dimension_table(pc, opt.dense_limit);
  Json rows = Json::array();
  for (const auto &e : t.entries)
    rows.push_back({{"r", e.r},
                    {"eigenvalue", e.eigenvalue},
                    {"eigenspace_dim", e.eigenspace_dim},
                    {"h1_fox", e.h1_fox},
                    {"h1_cw", e.h1_cw},
                    {"d", e.d}});
  std::vector<long long> d;
  for (const auto &e : t.entries)
    d.push_back(e.d);
  rep.info["d"] = d;
  rep.info["table"] = rows;
  rep.info["components"] = t.components;
  rep.info["genus_C"] = t.genus_total;
  rep.add("dims.h1_full",
          "dim H^1 of the full fiber module = 2 genus(C), by both routes",
          t.h1_full_fox == t.h1_full_cw &&
              static_cast<long long>(t.h1_full_fox) == 2 * t.genus_total,
          {{"fox", t.h1_full_fox}, {"cw", t.h1_full_cw}, {"two_genus", 2 * t.genus_total}});
  rep.add("dims.routes_agree",
          "Fox-calculus and cellular H^1 dimensions agree on every eigenspace",
          t.routes_agree);
  rep.add("dims.even", "dim H^1 of every eigenspace is even", t.even);
  for (const auto &f : verify_formulas(t)) {
    CheckStatus st = f.status == FormulaStatus::Pass   ? CheckStatus::Pass
                     : f.status == FormulaStatus::Fail ? CheckStatus::Fail
                                                       : CheckStatus::HypothesisNotMet;
    rep.add(f.id, f.statement, st, {{"lhs", f.lhs}, {"rhs", f.rhs}}, f.note);
  }
}

} // namespace

Report validate_report(const CoverFile &file, const RunOptions &) {
  Report rep;
  rep.command = "validate";
  if (file.has_cover()) {
    rep.info["genus"] = *file.genus;
    rep.info["degree"] = *file.degree;
    rep.info["ell"] = file.ell();
    auto covers = factor_covers(file);
    for (std::size_t i = 0; i < covers.size(); ++i) {
      ValidationReport v = validate(covers[i]);
      std::string detail;
      for (const auto &f : v.failures)
        detail += (detail.empty() ? "" : "; ") + f;
      rep.add("cover.valid.factor" + std::to_string(i + 1),
              "factor " + std::to_string(i + 1) +
                  " has 2g images of degree n satisfying the surface relation",
              v.valid, Json::object(), detail);
    }
  }
  rep.info["groups"] = file.groups.size();
  return rep;
}

Report transitivity_report(const PermGroup &group, std::size_t k,
                           const std::string &source) {
  Report rep;
  rep.command = "transitivity";
  rep.inputs = {{"source", source}, {"k", k}};
  const std::size_t n = group.degree();
  if (k < 1 || k > n)
    throw std::invalid_argument("k must lie in 1.." + std::to_string(n));
  mpz_class order = group_order(group);
  bool trans = is_k_transitive(group, k);
  rep.info["degree"] = n;
  rep.info["order"] = order.get_str();
  rep.info["k_transitive"] = trans;
  rep.info["max_transitivity"] = max_transitivity(group);
  auto count = injective_tuple_count(n, k);
  if (n <= 12 && count && *count <= kTupleOrbitLimit) {
    bool tuples = is_k_transitive_by_tuples(group, k);
    bool chain = is_k_transitive_by_chain(group, k);
    rep.add("transitivity.methods_agree",
            "orbit count on injective k-tuples agrees with the stabilizer chain",
            tuples == chain, {{"tuples", tuples}, {"chain", chain}});
  }
  if (order <= 10000) {
    std::uint64_t closure = closure_order(group, 10000);
    rep.add("transitivity.order_by_closure",
            "stabilizer-chain order equals the exhaustive closure size",
            mpz_class(std::to_string(closure)) == order,
            {{"chain", order.get_str()}, {"closure", closure}});
  }
  return rep;
}

Report components_report(const CoverFile &file, const RunOptions &opt) {
  Report rep;
  rep.command = "components";
  MonodromyCover base = base_cover(file);
  ComponentReport bc = components(base);
  Json base_info = Json::array();
  for (const auto &c : bc.components)
    base_info.push_back({{"sheets", c.sheets}, {"degree", c.degree}, {"genus", c.genus}});
  rep.info["base_cover"] = base_info;

  ProductCover pc = to_product(file, opt.max_fiber);
  ComponentReport cc = components(pc.total());
  Json comp = Json::array();
  long long euler = 0;
  for (const auto &c : cc.components) {
    auto tuple = pc.fiber().tuple(c.sheets.front() - 1);
    comp.push_back({{"degree", c.degree},
                    {"genus", c.genus},
                    {"first_tuple", std::vector<std::size_t>(tuple.begin(), tuple.end())}});
    euler += 2 * c.genus - 2;
  }
  rep.info["C_components"] = comp;
  rep.info["genus_C"] = genus_total(pc.total());
  const long long expect =
      static_cast<long long>(pc.fiber().size()) * (2LL * pc.genus() - 2);
  rep.add("cover.euler",
          "sum over components of (2 genus - 2) = n^l (2g - 2)", euler == expect,
          {{"lhs", euler}, {"rhs", expect}});
  add_irreducibility(rep, pc);
  return rep;
}

Report minpoly_report(std::size_t n, std::size_t ell, const RunOptions &opt) {
  Report rep;
  rep.command = "minpoly";
  rep.inputs = {{"n", n}, {"ell", ell}};
  CorrespondenceOperator op = build_operator(n, ell, opt.max_fiber);
  add_structure(rep, op);
  add_minpoly(rep, op, opt);
  add_projectors(rep, op, opt);
  return rep;
}

Report dims_report(const CoverFile &file, const RunOptions &opt) {
  Report rep;
  rep.command = "dims";
  ProductCover pc = to_product(file, opt.max_fiber);
  rep.inputs = {{"n", pc.n()}, {"ell", pc.ell()}, {"genus", pc.genus()}};
  add_dims(rep, pc, opt);
  return rep;
}

Report torsion_report(std::size_t n, std::size_t ell) {
  Report rep;
  rep.command = "torsion";
  rep.inputs = {{"n", n}, {"ell", ell}};
  TorsionSystem t = torsion_exponents(n, ell);
  rep.info["invariant_factors"] = mpz_list(t.invariant_factors);
  rep.info["exponents"] = mpz_list(t.exponents);
  rep.info["bounds"] = mpz_list(t.bounds);
  rep.info["global_bound"] = t.global_bound.get_str();
  for (std::size_t r = 1; r <= ell; ++r) {
    const std::string rs = std::to_string(r);
    rep.add("torsion.divides_bound.r" + rs,
            "e_" + rs + " divides " + rs + "! (l-" + rs + ")! n^l",
            t.divides_bound[r - 1],
            {{"e", t.exponents[r - 1].get_str()}, {"bound", t.bounds[r - 1].get_str()}});
    rep.add("torsion.divides_global.r" + rs, "e_" + rs + " divides l! n^l",
            t.divides_global[r - 1],
            {{"e", t.exponents[r - 1].get_str()}, {"bound", t.global_bound.get_str()}});
  }
  return rep;
}

Report subquotient_report(std::size_t n, std::size_t ell,
                          const std::vector<std::size_t> &subset,
                          const RunOptions &opt) {
  Report rep;
  rep.command = "subquotient";
  rep.inputs = {{"n", n}, {"ell", ell}};
  if (!subset.empty())
    rep.inputs["subset"] = subset;
  CorrespondenceOperator op = build_operator(n, ell, opt.max_fiber);
  if (op.dimension() > opt.dense_limit)
    throw ResourceLimitError("n^l = " + std::to_string(op.dimension()) +
                                 " exceeds the dense limit " +
                                 std::to_string(opt.dense_limit),
                             op.dimension(), opt.dense_limit);
  add_subquotients(rep, op, subset.empty() ? all_subsets(ell)
                                           : std::vector<std::vector<std::size_t>>{subset});
  return rep;
}

Report atlas_check_report(const std::vector<AtlasEntry> &entries) {
  Report rep;
  rep.command = "atlas check";
  for (const auto &e : entries) {
    AtlasCheck c = check_entry(e);
    Json v = {{"degree", e.degree},
              {"order", c.order.get_str()},
              {"expected_order",
               e.expected_order ? Json(e.expected_order->get_str()) : Json(nullptr)},
              {"max_transitivity", c.max_transitivity},
              {"expected_max_transitivity", e.expected_max_transitivity}};
    std::string diff = c.diff;
    if (!diff.empty() && diff.back() == '\n')
      diff.pop_back();
    rep.add("atlas.check." + e.name, e.name + " has the recorded order and transitivity",
            c.passed(), v, diff);
  }
  return rep;
}

Report full_report(const CoverFile &file, const RunOptions &opt) {
  Report rep;
  rep.command = "report";
  ProductCover pc = to_product(file, opt.max_fiber);
  rep.inputs = {{"label", file.label ? Json(*file.label) : Json(nullptr)},
                {"genus", pc.genus()},
                {"n", pc.n()},
                {"ell", pc.ell()}};
  merge(rep, validate_report(file, opt), "validate");
  merge(rep, components_report(file, opt), "components");

  Report op_rep;
  CorrespondenceOperator op = build_operator(pc.n(), pc.ell(), opt.max_fiber);
  add_correspondence(op_rep, pc.fiber());
  add_structure(op_rep, op);
  EquivarianceReport eq = verify_equivariance(op, pc);
  std::vector<bool> commutes = eq.commutes;
  op_rep.add("operator.equivariant", "M commutes with the monodromy of every generator",
             eq.all, {{"commutes", commutes}});
  add_minpoly(op_rep, op, opt);
  add_projectors(op_rep, op, opt);
  if (op.dimension() <= opt.dense_limit)
    add_subquotients(op_rep, op, all_subsets(pc.ell()));
  merge(rep, op_rep, "operator");

  Report dims;
  add_dims(dims, pc, opt);
  merge(rep, dims, "dims");
  merge(rep, torsion_report(pc.n(), pc.ell()), "torsion");
  return rep;
}

namespace {

Perm random_perm(std::size_t n, std::mt19937_64 &rng) {
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), Point{1});
  for (std::size_t i = n; i > 1; --i)
    std::swap(img[i - 1], img[rng() % i]);
  return Perm::from_images(std::move(img));
}

Perm power(const Perm &p, std::size_t e) {
  Perm r = Perm::identity(p.degree());
  for (std::size_t i = 0; i < e; ++i)
    r = r * p;
  return r;
}

} // namespace

SearchResult search_cover(int genus, std::size_t degree, std::size_t k,
                          std::uint64_t seed, std::size_t tries) {
  if (genus < 1)
    throw std::invalid_argument("genus must be at least 1");
  if (degree < 2)
    throw std::invalid_argument("degree must be at least 2");
  if (k < 1 || k > degree)
    throw std::invalid_argument("k must lie in 1.." + std::to_string(degree));
  SearchResult res;
  res.report.command = "search";
  res.report.inputs = {{"genus", genus}, {"degree", degree}, {"k", k},
                       {"seed", seed}, {"tries", tries}};
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 1; attempt <= tries; ++attempt) {
    std::vector<Perm> images;
    int handle = 0;
    // [p, q][q, p] = 1, so pairs of handles carry (p, q), (q, p).
    for (; handle + 1 < genus; handle += 2) {
      Perm p = random_perm(degree, rng), q = random_perm(degree, rng);
      images.insert(images.end(), {p, q, q, p});
    }
    if (handle < genus) {
      Perm p = random_perm(degree, rng);
      images.insert(images.end(), {p, power(p, 1 + rng() % degree)});
    }
    MonodromyCover cover(SurfaceBase(genus), degree, images);
    if (!validate(cover).valid)
      throw std::logic_error("search produced a cover violating the relation");
    if (!is_k_transitive(cover.monodromy_group(), k))
      continue;
    CoverFile f;
    f.label = "search seed " + std::to_string(seed) + " attempt " + std::to_string(attempt);
    f.genus = genus;
    f.degree = degree;
    f.generators = images;
    res.found = f;
    res.report.info["attempt"] = attempt;
    std::vector<std::string> gens;
    for (const auto &p : images)
      gens.push_back(p.to_cycle_string());
    res.report.info["generators"] = gens;
    break;
  }
  res.report.add("search.found",
                 "a relation-satisfying cover with " + std::to_string(k) +
                     "-transitive monodromy was found",
                 res.found.has_value());
  return res;
}

namespace {

std::vector<std::size_t> parse_subset(const std::string &text) {
  std::vector<std::size_t> out;
  std::string tok;
  std::istringstream is(text);
  while (std::getline(is, tok, ',')) {
    std::istringstream ts(tok);
    std::size_t v;
    while (ts >> v)
      out.push_back(v);
    if (!ts.eof())
      throw std::invalid_argument("bad subset '" + text + "'");
  }
  return out;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err) {
  CLI::App app{"Verify symmetric correspondences on fiber products of covers", "symcorr"};
  app.require_subcommand(1);
  RunOptions opt;
  std::string out_path;
  app.add_option("--max-fiber", opt.max_fiber, "Largest fiber size n^l to build")
      ->capture_default_str();
  app.add_option("--dense-limit", opt.dense_limit,
                 "Largest n^l for dense projectors and homology")
      ->capture_default_str();
  app.add_option("--threads", opt.threads, "Worker threads (0 = hardware)");
  app.add_option("--out", out_path, "Also write the report as JSON to this file");

  std::string file;
  std::size_t n = 0, ell = 0, k = 0;
  std::string subset_text, atlas_name, atlas_file, write_path;
  int genus = 2;
  std::uint64_t seed = 1;
  std::size_t tries = 200;

  auto *validate_cmd = app.add_subcommand("validate", "Parse and validate a cover file");
  validate_cmd->add_option("file", file, "Cover file")->required();

  auto *trans_cmd = app.add_subcommand("transitivity", "k-transitivity of a monodromy group");
  trans_cmd->add_option("file", file, "Cover file (base cover monodromy)");
  trans_cmd->add_option("--atlas", atlas_name, "Builtin atlas group instead of a file");
  trans_cmd->add_option("--k", k, "Tuple length")->required();

  auto *comp_cmd = app.add_subcommand("components", "Components of the cover and of C");
  comp_cmd->add_option("file", file, "Cover file")->required();

  auto *minpoly_cmd = app.add_subcommand("minpoly", "Minimal equation and eigen-projectors");
  minpoly_cmd->add_option("--n", n, "Cover degree")->required();
  minpoly_cmd->add_option("--ell", ell, "Number of factors")->required();

  auto *dims_cmd = app.add_subcommand("dims", "Eigen-piece dimensions by twisted homology");
  dims_cmd->add_option("file", file, "Cover file")->required();

  auto *torsion_cmd = app.add_subcommand("torsion", "Torsion exponents of the eigen-lattice");
  torsion_cmd->add_option("--n", n, "Cover degree")->required();
  torsion_cmd->add_option("--ell", ell, "Number of factors")->required();

  auto *sub_cmd = app.add_subcommand("subquotient", "Action of M on the V_J filtration");
  sub_cmd->add_option("--n", n, "Cover degree")->required();
  sub_cmd->add_option("--ell", ell, "Number of factors")->required();
  sub_cmd->add_option("--subset", subset_text, "Comma-separated J; all subsets if omitted");

  auto *atlas_cmd = app.add_subcommand("atlas", "Builtin multiply transitive groups");
  atlas_cmd->require_subcommand(1);
  auto *atlas_list = atlas_cmd->add_subcommand("list", "List entries");
  auto *atlas_check = atlas_cmd->add_subcommand("check", "Recompute orders and transitivity");
  atlas_check->add_option("name", atlas_name, "Entry name; all entries if omitted");
  atlas_check->add_option("--file", atlas_file, "Also check the group records of this file");

  auto *report_cmd = app.add_subcommand("report", "Run every check on a cover file");
  report_cmd->add_option("file", file, "Cover file")->required();

  auto *search_cmd = app.add_subcommand("search", "Random covers with k-transitive monodromy");
  search_cmd->add_option("--genus", genus, "Base genus")->capture_default_str();
  search_cmd->add_option("--degree", n, "Cover degree")->required();
  search_cmd->add_option("--k", k, "Required transitivity")->required();
  search_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  search_cmd->add_option("--tries", tries, "Attempts before giving up")->capture_default_str();
  search_cmd->add_option("--write", write_path, "Write the cover file found here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    Report rep;
    std::string trailer;
    if (*validate_cmd) {
      rep = validate_report(parse_cover_file(file), opt);
    } else if (*trans_cmd) {
      if (file.empty() == atlas_name.empty())
        throw std::invalid_argument("give exactly one of a cover file or --atlas");
      if (!atlas_name.empty()) {
        AtlasEntry e = builtin_entry(atlas_name);
        rep = transitivity_report(PermGroup(e.degree, e.generators), k, e.name);
      } else {
        rep = transitivity_report(base_cover(parse_cover_file(file)).monodromy_group(),
                                  k, file);
      }
    } else if (*comp_cmd) {
      rep = components_report(parse_cover_file(file), opt);
    } else if (*minpoly_cmd) {
      rep = minpoly_report(n, ell, opt);
    } else if (*dims_cmd) {
      rep = dims_report(parse_cover_file(file), opt);
    } else if (*torsion_cmd) {
      rep = torsion_report(n, ell);
    } else if (*sub_cmd) {
      rep = subquotient_report(n, ell, parse_subset(subset_text), opt);
    } else if (*atlas_cmd) {
      if (*atlas_list) {
        for (const auto &e : builtin_entries()) {
          out << e.name << "  degree " << e.degree << "  order "
              << (e.expected_order ? e.expected_order->get_str() : "?")
              << "  max-transitivity " << e.expected_max_transitivity << "  ("
              << e.provenance << ")\n";
          for (const auto &g : e.generators)
            out << "    " << g.to_cycle_string() << '\n';
        }
        return kExitOk;
      }
      std::vector<AtlasEntry> entries;
      if (!atlas_name.empty())
        entries.push_back(builtin_entry(atlas_name));
      else if (atlas_file.empty())
        entries = builtin_entries();
      if (!atlas_file.empty())
        for (const auto &g : parse_cover_file(atlas_file).groups)
          entries.push_back(to_atlas_entry(g));
      rep = atlas_check_report(entries);
    } else if (*report_cmd) {
      rep = full_report(parse_cover_file(file), opt);
    } else if (*search_cmd) {
      SearchResult sr = search_cover(genus, n, k, seed, tries);
      rep = std::move(sr.report);
      if (sr.found) {
        trailer = serialize(*sr.found);
        if (!write_path.empty()) {
          std::ofstream w(write_path);
          if (!(w << trailer))
            throw std::runtime_error("cannot write '" + write_path + "'");
        }
      }
    }
    out << rep.render_text();
    if (!trailer.empty())
      out << trailer;
    if (!out_path.empty()) {
      std::ofstream js(out_path);
      if (!(js << rep.render_json())) {
        err << "error: cannot write '" << out_path << "'\n";
        return kExitUsage;
      }
    }
    return rep.exit_code();
  } catch (const ResourceLimitError &e) {
    err << "resource limit exceeded: " << e.what() << " (requested " << e.requested()
        << ", limit " << e.limit() << ")\n";
    return kExitResourceLimit;
  } catch (const ArithmeticOverflow &e) {
    err << "resource limit exceeded: " << e.what() << '\n';
    return kExitResourceLimit;
  } catch (const CoverParseError &e) {
    err << (file.empty() ? atlas_file : file) << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

} // namespace symcorr
