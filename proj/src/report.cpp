#include "symcorr/report.hpp"

#include <sstream>

namespace symcorr {

const char *to_string(CheckStatus status) {
  switch (status) {
  case CheckStatus::Pass: return "pass";
  case CheckStatus::Fail: return "fail";
  case CheckStatus::Flagged: return "flagged";
  case CheckStatus::HypothesisNotMet: return "hypothesis-not-met";
  }
  return "unknown";
}

Check &Report::add(std::string id, std::string statement, bool ok, Json values,
                   std::string detail) {
  return add(std::move(id), std::move(statement),
             ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(values),
             std::move(detail));
}

Check &Report::add(std::string id, std::string statement, CheckStatus status,
                   Json values, std::string detail) {
  checks.push_back(Check{std::move(id), std::move(statement), status,
                         std::move(values), std::move(detail)});
  return checks.back();
}

std::size_t Report::count(CheckStatus status) const {
  std::size_t c = 0;
  for (const auto &ch : checks)
    if (ch.status == status)
      ++c;
  return c;
}

int Report::exit_code() const { return count(CheckStatus::Fail) > 0 ? 1 : 0; }

Json Report::to_json() const {
  Json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["info"] = info;
  Json arr = Json::array();
  for (const auto &c : checks) {
    Json cj;
    cj["id"] = c.id;
    cj["operation"] = operation_for(c.id);
    cj["statement"] = c.statement;
    cj["status"] = to_string(c.status);
    cj["values"] = c.values;
    if (!c.detail.empty())
      cj["detail"] = c.detail;
    arr.push_back(std::move(cj));
  }
  j["checks"] = std::move(arr);
  j["summary"] = {{"pass", count(CheckStatus::Pass)},
                  {"fail", count(CheckStatus::Fail)},
                  {"flagged", count(CheckStatus::Flagged)},
                  {"hypothesis_not_met", count(CheckStatus::HypothesisNotMet)},
                  {"exit_code", exit_code()}};
  return j;
}

std::string Report::render_json() const { return to_json().dump(2) + "\n"; }

std::string Report::render_text() const {
  std::ostringstream os;
  os << "command: " << command << '\n';
  for (const auto &[k, v] : inputs.items())
    os << "  " << k << " = " << v.dump() << '\n';
  for (const auto &[k, v] : info.items())
    os << k << ": " << v.dump() << '\n';
  for (const auto &c : checks) {
    std::string tag = to_string(c.status);
    for (auto &ch : tag)
      ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    os << '[' << tag << "] " << c.id << ": " << c.statement << '\n';
    if (!c.values.empty())
      os << "    " << c.values.dump() << '\n';
    if (!c.detail.empty())
      os << "    " << c.detail << '\n';
  }
  os << "summary: " << count(CheckStatus::Pass) << " pass, "
     << count(CheckStatus::Fail) << " fail, " << count(CheckStatus::Flagged)
     << " flagged, " << count(CheckStatus::HypothesisNotMet)
     << " hypothesis not met\n";
  return os.str();
}

const std::map<std::string, std::string> &claim_registry() {
  static const std::map<std::string, std::string> reg = {
      {"cover.valid", "monodromy.validate"},
      {"cover.euler", "monodromy.components"},
      {"transitivity.methods_agree", "perm_core.is_k_transitive"},
      {"transitivity.order_by_closure", "perm_core.group_order"},
      {"irreducibility.product_transitive", "fiberprod.irreducibility_report"},
      {"irreducibility.injective_tuples", "fiberprod.irreducibility_report"},
      {"irreducibility.agrees_with_monodromy", "fiberprod.irreducibility_report"},
      {"correspondence.symmetric", "fiberprod.check_symmetric"},
      {"correspondence.fixed_point_free", "fiberprod.check_fixed_point_free"},
      {"correspondence.bidegree", "fiberprod.bidegree"},
      {"operator.structure", "corr_operator.check_structure"},
      {"operator.equivariant", "corr_operator.verify_equivariance"},
      {"minpoly.vanishes", "corr_operator.verify_min_equation"},
      {"minpoly.minimal", "corr_operator.verify_min_equation"},
      {"projectors", "corr_operator.verify_projectors"},
      {"subquotient", "corr_operator.verify_subquotient_action"},
      {"torsion.divides_bound", "corr_operator.torsion_exponents"},
      {"torsion.divides_global", "corr_operator.torsion_exponents"},
      {"dims.h1_full", "homology.twisted_h1_dim"},
      {"dims.routes_agree", "homology.dimension_table"},
      {"dims.even", "homology.dimension_table"},
      {"dims.sum_genus", "homology.verify_formulas"},
      {"dims.trace_h0", "homology.verify_formulas"},
      {"dims.trace", "homology.verify_formulas"},
      {"dims.eqn1", "homology.verify_formulas"},
      {"dims.eqn2", "homology.verify_formulas"},
      {"dims.closed_form", "homology.verify_formulas"},
      {"dims.top", "homology.verify_formulas"},
      {"dims.factor_count", "homology.verify_formulas"},
      {"atlas.check", "atlas.check_entry"},
      {"search.found", "cli.search"},
  };
  return reg;
}

std::string operation_for(const std::string &id) {
  const auto &reg = claim_registry();
  std::string key = id;
  while (true) {
    if (auto it = reg.find(key); it != reg.end())
      return it->second;
    auto dot = key.rfind('.');
    if (dot == std::string::npos)
      return {};
    key.resize(dot);
  }
}

} // namespace symcorr
