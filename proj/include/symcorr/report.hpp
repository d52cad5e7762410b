#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace symcorr {

using Json = nlohmann::ordered_json;

/// Flagged marks a property that does not hold but is not a verification
/// failure (e.g. a reducible C); HypothesisNotMet marks an identity whose
/// hypotheses the input does not satisfy.
enum class CheckStatus { Pass, Fail, Flagged, HypothesisNotMet };

const char *to_string(CheckStatus status);

struct Check {
  std::string id;
  std::string statement;
  CheckStatus status = CheckStatus::Pass;
  Json values = Json::object();
  std::string detail;
};

struct Report {
  std::string command;
  Json inputs = Json::object();
  /// Computed data that is not itself a check (tables, orbit data, ...).
  Json info = Json::object();
  std::vector<Check> checks;

  Check &add(std::string id, std::string statement, bool ok, Json values = Json::object(),
             std::string detail = {});
  Check &add(std::string id, std::string statement, CheckStatus status,
             Json values = Json::object(), std::string detail = {});

  std::size_t count(CheckStatus status) const;
  /// 0 when no check failed, 1 otherwise.
  int exit_code() const;

  Json to_json() const;
  std::string render_json() const;
  std::string render_text() const;
};

/// Claim id families and the operation that produces them. An id maps to the
/// entry whose key equals it or is its longest prefix ending at a '.'.
const std::map<std::string, std::string> &claim_registry();
/// Empty string when the id is not registered.
std::string operation_for(const std::string &claim_id);

} // namespace symcorr
