#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <variant>

#include "cq/cubature.hpp"
#include "cq/reduce1d.hpp"

namespace cq {

inline constexpr const char* kSchemaVersion = "cq-rule/1";

nlohmann::json distribution_to_json(const Distribution& dist);
Distribution distribution_from_json(const nlohmann::json& j);

nlohmann::json rule_to_json(const QuadratureRule& rule);
QuadratureRule rule_from_json_1d(const nlohmann::json& j);

nlohmann::json rule_to_json(const CubatureRule& rule);
CubatureRule rule_from_json_nd(const nlohmann::json& j);

/// Versioned on-disk container: schema tag, free-form metadata (creation
/// parameters, criterion, seed) and either a single rule or a nested family
/// ordered largest to smallest. Round-trips are lossless: doubles are written
/// with shortest round-trip precision.
struct RuleFile {
  nlohmann::json metadata;
  std::variant<QuadratureRule, CubatureRule, NestedFamily> payload;

  bool is_family() const { return std::holds_alternative<NestedFamily>(payload); }
};

void save_rule_file(const RuleFile& file, const std::string& path);
RuleFile load_rule_file(const std::string& path);

/// CSV export: '#'-prefixed metadata header, then a header row and one row
/// per node with 17 significant digits, comma separators and LF endings.
std::string rule_to_csv(const QuadratureRule& rule, const std::string& invocation);
std::string rule_to_csv(const CubatureRule& rule, const std::string& invocation);

}  // namespace cq
