#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "icb/metamodel.hpp"

namespace icb {

// V1 platform set, V2 contract name set, V3 asset kind set, V4 identifier
// set on assets and participants, V5 relationships resolve, V6 parameter
// names unique per element, V7 identifier names an owned parameter.
enum class Rule { V1 = 1, V2, V3, V4, V5, V6, V7 };

std::string_view to_string(Rule r);

struct Violation {
  Rule rule = Rule::V1;
  std::string message;
  std::optional<std::string> element;  // element id, when the rule is element-scoped

  bool operator==(const Violation&) const = default;
};

// All violations, rule by rule (V1 first), elements in model order.
// Never mutates the model.
std::vector<Violation> validate(const ContractModel& model);

}  // namespace icb
