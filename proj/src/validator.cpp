#include "icb/validator.hpp"

#include <set>

#include "icb/utf8.hpp"

namespace icb {

std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::V1: return "V1";
    case Rule::V2: return "V2";
    case Rule::V3: return "V3";
    case Rule::V4: return "V4";
    case Rule::V5: return "V5";
    case Rule::V6: return "V6";
    case Rule::V7: return "V7";
  }
  return "?";
}

namespace {

struct Owner {
  ConceptKind kind;
  const std::string* name;
  const std::vector<Parameter>* params;
  const std::optional<std::string>* identifier;  // null for transactions
};

std::vector<Owner> owners(const ContractModel& model) {
  std::vector<Owner> out;
  for (const auto& p : model.participants) out.push_back({ConceptKind::Participant, &p.name, &p.params, &p.identifier});
  for (const auto& a : model.assets) out.push_back({ConceptKind::Asset, &a.name, &a.params, &a.identifier});
  for (const auto& t : model.transactions) out.push_back({ConceptKind::Transaction, &t.name, &t.params, nullptr});
  return out;
}

std::string label(ConceptKind kind, const std::string& name) {
  return utf8::to_lower(to_string(kind)) + " '" + name + "'";
}

}  // namespace

std::vector<Violation> validate(const ContractModel& model) {
  std::vector<Violation> out;
  if (!model.platform) out.push_back({Rule::V1, "A target platform must be specified.", std::nullopt});
  if (!model.name) out.push_back({Rule::V2, "A contract name must be specified.", std::nullopt});

  for (const auto& a : model.assets) {
    if (!a.kind) {
      out.push_back({Rule::V3, "The type (tangible or intangible) of asset '" + a.name + "' must be specified.",
                     element_id(ConceptKind::Asset, a.name)});
    }
  }

  const auto all = owners(model);
  for (const auto& o : all) {
    if (o.identifier && !*o.identifier) {
      out.push_back({Rule::V4, "A unique identifier must be specified for " + label(o.kind, *o.name) + ".",
                     element_id(o.kind, *o.name)});
    }
  }

  for (const auto& t : model.transactions) {
    for (const auto& r : t.relationships) {
      auto ref = find_element(model, r.target_name);
      if (!ref || ref->kind != to_concept(r.target_kind)) {
        out.push_back({Rule::V5,
                       "Transaction '" + t.name + "' relates to " + utf8::to_lower(to_string(r.target_kind)) + " '" +
                           r.target_name + "', which does not exist.",
                       element_id(ConceptKind::Transaction, t.name)});
      }
    }
  }

  for (const auto& o : all) {
    std::set<std::string> seen;
    for (const auto& p : *o.params) {
      if (!seen.insert(utf8::to_lower(p.name)).second) {
        out.push_back({Rule::V6, "Parameter '" + p.name + "' is declared more than once in " + label(o.kind, *o.name) + ".",
                       element_id(o.kind, *o.name)});
      }
    }
  }

  for (const auto& o : all) {
    if (!o.identifier || !*o.identifier) continue;
    const auto wanted = utf8::to_lower(**o.identifier);
    bool owned = false;
    for (const auto& p : *o.params) owned = owned || utf8::to_lower(p.name) == wanted;
    if (!owned) {
      out.push_back({Rule::V7,
                     "Identifier '" + **o.identifier + "' of " + label(o.kind, *o.name) + " is not one of its parameters.",
                     element_id(o.kind, *o.name)});
    }
  }
  return out;
}

}  // namespace icb
