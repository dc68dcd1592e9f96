#include "icb/metamodel.hpp"

#include <set>

#include "icb/utf8.hpp"

namespace icb {

std::string_view to_string(PlatformTarget p) {
  switch (p) {
    case PlatformTarget::EthereumSolidity: return "Solidity";
    case PlatformTarget::HyperledgerComposer: return "HyperledgerComposer";
    case PlatformTarget::AzureBlockchainWorkbench: return "Azure";
  }
  return "?";
}

std::string_view to_string(ConceptKind k) {
  switch (k) {
    case ConceptKind::Contract: return "Contract";
    case ConceptKind::Participant: return "Participant";
    case ConceptKind::Asset: return "Asset";
    case ConceptKind::Transaction: return "Transaction";
    case ConceptKind::Parameter: return "Parameter";
    case ConceptKind::Relationship: return "Relationship";
  }
  return "?";
}

std::string_view to_string(CrudAction a) {
  switch (a) {
    case CrudAction::Create: return "Create";
    case CrudAction::Read: return "Read";
    case CrudAction::Update: return "Update";
    case CrudAction::Delete: return "Delete";
  }
  return "?";
}

std::string_view to_string(DataType t) {
  switch (t) {
    case DataType::String: return "String";
    case DataType::Integer: return "Integer";
    case DataType::Decimal: return "Decimal";
    case DataType::Boolean: return "Boolean";
    case DataType::Address: return "Address";
  }
  return "?";
}

std::string_view to_string(AssetKind k) {
  return k == AssetKind::Tangible ? "Tangible" : "Intangible";
}

std::string_view to_string(TargetKind k) {
  return k == TargetKind::Participant ? "Participant" : "Asset";
}

namespace {
template <typename Enum, std::size_t N>
std::optional<Enum> parse_from(std::string_view s, const Enum (&values)[N]) {
  for (Enum v : values) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}
}  // namespace

std::optional<PlatformTarget> parse_platform(std::string_view s) { return parse_from(s, kAllPlatforms); }
std::optional<ConceptKind> parse_concept(std::string_view s) { return parse_from(s, kAllConcepts); }
std::optional<CrudAction> parse_action(std::string_view s) { return parse_from(s, kAllActions); }
std::optional<DataType> parse_datatype(std::string_view s) { return parse_from(s, kAllDataTypes); }

std::optional<AssetKind> parse_asset_kind(std::string_view s) {
  constexpr AssetKind kinds[] = {AssetKind::Tangible, AssetKind::Intangible};
  return parse_from(s, kinds);
}

std::optional<TargetKind> parse_target_kind(std::string_view s) {
  constexpr TargetKind kinds[] = {TargetKind::Participant, TargetKind::Asset};
  return parse_from(s, kinds);
}

ConceptKind to_concept(TargetKind k) {
  return k == TargetKind::Participant ? ConceptKind::Participant : ConceptKind::Asset;
}

std::optional<ElementRef> find_element(const ContractModel& model, std::string_view name) {
  const std::string wanted = utf8::to_lower(name);
  auto scan = [&](const auto& list, ConceptKind kind) -> std::optional<ElementRef> {
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (utf8::to_lower(list[i].name) == wanted) return ElementRef{kind, i};
    }
    return std::nullopt;
  };
  if (auto hit = scan(model.participants, ConceptKind::Participant)) return hit;
  if (auto hit = scan(model.assets, ConceptKind::Asset)) return hit;
  return scan(model.transactions, ConceptKind::Transaction);
}

const std::string& element_name(const ContractModel& model, ElementRef ref) {
  switch (ref.kind) {
    case ConceptKind::Participant: return model.participants.at(ref.index).name;
    case ConceptKind::Asset: return model.assets.at(ref.index).name;
    default: return model.transactions.at(ref.index).name;
  }
}

const std::vector<Parameter>& element_params(const ContractModel& model, ElementRef ref) {
  switch (ref.kind) {
    case ConceptKind::Participant: return model.participants.at(ref.index).params;
    case ConceptKind::Asset: return model.assets.at(ref.index).params;
    default: return model.transactions.at(ref.index).params;
  }
}

std::vector<Parameter>& element_params(ContractModel& model, ElementRef ref) {
  return const_cast<std::vector<Parameter>&>(
      element_params(static_cast<const ContractModel&>(model), ref));
}

std::string element_id(ConceptKind kind, std::string_view name) {
  return utf8::to_lower(to_string(kind)) + ":" + utf8::to_lower(name);
}

std::string contract_element_id(const ContractModel& model) {
  return element_id(ConceptKind::Contract, model.name.value_or(""));
}

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(name.front())) return false;
  for (char c : name) {
    if (!alpha(c) && !digit(c) && c != '_') return false;
  }
  return true;
}

std::vector<ElementRef> all_elements(const ContractModel& model) {
  std::vector<ElementRef> out;
  for (std::size_t i = 0; i < model.participants.size(); ++i) out.push_back({ConceptKind::Participant, i});
  for (std::size_t i = 0; i < model.assets.size(); ++i) out.push_back({ConceptKind::Asset, i});
  for (std::size_t i = 0; i < model.transactions.size(); ++i) out.push_back({ConceptKind::Transaction, i});
  return out;
}

namespace {
void check_params(const std::string& owner, const std::vector<Parameter>& params,
                  const std::optional<std::string>& identifier, std::vector<std::string>& out) {
  std::set<std::string> seen;
  for (const auto& p : params) {
    if (!is_identifier(p.name)) out.push_back(owner + ": parameter name '" + p.name + "' is not an identifier");
    if (!seen.insert(utf8::to_lower(p.name)).second) {
      out.push_back(owner + ": duplicate parameter '" + p.name + "'");
    }
  }
  if (identifier && !seen.contains(utf8::to_lower(*identifier))) {
    out.push_back(owner + ": identifier '" + *identifier + "' is not an owned parameter");
  }
}
}  // namespace

std::vector<std::string> invariant_violations(const ContractModel& model) {
  std::vector<std::string> out;
  std::set<std::string> names;
  std::set<std::string> ids;
  if (model.name) ids.insert(contract_element_id(model));
  for (ElementRef ref : all_elements(model)) {
    const std::string& name = element_name(model, ref);
    if (!is_identifier(name)) out.push_back("element name '" + name + "' is not an identifier");
    if (!names.insert(utf8::to_lower(name)).second) out.push_back("duplicate element name '" + name + "'");
    ids.insert(element_id(ref.kind, name));
  }
  for (const auto& p : model.participants) check_params(p.name, p.params, p.identifier, out);
  for (const auto& a : model.assets) check_params(a.name, a.params, a.identifier, out);
  for (const auto& t : model.transactions) check_params(t.name, t.params, std::nullopt, out);
  for (const auto& [id, utterances] : model.trace) {
    if (!ids.contains(id)) out.push_back("trace key '" + id + "' names no element");
    for (std::size_t i = 1; i < utterances.size(); ++i) {
      if (utterances[i] < utterances[i - 1]) out.push_back("trace for '" + id + "' is not ordered");
    }
  }
  return out;
}

}  // namespace icb
