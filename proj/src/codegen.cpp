#include "icb/codegen.hpp"

#include <algorithm>

#include "json.hpp"

#include "icb/error.hpp"
#include "icb/template.hpp"
#include "icb/utf8.hpp"
#include "icb/validator.hpp"

namespace icb {

std::string_view datatype_map(DataType type, PlatformTarget platform) {
  switch (platform) {
    case PlatformTarget::EthereumSolidity:
      switch (type) {
        case DataType::String: return "bytes32";
        case DataType::Integer: return "int256";
        case DataType::Decimal: return "int256";
        case DataType::Boolean: return "bool";
        case DataType::Address: return "address";
      }
      break;
    case PlatformTarget::HyperledgerComposer:
      switch (type) {
        case DataType::String: return "String";
        case DataType::Integer: return "Integer";
        case DataType::Decimal: return "Double";
        case DataType::Boolean: return "Boolean";
        case DataType::Address: return "String";
      }
      break;
    case PlatformTarget::AzureBlockchainWorkbench:
      switch (type) {
        case DataType::String: return "string";
        case DataType::Integer: return "int";
        case DataType::Decimal: return "money";
        case DataType::Boolean: return "bool";
        case DataType::Address: return "address";
      }
      break;
  }
  return "?";
}

std::string platform_dir(PlatformTarget platform) { return utf8::to_lower(to_string(platform)); }

namespace {

constexpr std::string_view kDecimalNote = "    // fixed-point: value scaled by 10**18\n";

std::string capitalize(std::string_view name) {
  std::string out(name);
  if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') out[0] = static_cast<char>(out[0] - 'a' + 'A');
  return out;
}

std::size_t count_lines(std::string_view text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

// Accumulates rendered chunks and remembers which lines each element produced.
class Document {
 public:
  void append(std::string_view chunk) { text_.append(chunk); }

  void append(std::string_view chunk, std::string element) {
    const std::size_t first = count_lines(text_) + 1;
    text_.append(chunk);
    std::size_t last = count_lines(text_);
    if (!chunk.empty() && chunk.back() != '\n') ++last;
    provenance_.push_back({first, std::max(first, last), std::move(element)});
  }

  const std::string& text() const { return text_; }

  GeneratedArtifact finish(std::string filename, PlatformTarget platform) && {
    return {std::move(filename), std::move(text_), platform, std::move(provenance_)};
  }

  std::vector<ProvenanceEntry>& provenance() { return provenance_; }

 private:
  std::string text_;
  std::vector<ProvenanceEntry> provenance_;
};

// ---------------------------------------------------------------------------
// Solidity

struct SolidityFlavor {
  PlatformTarget platform;
  std::string preamble;
  std::string constructor_body;
  std::string_view (*type_of)(DataType);
};

std::string_view ethereum_type(DataType t) { return datatype_map(t, PlatformTarget::EthereumSolidity); }

// Workbench maps its string/int/money types onto these Solidity types.
std::string_view workbench_solidity_type(DataType t) {
  switch (t) {
    case DataType::String: return "string";
    case DataType::Integer: return "int";
    case DataType::Decimal: return "int";
    case DataType::Boolean: return "bool";
    case DataType::Address: return "address";
  }
  return "?";
}

std::string solidity_field(const Parameter& p, const SolidityFlavor& flavor) {
  const bool decimal = p.type == DataType::Decimal;
  return render(builtin_template("templates/solidity/field.tmpl"),
                {{"type", std::string(flavor.type_of(p.type))},
                 {"name", p.name},
                 {"comment", decimal ? std::string(kDecimalNote) : std::string()}});
}

std::string solidity_struct(const std::string& name, const std::vector<Parameter>& params,
                            const std::optional<std::string>& creator_address, const SolidityFlavor& flavor) {
  std::string fields;
  for (const auto& p : params) fields += solidity_field(p, flavor);
  if (creator_address) {
    fields += render(builtin_template("templates/solidity/field.tmpl"),
                     {{"type", "address"}, {"name", *creator_address}, {"comment", ""}});
  }
  if (!fields.empty() && fields.back() == '\n') fields.pop_back();
  return render(builtin_template("templates/solidity/struct.tmpl"), {{"name", capitalize(name)}, {"fields", fields}});
}

std::string solidity_function(const Transaction& t, const SolidityFlavor& flavor) {
  std::string params;
  for (const auto& p : t.params) {
    if (!params.empty()) params += ", ";
    // Reference-typed parameters need an explicit data location from 0.5 on.
    const std::string_view type = flavor.type_of(p.type);
    params += std::string(type) + (type == "string" ? " memory " : " ") + p.name;
  }
  std::string body;
  for (const auto& p : t.params) {
    if (p.type == DataType::Decimal) body += "        // " + p.name + ": fixed-point, scaled by 10**18\n";
  }
  for (const auto& r : t.relationships) {
    body += "        // relates to " + std::string(to_string(r.target_kind)) + " " + capitalize(r.target_name) + "\n";
  }
  return render(builtin_template("templates/solidity/function.tmpl"),
                {{"name", t.name}, {"params", params}, {"body", body}});
}

GeneratedArtifact solidity_artifact(const ContractModel& model, const SolidityFlavor& flavor) {
  const std::string& contract = *model.name;
  // Render element chunks first, then splice them into the contract shell
  // while tracking the line ranges each one lands on.
  std::vector<std::pair<std::string, std::string>> structs;
  for (const auto& p : model.participants) {
    std::optional<std::string> address;
    if (p.is_creator) address = p.name + "Address";
    structs.emplace_back(solidity_struct(p.name, p.params, address, flavor), element_id(ConceptKind::Participant, p.name));
  }
  for (const auto& a : model.assets) {
    structs.emplace_back(solidity_struct(a.name, a.params, std::nullopt, flavor), element_id(ConceptKind::Asset, a.name));
  }
  std::vector<std::pair<std::string, std::string>> functions;
  for (const auto& t : model.transactions) {
    functions.emplace_back(solidity_function(t, flavor), element_id(ConceptKind::Transaction, t.name));
  }

  constexpr std::string_view kMarker = "\x01";
  const std::string shell = render(builtin_template("templates/solidity/contract.tmpl"),
                                   {{"contract", contract},
                                    {"preamble", flavor.preamble},
                                    {"constructor_body", flavor.constructor_body},
                                    {"structs", std::string(kMarker)},
                                    {"functions", ""}});
  const auto split = shell.find(kMarker);
  Document doc;
  doc.append(shell.substr(0, split), contract_element_id(model));
  for (auto& [text, id] : structs) doc.append(text, id);
  for (auto& [text, id] : functions) doc.append(text, id);
  doc.append(shell.substr(split + kMarker.size()));
  return std::move(doc).finish(contract + ".sol", flavor.platform);
}

// ---------------------------------------------------------------------------
// Hyperledger Composer

std::string composer_namespace(const ContractModel& model) { return "org." + utf8::to_lower(*model.name); }

std::string composer_fields(const std::vector<Parameter>& params, const std::optional<std::string>& identifier) {
  std::string out;
  for (const auto& p : params) {
    // Composer requires the identifying field to be a String.
    const bool is_id = identifier && utf8::iequals(*identifier, p.name);
    const auto type = is_id ? std::string_view("String") : datatype_map(p.type, PlatformTarget::HyperledgerComposer);
    out += "  o " + std::string(type) + " " + p.name + "\n";
  }
  return out;
}

std::string relationship_field(const Transaction& t, const Relationship& r) {
  std::string field = r.target_name;
  const bool clash = std::any_of(t.params.begin(), t.params.end(),
                                 [&](const Parameter& p) { return utf8::iequals(p.name, field); });
  if (clash) field += "Ref";
  return field;
}

std::vector<GeneratedArtifact> composer_artifacts(const ContractModel& model) {
  const std::string& contract = *model.name;
  const std::string ns = composer_namespace(model);

  std::vector<std::pair<std::string, std::string>> decls;
  for (const auto& p : model.participants) {
    decls.emplace_back(render(builtin_template("templates/composer/participant.tmpl"),
                              {{"doc", p.is_creator ? "// Creates the contract.\n" : ""},
                               {"name", capitalize(p.name)},
                               {"identifier", *p.identifier},
                               {"fields", composer_fields(p.params, p.identifier)}}),
                       element_id(ConceptKind::Participant, p.name));
  }
  for (const auto& a : model.assets) {
    decls.emplace_back(render(builtin_template("templates/composer/asset.tmpl"),
                              {{"doc", "// " + std::string(to_string(*a.kind)) + " asset.\n"},
                               {"name", capitalize(a.name)},
                               {"identifier", *a.identifier},
                               {"fields", composer_fields(a.params, a.identifier)}}),
                       element_id(ConceptKind::Asset, a.name));
  }
  for (const auto& t : model.transactions) {
    std::string fields = composer_fields(t.params, std::nullopt);
    for (const auto& r : t.relationships) {
      fields += "  --> " + capitalize(r.target_name) + " " + relationship_field(t, r) + "\n";
    }
    decls.emplace_back(render(builtin_template("templates/composer/transaction.tmpl"),
                              {{"name", capitalize(t.name)}, {"fields", fields}}),
                       element_id(ConceptKind::Transaction, t.name));
  }

  constexpr std::string_view kMarker = "\x01";
  const std::string shell = render(builtin_template("templates/composer/model.tmpl"),
                                   {{"contract", contract}, {"namespace", ns}, {"declarations", std::string(kMarker)}});
  const auto split = shell.find(kMarker);
  Document cto;
  cto.append(shell.substr(0, split), contract_element_id(model));
  for (std::size_t i = 0; i < decls.size(); ++i) {
    if (i) cto.append("\n");
    cto.append(decls[i].first, decls[i].second);
  }
  cto.append(shell.substr(split + kMarker.size()));

  std::vector<std::pair<std::string, std::string>> fns;
  for (const auto& t : model.transactions) {
    std::string body;
    for (const auto& r : t.relationships) {
      body += "    // tx." + relationship_field(t, r) + " references " + utf8::to_lower(to_string(r.target_kind)) + " " +
              ns + "." + capitalize(r.target_name) + "\n";
    }
    if (body.empty()) body = "    // No related participants or assets.\n";
    fns.emplace_back(render(builtin_template("templates/composer/logic_function.tmpl"),
                            {{"name", t.name}, {"namespace", ns}, {"type", capitalize(t.name)}, {"body", body}}),
                     element_id(ConceptKind::Transaction, t.name));
  }
  const std::string logic_shell = render(builtin_template("templates/composer/logic.tmpl"),
                                         {{"contract", contract}, {"functions", std::string(kMarker)}});
  const auto logic_split = logic_shell.find(kMarker);
  Document js;
  js.append(logic_shell.substr(0, logic_split), contract_element_id(model));
  for (std::size_t i = 0; i < fns.size(); ++i) {
    if (i) js.append("\n");
    js.append(fns[i].first, fns[i].second);
  }
  js.append(logic_shell.substr(logic_split + kMarker.size()));

  std::vector<GeneratedArtifact> out;
  out.push_back(std::move(cto).finish(contract + ".cto", PlatformTarget::HyperledgerComposer));
  out.push_back(std::move(js).finish(contract + ".js", PlatformTarget::HyperledgerComposer));
  return out;
}

// ---------------------------------------------------------------------------
// Azure Blockchain Workbench

GeneratedArtifact workbench_config(const ContractModel& model) {
  using nlohmann::ordered_json;
  const std::string& contract = *model.name;

  ordered_json roles = ordered_json::array();
  ordered_json initiators = ordered_json::array();
  ordered_json all_roles = ordered_json::array();
  for (const auto& p : model.participants) {
    roles.push_back({{"Name", capitalize(p.name)}, {"Description", "Participant " + p.name + "."}});
    all_roles.push_back(capitalize(p.name));
    if (p.is_creator) initiators.push_back(capitalize(p.name));
  }
  if (initiators.empty()) initiators = all_roles;

  ordered_json functions = ordered_json::array();
  ordered_json transitions = ordered_json::array();
  for (const auto& t : model.transactions) {
    ordered_json params = ordered_json::array();
    for (const auto& p : t.params) {
      params.push_back({{"Name", p.name},
                        {"Description", p.name},
                        {"DisplayName", p.name},
                        {"Type", {{"Name", datatype_map(p.type, PlatformTarget::AzureBlockchainWorkbench)}}}});
    }
    functions.push_back(
        {{"Name", t.name}, {"DisplayName", t.name}, {"Description", "Transaction " + t.name + "."}, {"Parameters", params}});
    transitions.push_back({{"AllowedRoles", all_roles},
                           {"AllowedInstanceRoles", ordered_json::array()},
                           {"Description", "Invoke " + t.name + "."},
                           {"Function", t.name},
                           {"NextStates", {"Created"}},
                           {"DisplayName", t.name}});
  }

  ordered_json states = ordered_json::array();
  states.push_back({{"Name", "Created"},
                    {"DisplayName", "Created"},
                    {"Description", "The contract is active."},
                    {"PercentComplete", 50},
                    {"Value", 0},
                    {"Style", "Success"},
                    {"Transitions", transitions}});
  states.push_back({{"Name", "Completed"},
                    {"DisplayName", "Completed"},
                    {"Description", "The contract is complete."},
                    {"PercentComplete", 100},
                    {"Value", 1},
                    {"Style", "Success"},
                    {"Transitions", ordered_json::array()}});

  ordered_json workflow = {
      {"Name", contract},
      {"DisplayName", contract},
      {"Description", "Workflow for " + contract + "."},
      {"Initiators", initiators},
      {"StartState", "Created"},
      {"Properties",
       {{{"Name", "State"}, {"DisplayName", "State"}, {"Description", "Workflow state."}, {"Type", {{"Name", "state"}}}}}},
      {"Constructor", {{"Parameters", ordered_json::array()}}},
      {"Functions", functions},
      {"States", states},
  };
  ordered_json app = {{"ApplicationName", contract},
                      {"DisplayName", contract},
                      {"Description", "Generated from the " + contract + " contract model."},
                      {"ApplicationRoles", roles},
                      {"Workflows", {workflow}}};

  std::string text = app.dump(2) + "\n";
  GeneratedArtifact artifact{contract + ".json", text, PlatformTarget::AzureBlockchainWorkbench, {}};
  artifact.provenance.push_back({1, count_lines(text), contract_element_id(model)});

  // Roles and functions are located by their "Name" line in the dump.
  std::vector<std::string> lines;
  for (std::size_t pos = 0; pos < text.size();) {
    auto nl = text.find('\n', pos);
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  auto locate = [&](const std::string& name, std::size_t from) -> std::size_t {
    const std::string needle = "\"Name\": " + ordered_json(name).dump();
    for (std::size_t i = from; i < lines.size(); ++i) {
      if (lines[i].find(needle) != std::string::npos) return i;
    }
    return lines.size();
  };
  for (const auto& p : model.participants) {
    const auto at = locate(capitalize(p.name), 0);
    if (at < lines.size()) artifact.provenance.push_back({at + 1, at + 1, element_id(ConceptKind::Participant, p.name)});
  }
  std::size_t functions_at = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].find("\"Functions\"") != std::string::npos) {
      functions_at = i;
      break;
    }
  }
  for (const auto& t : model.transactions) {
    const auto at = locate(t.name, functions_at);
    if (at < lines.size()) artifact.provenance.push_back({at + 1, at + 1, element_id(ConceptKind::Transaction, t.name)});
  }
  return artifact;
}

}  // namespace

std::vector<GeneratedArtifact> generate(const ContractModel& model, PlatformTarget platform) {
  if (const auto violations = validate(model); !violations.empty()) {
    throw Error("precondition-violated",
                "model is invalid: " + std::string(to_string(violations.front().rule)) + " " + violations.front().message);
  }
  switch (platform) {
    case PlatformTarget::EthereumSolidity:
      return {solidity_artifact(model, {platform, "", "", ethereum_type})};
    case PlatformTarget::HyperledgerComposer:
      return composer_artifacts(model);
    case PlatformTarget::AzureBlockchainWorkbench: {
      SolidityFlavor flavor{platform,
                            "    enum StateType { Created, Completed }\n    StateType public State;\n",
                            " State = StateType.Created; ", workbench_solidity_type};
      std::vector<GeneratedArtifact> out;
      out.push_back(workbench_config(model));
      out.push_back(solidity_artifact(model, flavor));
      return out;
    }
  }
  return {};
}

}  // namespace icb
