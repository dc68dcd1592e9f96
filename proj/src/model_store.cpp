#include "icb/model_store.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "icb/files.hpp"
#include "icb/utf8.hpp"

namespace icb {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_params(const std::string& owner, const std::vector<Parameter>& params,
                  const std::optional<std::string>& identifier) {
  std::set<std::string> seen;
  for (const auto& p : params) {
    if (!is_identifier(p.name)) {
      throw ModelError("invalid-payload", "parameter name '" + p.name + "' of " + owner + " is not a valid identifier");
    }
    if (!seen.insert(utf8::to_lower(p.name)).second) {
      throw ModelError("invalid-payload", owner + " already has a parameter named '" + p.name + "'");
    }
  }
  if (identifier && !seen.contains(utf8::to_lower(*identifier))) {
    throw ModelError("invalid-payload", "identifier '" + *identifier + "' is not a parameter of " + owner);
  }
}

const std::string& payload_name(const ElementPayload& payload) {
  return std::visit([](const auto& e) -> const std::string& { return e.name; }, payload);
}

ConceptKind payload_kind(const ElementPayload& payload) {
  return std::visit(overloaded{[](const Participant&) { return ConceptKind::Participant; },
                               [](const Asset&) { return ConceptKind::Asset; },
                               [](const Transaction&) { return ConceptKind::Transaction; }},
                    payload);
}

ElementRef require(const ContractModel& model, std::string_view name) {
  auto ref = find_element(model, name);
  if (!ref) throw ModelError("not-found", "no element named '" + std::string(name) + "'");
  return *ref;
}

std::optional<std::string>* identifier_of(ContractModel& model, ElementRef ref) {
  if (ref.kind == ConceptKind::Participant) return &model.participants[ref.index].identifier;
  if (ref.kind == ConceptKind::Asset) return &model.assets[ref.index].identifier;
  return nullptr;
}

std::vector<Parameter>::iterator find_param(std::vector<Parameter>& params, std::string_view name) {
  const auto wanted = utf8::to_lower(name);
  return std::find_if(params.begin(), params.end(),
                      [&](const Parameter& p) { return utf8::to_lower(p.name) == wanted; });
}

}  // namespace

void record_trace(ContractModel& model, const std::string& id, UtteranceId utterance) {
  auto& ids = model.trace[id];
  if (ids.empty() || ids.back() != utterance) ids.push_back(utterance);
}

void create_element(ContractModel& model, ElementPayload payload, std::span<const UtteranceId> utterances) {
  if (!model.name || !model.platform) {
    throw ModelError("contract-undefined", "define the contract name and platform before adding elements");
  }
  const std::string& name = payload_name(payload);
  if (!is_identifier(name)) throw ModelError("invalid-payload", "'" + name + "' is not a valid identifier");
  if (auto existing = find_element(model, name)) {
    throw ModelError("duplicate-name", "an element named '" + element_name(model, *existing) + "' already exists (" +
                                           std::string(to_string(existing->kind)) + ")");
  }
  std::visit(overloaded{[&](const Participant& p) { check_params(p.name, p.params, p.identifier); },
                        [&](const Asset& a) { check_params(a.name, a.params, a.identifier); },
                        [&](const Transaction& t) {
                          check_params(t.name, t.params, std::nullopt);
                          for (const auto& r : t.relationships) {
                            if (!is_identifier(r.target_name)) {
                              throw ModelError("invalid-payload",
                                               "relationship target '" + r.target_name + "' is not a valid identifier");
                            }
                          }
                        }},
             payload);

  const std::string id = element_id(payload_kind(payload), name);
  std::visit(overloaded{[&](Participant& p) { model.participants.push_back(std::move(p)); },
                        [&](Asset& a) { model.assets.push_back(std::move(a)); },
                        [&](Transaction& t) { model.transactions.push_back(std::move(t)); }},
             payload);
  for (UtteranceId u : utterances) record_trace(model, id, u);
}

namespace {

void write_params(std::ostringstream& out, const std::vector<Parameter>& params) {
  out << "  Parameters (" << params.size() << "):\n";
  for (const auto& p : params) out << "    - " << p.name << ": " << to_string(p.type) << "\n";
}

}  // namespace

std::string read_element(const ContractModel& model, std::string_view name) {
  const ElementRef ref = require(model, name);
  std::ostringstream out;
  switch (ref.kind) {
    case ConceptKind::Participant: {
      const auto& p = model.participants[ref.index];
      out << "Participant " << p.name << "\n";
      out << "  Creator: " << (p.is_creator ? "yes" : "no") << "\n";
      out << "  Identifier: " << p.identifier.value_or("(not set)") << "\n";
      write_params(out, p.params);
      break;
    }
    case ConceptKind::Asset: {
      const auto& a = model.assets[ref.index];
      out << "Asset " << a.name << "\n";
      out << "  Kind: " << (a.kind ? std::string(to_string(*a.kind)) : "(not set)") << "\n";
      out << "  Identifier: " << a.identifier.value_or("(not set)") << "\n";
      write_params(out, a.params);
      break;
    }
    default: {
      const auto& t = model.transactions[ref.index];
      out << "Transaction " << t.name << "\n";
      write_params(out, t.params);
      out << "  Relationships (" << t.relationships.size() << "):\n";
      for (const auto& r : t.relationships) out << "    - " << to_string(r.target_kind) << " " << r.target_name << "\n";
      break;
    }
  }
  return out.str();
}

void update_element(ContractModel& model, std::string_view name, const ElementEdit& change,
                    std::optional<UtteranceId> utterance) {
  const ElementRef ref = require(model, name);
  const std::string old_name = element_name(model, ref);
  std::string id = element_id(ref.kind, old_name);
  auto& params = element_params(model, ref);

  std::visit(
      overloaded{
          [&](const edit::Rename& e) {
            if (!is_identifier(e.new_name)) {
              throw ModelError("invalid-edit", "'" + e.new_name + "' is not a valid identifier");
            }
            if (auto clash = find_element(model, e.new_name); clash && !(*clash == ref)) {
              throw ModelError("duplicate-name", "an element named '" + element_name(model, *clash) + "' already exists");
            }
            switch (ref.kind) {
              case ConceptKind::Participant: model.participants[ref.index].name = e.new_name; break;
              case ConceptKind::Asset: model.assets[ref.index].name = e.new_name; break;
              default: model.transactions[ref.index].name = e.new_name; break;
            }
            for (auto& t : model.transactions) {
              for (auto& r : t.relationships) {
                if (utf8::iequals(r.target_name, old_name) && to_concept(r.target_kind) == ref.kind) {
                  r.target_name = e.new_name;
                }
              }
            }
            const std::string new_id = element_id(ref.kind, e.new_name);
            if (new_id != id) {
              if (auto node = model.trace.extract(id)) {
                node.key() = new_id;
                model.trace.insert(std::move(node));
              }
              id = new_id;
            }
          },
          [&](const edit::AddParameter& e) {
            if (!is_identifier(e.param.name)) {
              throw ModelError("invalid-edit", "'" + e.param.name + "' is not a valid identifier");
            }
            if (find_param(params, e.param.name) != params.end()) {
              throw ModelError("duplicate-name", old_name + " already has a parameter named '" + e.param.name + "'");
            }
            params.push_back(e.param);
          },
          [&](const edit::RemoveParameter& e) {
            auto it = find_param(params, e.name);
            if (it == params.end()) throw ModelError("not-found", old_name + " has no parameter '" + e.name + "'");
            if (auto* ident = identifier_of(model, ref); ident && *ident && utf8::iequals(**ident, it->name)) {
              ident->reset();
            }
            params.erase(it);
          },
          [&](const edit::RetypeParameter& e) {
            auto it = find_param(params, e.name);
            if (it == params.end()) throw ModelError("not-found", old_name + " has no parameter '" + e.name + "'");
            it->type = e.type;
          },
          [&](const edit::SetIdentifier& e) {
            auto* ident = identifier_of(model, ref);
            if (!ident) throw ModelError("invalid-edit", "transactions have no identifier");
            auto it = find_param(params, e.param);
            if (it == params.end()) throw ModelError("not-found", old_name + " has no parameter '" + e.param + "'");
            *ident = it->name;
          },
          [&](const edit::SetAssetKind& e) {
            if (ref.kind != ConceptKind::Asset) throw ModelError("invalid-edit", old_name + " is not an asset");
            model.assets[ref.index].kind = e.kind;
          },
          [&](const edit::SetCreator& e) {
            if (ref.kind != ConceptKind::Participant) {
              throw ModelError("invalid-edit", old_name + " is not a participant");
            }
            model.participants[ref.index].is_creator = e.creator;
          },
          [&](const edit::AddRelationship& e) {
            if (ref.kind != ConceptKind::Transaction) {
              throw ModelError("invalid-edit", "only transactions have relationships");
            }
            if (!is_identifier(e.relationship.target_name)) {
              throw ModelError("invalid-edit", "'" + e.relationship.target_name + "' is not a valid identifier");
            }
            auto& rels = model.transactions[ref.index].relationships;
            for (const auto& r : rels) {
              if (utf8::iequals(r.target_name, e.relationship.target_name)) {
                throw ModelError("duplicate-name", old_name + " already relates to '" + r.target_name + "'");
              }
            }
            rels.push_back(e.relationship);
          },
          [&](const edit::RemoveRelationship& e) {
            if (ref.kind != ConceptKind::Transaction) {
              throw ModelError("invalid-edit", "only transactions have relationships");
            }
            auto& rels = model.transactions[ref.index].relationships;
            auto it = std::find_if(rels.begin(), rels.end(),
                                   [&](const Relationship& r) { return utf8::iequals(r.target_name, e.target_name); });
            if (it == rels.end()) throw ModelError("not-found", old_name + " has no relationship to '" + e.target_name + "'");
            rels.erase(it);
          },
      },
      change);

  if (utterance) record_trace(model, id, *utterance);
}

void delete_element(ContractModel& model, std::string_view name) {
  const ElementRef ref = require(model, name);
  const std::string removed = element_name(model, ref);
  model.trace.erase(element_id(ref.kind, removed));
  switch (ref.kind) {
    case ConceptKind::Participant:
      model.participants.erase(model.participants.begin() + static_cast<std::ptrdiff_t>(ref.index));
      break;
    case ConceptKind::Asset:
      model.assets.erase(model.assets.begin() + static_cast<std::ptrdiff_t>(ref.index));
      break;
    default:
      model.transactions.erase(model.transactions.begin() + static_cast<std::ptrdiff_t>(ref.index));
      break;
  }
  for (auto& t : model.transactions) {
    std::erase_if(t.relationships, [&](const Relationship& r) {
      return to_concept(r.target_kind) == ref.kind && utf8::iequals(r.target_name, removed);
    });
  }
}

std::vector<UtteranceId> trace(const ContractModel& model, std::string_view name) {
  const ElementRef ref = require(model, name);
  auto it = model.trace.find(element_id(ref.kind, element_name(model, ref)));
  if (it == model.trace.end()) return {};
  return it->second;
}

// ---------------------------------------------------------------------------
// DSL

namespace {

void write_param_blocks(std::ostringstream& out, const std::vector<Parameter>& params) {
  for (const auto& p : params) {
    out << "  Parameter {\n";
    out << "    Name: " << p.name << "\n";
    out << "    Type: " << to_string(p.type) << "\n";
    out << "  }\n";
  }
}

}  // namespace

std::string serialize(const ContractModel& model) {
  std::ostringstream out;
  if (model.name) out << "Contract: " << *model.name << "\n";
  if (model.platform) out << "Platform: " << to_string(*model.platform) << "\n";
  for (const auto& p : model.participants) {
    out << "Participant {\n";
    out << "  Name: " << p.name << "\n";
    out << "  Creator: " << (p.is_creator ? "T" : "F") << "\n";
    if (p.identifier) out << "  Identifier: " << *p.identifier << "\n";
    write_param_blocks(out, p.params);
    out << "}\n";
  }
  for (const auto& a : model.assets) {
    out << "Asset {\n";
    out << "  Name: " << a.name << "\n";
    if (a.kind) out << "  Kind: " << to_string(*a.kind) << "\n";
    if (a.identifier) out << "  Identifier: " << *a.identifier << "\n";
    write_param_blocks(out, a.params);
    out << "}\n";
  }
  for (const auto& t : model.transactions) {
    out << "Transaction {\n";
    out << "  Name: " << t.name << "\n";
    write_param_blocks(out, t.params);
    for (const auto& r : t.relationships) {
      out << "  Relationship {\n";
      out << "    Target: " << to_string(r.target_kind) << ":" << r.target_name << "\n";
      out << "  }\n";
    }
    out << "}\n";
  }
  return out.str();
}

namespace {

struct Line {
  std::size_t number;
  std::string text;  // trimmed
};

class DslParser {
 public:
  explicit DslParser(std::string_view text) {
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto nl = text.find('\n', pos);
      auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      ++number;
      std::string trimmed = utf8::trim(raw);
      if (!trimmed.empty()) lines_.push_back({number, std::move(trimmed)});
      if (nl == std::string_view::npos) break;
      pos = nl + 1;
    }
    last_line_ = number;
  }

  ContractModel parse() {
    ContractModel model;
    if (peek_key() == "Contract") model.name = identifier_value("Contract");
    if (peek_key() == "Platform") {
      const auto [line, value] = field("Platform");
      auto platform = parse_platform(value);
      if (!platform) throw SyntaxError(line, "platform Solidity, HyperledgerComposer or Azure");
      model.platform = platform;
    }
    while (!at_end()) {
      const Line& l = lines_[pos_];
      if (l.text == "Participant {") {
        ++pos_;
        model.participants.push_back(participant());
      } else if (l.text == "Asset {") {
        ++pos_;
        model.assets.push_back(asset());
      } else if (l.text == "Transaction {") {
        ++pos_;
        model.transactions.push_back(transaction());
      } else {
        throw SyntaxError(l.number, "'Participant {', 'Asset {' or 'Transaction {'");
      }
    }
    return model;
  }

 private:
  bool at_end() const { return pos_ >= lines_.size(); }

  std::size_t current_line() const { return at_end() ? last_line_ : lines_[pos_].number; }

  // Key of a "Key: value" line, or the whole line.
  std::string peek_key() const {
    if (at_end()) return {};
    const auto& t = lines_[pos_].text;
    auto colon = t.find(':');
    return colon == std::string::npos ? t : t.substr(0, colon);
  }

  std::pair<std::size_t, std::string> field(const std::string& key) {
    if (at_end()) throw SyntaxError(current_line(), "'" + key + ": <value>'");
    const Line& l = lines_[pos_];
    if (l.text.rfind(key + ":", 0) != 0) throw SyntaxError(l.number, "'" + key + ": <value>'");
    std::string value = utf8::trim(std::string_view(l.text).substr(key.size() + 1));
    if (value.empty()) throw SyntaxError(l.number, "a value after '" + key + ":'");
    ++pos_;
    return {l.number, value};
  }

  std::string identifier_value(const std::string& key) {
    auto [line, value] = field(key);
    if (!is_identifier(value)) throw SyntaxError(line, "an identifier after '" + key + ":'");
    return value;
  }

  void expect(const std::string& text) {
    if (at_end() || lines_[pos_].text != text) throw SyntaxError(current_line(), "'" + text + "'");
    ++pos_;
  }

  Parameter parameter() {
    Parameter p;
    p.name = identifier_value("Name");
    const auto [line, value] = field("Type");
    auto type = parse_datatype(value);
    if (!type) throw SyntaxError(line, "type String, Integer, Decimal, Boolean or Address");
    p.type = *type;
    expect("}");
    return p;
  }

  // Shared loop for element bodies: `on_field` handles element-specific
  // keys and returns false for unknown ones.
  template <typename OnField>
  void body(std::vector<Parameter>& params, std::set<std::string>& seen, OnField on_field) {
    while (true) {
      if (at_end()) throw SyntaxError(current_line(), "'}'");
      const Line& l = lines_[pos_];
      if (l.text == "}") {
        ++pos_;
        return;
      }
      if (l.text == "Parameter {") {
        ++pos_;
        params.push_back(parameter());
        continue;
      }
      const std::string key = peek_key();
      if (!seen.insert(key).second) throw SyntaxError(l.number, "at most one '" + key + ":' per element");
      if (!on_field(key)) throw SyntaxError(l.number, "an element field, 'Parameter {' or '}'");
    }
  }

  Participant participant() {
    Participant p;
    p.name = identifier_value("Name");
    std::set<std::string> seen{"Name"};
    body(p.params, seen, [&](const std::string& key) {
      if (key == "Creator") {
        const auto [line, value] = field("Creator");
        if (value != "T" && value != "F") throw SyntaxError(line, "'T' or 'F' after 'Creator:'");
        p.is_creator = value == "T";
        return true;
      }
      if (key == "Identifier") {
        p.identifier = identifier_value("Identifier");
        return true;
      }
      return false;
    });
    return p;
  }

  Asset asset() {
    Asset a;
    a.name = identifier_value("Name");
    std::set<std::string> seen{"Name"};
    body(a.params, seen, [&](const std::string& key) {
      if (key == "Kind") {
        const auto [line, value] = field("Kind");
        auto kind = parse_asset_kind(value);
        if (!kind) throw SyntaxError(line, "'Tangible' or 'Intangible' after 'Kind:'");
        a.kind = kind;
        return true;
      }
      if (key == "Identifier") {
        a.identifier = identifier_value("Identifier");
        return true;
      }
      return false;
    });
    return a;
  }

  Transaction transaction() {
    Transaction t;
    t.name = identifier_value("Name");
    while (true) {
      if (at_end()) throw SyntaxError(current_line(), "'}'");
      const Line& l = lines_[pos_];
      if (l.text == "}") {
        ++pos_;
        return t;
      }
      if (l.text == "Parameter {") {
        ++pos_;
        t.params.push_back(parameter());
      } else if (l.text == "Relationship {") {
        ++pos_;
        const auto [line, value] = field("Target");
        auto colon = value.find(':');
        std::optional<TargetKind> kind;
        if (colon != std::string::npos) kind = parse_target_kind(value.substr(0, colon));
        const std::string target = colon == std::string::npos ? "" : value.substr(colon + 1);
        if (!kind || !is_identifier(target)) throw SyntaxError(line, "'Target: <Participant|Asset>:<name>'");
        t.relationships.push_back({*kind, target});
        expect("}");
      } else {
        throw SyntaxError(l.number, "'Parameter {', 'Relationship {' or '}'");
      }
    }
  }

  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  std::size_t last_line_ = 1;
};

}  // namespace

ContractModel parse_dsl(std::string_view text) { return DslParser(text).parse(); }

void save_model(const std::filesystem::path& path, const ContractModel& model) {
  write_file_atomic(path, serialize(model));
}

ContractModel load_model(const std::filesystem::path& path) { return parse_dsl(read_file(path)); }

}  // namespace icb
