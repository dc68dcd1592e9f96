#include "icb/dialogue.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

#include "icb/model_store.hpp"
#include "icb/sanitizer.hpp"
#include "icb/utf8.hpp"
#include "icb/validator.hpp"

namespace icb {
namespace {

constexpr std::string_view kGreeting =
    "Hello! I am a chatbot that builds smart contracts with you. A contract is made of participants, "
    "assets and transactions, and I can generate code for Ethereum Solidity, Hyperledger Composer and "
    "Azure Blockchain Workbench. What would you like to build? Say \"create a contract\" to begin.";

constexpr std::string_view kHelp =
    "First define a contract by giving it a name and a target platform. Then create participants (the "
    "parties of the contract), assets (the goods they exchange) and transactions (the operations they "
    "perform). You can read, update or delete any element by name, show the whole contract, and say "
    "\"generate the code\" when you are done.";

std::string kind_word(ConceptKind k) { return utf8::to_lower(to_string(k)); }

std::string platform_label(PlatformTarget p) {
  switch (p) {
    case PlatformTarget::EthereumSolidity: return "Ethereum Solidity";
    case PlatformTarget::HyperledgerComposer: return "Hyperledger Composer";
    case PlatformTarget::AzureBlockchainWorkbench: return "Azure Blockchain Workbench";
  }
  return {};
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

bool is_element_kind(ConceptKind k) {
  return k == ConceptKind::Participant || k == ConceptKind::Asset || k == ConceptKind::Transaction;
}

// Index of the nearest candidate, compared case-insensitively.
std::optional<std::size_t> nearest_index(std::string_view input, const std::vector<std::string>& candidates) {
  std::vector<std::string> lowered;
  lowered.reserve(candidates.size());
  for (const auto& c : candidates) lowered.push_back(utf8::to_lower(c));
  auto m = nearest_match(utf8::to_lower(input), lowered);
  if (!m) return std::nullopt;
  for (std::size_t i = 0; i < lowered.size(); ++i) {
    if (lowered[i] == m->candidate) return i;
  }
  return std::nullopt;
}

std::string random_id() {
  std::random_device rd;
  std::mt19937_64 gen((static_cast<std::uint64_t>(rd()) << 32) ^ rd());
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << gen();
  return os.str();
}

}  // namespace

std::string_view to_string(ResponseKind k) {
  switch (k) {
    case ResponseKind::Prompt: return "Prompt";
    case ResponseKind::Confirm: return "Confirm";
    case ResponseKind::Error: return "Error";
    case ResponseKind::Info: return "Info";
    case ResponseKind::CodeReady: return "CodeReady";
  }
  return {};
}

std::optional<std::string> to_identifier(std::string_view text) {
  std::istringstream words{std::string(text)};
  std::string word;
  std::string out;
  while (words >> word) {
    if (!out.empty()) word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
    out += word;
  }
  if (!is_identifier(out)) return std::nullopt;
  return out;
}

// One user turn against one session. Every handler leaves the session in a
// statechart state and returns the bot's answer; suggestions are filled in
// afterwards from the state reached.
class DialogueEngine::Turn {
 public:
  Turn(const DialogueEngine& engine, Session& session, UtteranceId id, std::string_view text)
      : engine_(engine), s_(session), id_(id), text_(text) {}

  BotResponse run() {
    in_ = engine_.nlu_.match_intent(text_, s_.state);
    BotResponse r = dispatch();
    if (r.suggestions.empty()) r.suggestions = suggestions_for(s_.state);
    return r;
  }

 private:
  const Lexicon& lex() const { return engine_.lexicon(); }
  ContractModel& model() { return s_.model; }
  SlotFrame& pending() { return s_.pending; }
  bool is(Intent i) const { return in_.intent == i; }

  void go(DialogueState st) { s_.state = st; }
  void go(Node n) { s_.state = DialogueState::at(n); }

  void draft_trace() {
    auto& t = pending().trace;
    if (t.empty() || t.back() != id_) t.push_back(id_);
  }

  // ---- slot values bound by the NLU ----

  std::optional<std::string> raw_name() const {
    auto it = in_.values.find("name");
    if (it == in_.values.end() || it->second.empty()) return std::nullopt;
    return it->second;
  }
  std::optional<ConceptKind> concept_value() const {
    auto it = in_.values.find("element");
    return it == in_.values.end() ? std::nullopt : parse_concept(it->second);
  }
  std::optional<DataType> datatype_value() const {
    auto it = in_.values.find("datatype");
    return it == in_.values.end() ? std::nullopt : parse_datatype(it->second);
  }
  std::optional<PlatformTarget> platform_value() const {
    auto it = in_.values.find("platform");
    return it == in_.values.end() ? std::nullopt : parse_platform(it->second);
  }
  std::optional<AssetKind> asset_kind_value() const {
    auto it = in_.values.find("assetkind");
    return it == in_.values.end() ? std::nullopt : parse_asset_kind(it->second);
  }

  // The word a fuzzy fallback should correct: the single unknown word if
  // there is one, else the whole utterance.
  std::string fallback_probe() const {
    auto classes = classify_phrases(tokenize(text_), lex());
    if (classes.proper_nouns.size() == 1) return utf8::to_lower(classes.proper_nouns.front());
    return utf8::to_lower(utf8::trim(text_));
  }

  // ---- responses ----

  std::string question() const {
    const auto& st = s_.state;
    const auto& p = s_.pending;
    switch (st.node) {
      case Node::Start: return "Say \"create a contract\" to start a new smart contract.";
      case Node::AwaitContractName: return "What is the name of the contract?";
      case Node::AwaitPlatform:
        return "Which platform should the contract target: Ethereum Solidity, Hyperledger Composer or Azure "
               "Blockchain Workbench?";
      case Node::MainMenu:
        return "What would you like to do next? You can create, read, update or delete participants, assets and "
               "transactions, show the contract, or generate the code.";
      case Node::AwaitElementName: return "What is the name of the " + kind_word(*p.kind) + "?";
      case Node::AwaitParamName:
        return "Add a parameter to " + p.name + " with its name and type (for example \"id string\"), or say done.";
      case Node::AwaitParamType:
        return "What is the type of " + p.pending_param.value_or("the parameter") +
               "? Choose String, Integer, Decimal, Boolean or Address.";
      case Node::AwaitIdentifierChoice: {
        std::vector<std::string> names;
        for (const auto& param : p.params) names.push_back(param.name);
        return "Which parameter identifies " + p.name + "? Choose one of: " + join(names, ", ") + ".";
      }
      case Node::AwaitAssetKind: return "Is " + p.name + " tangible or intangible?";
      case Node::AwaitRelationshipTarget:
        return "Which participant or asset does " + p.name + " involve? Say done when finished.";
      case Node::CreateElement:
        if (st.kind == ConceptKind::Participant) return "Is " + p.name + " the creator of the contract?";
        return "Shall I create the " + kind_word(*st.kind) + " " + p.name + "?";
      case Node::QueryElement:
        if (st.action == CrudAction::Update && p.target) {
          return "What would you like to change about " + *p.target +
                 "? You can rename it, add, remove or retype parameters, set its identifier or kind, and link "
                 "it to other elements. Say done when finished.";
        }
        return "Which " + (p.concept_filter ? kind_word(*p.concept_filter) : std::string("element")) +
               " do you want to " + utf8::to_lower(to_string(*st.action)) + "?";
      case Node::AwaitCorrectionConfirm:
        return "Did you mean " + (s_.pending_correction ? s_.pending_correction->suggestion : std::string()) + "?";
      case Node::AwaitDeleteConfirm:
        return "Delete " + p.target.value_or("") + "? Relationships to it are removed too.";
      case Node::ReadyToGenerate: return "Say \"generate the code\" to generate the code.";
      case Node::Done: return "The code has been generated.";
    }
    return {};
  }

  std::vector<std::string> suggestions_for(const DialogueState& st) const {
    const auto& p = s_.pending;
    switch (st.node) {
      case Node::Start: return {"I want to create a contract", "help"};
      case Node::AwaitContractName:
      case Node::AwaitElementName: return {"cancel"};
      case Node::AwaitPlatform: return {"Solidity", "Hyperledger Composer", "Azure"};
      case Node::MainMenu:
        return {"create a participant", "create an asset", "create a transaction", "generate the code"};
      case Node::AwaitParamName: return {"done", "cancel"};
      case Node::AwaitParamType: return {"String", "Integer", "Decimal", "Boolean", "Address"};
      case Node::AwaitIdentifierChoice: {
        std::vector<std::string> out;
        for (const auto& param : p.params) out.push_back(param.name);
        return out;
      }
      case Node::AwaitAssetKind: return {"tangible", "intangible"};
      case Node::AwaitRelationshipTarget: {
        std::vector<std::string> out;
        for (const auto& e : s_.model.participants) out.push_back(e.name);
        for (const auto& e : s_.model.assets) out.push_back(e.name);
        out.push_back("done");
        return out;
      }
      case Node::CreateElement:
      case Node::AwaitCorrectionConfirm:
      case Node::AwaitDeleteConfirm: return {"yes", "no"};
      case Node::QueryElement:
        if (st.action == CrudAction::Update && p.target) return {"done"};
        return {"cancel"};
      case Node::ReadyToGenerate: return {"generate the code"};
      case Node::Done: return {};
    }
    return {};
  }

  bool awaits_yes_no() const {
    auto n = s_.state.node;
    return n == Node::CreateElement || n == Node::AwaitCorrectionConfirm || n == Node::AwaitDeleteConfirm;
  }

  BotResponse ask(std::string lead = {}) const {
    BotResponse r;
    r.kind = awaits_yes_no() ? ResponseKind::Confirm : ResponseKind::Prompt;
    r.text = lead.empty() ? question() : lead + " " + question();
    return r;
  }

  BotResponse error(std::string message) const {
    BotResponse r;
    r.kind = ResponseKind::Error;
    r.text = message + " " + question();
    return r;
  }

  BotResponse info(std::string text) const {
    BotResponse r;
    r.kind = ResponseKind::Info;
    r.text = std::move(text);
    return r;
  }

  BotResponse reprompt() const { return ask("Sorry, I did not understand that."); }

  BotResponse correct(CorrectionSlot slot, std::string original, std::string suggestion, std::string lead,
                      std::optional<Intent> edit = std::nullopt, std::optional<DataType> type = std::nullopt) {
    s_.pending_correction = PendingCorrection{std::move(original), std::move(suggestion), slot, s_.state,
                                              s_.state, edit, type};
    go(Node::AwaitCorrectionConfirm);
    return ask(std::move(lead));
  }

  // Fuzzy fallback over one lexicon table; nullopt when nothing is close.
  std::optional<BotResponse> suggest_term(TermKind kind, CorrectionSlot slot) {
    std::string probe = fallback_probe();
    auto m = nearest_match(probe, lex().synonyms(kind));
    if (!m) return std::nullopt;
    auto term = lex().lookup(m->candidate);
    if (!term) return std::nullopt;
    return correct(slot, probe, term->canonical, "I do not know \"" + probe + "\".");
  }

  // ---- routing ----

  BotResponse dispatch() {
    switch (s_.state.node) {
      case Node::Start: return on_start();
      case Node::AwaitContractName: return on_contract_name();
      case Node::AwaitPlatform: return on_platform();
      case Node::MainMenu: return on_main_menu();
      case Node::AwaitElementName: return on_element_name();
      case Node::AwaitParamName: return on_param_name();
      case Node::AwaitParamType: return on_param_type();
      case Node::AwaitIdentifierChoice: return on_identifier();
      case Node::AwaitAssetKind: return on_asset_kind();
      case Node::AwaitRelationshipTarget: return on_relationship();
      case Node::CreateElement: return on_create_confirm();
      case Node::QueryElement: return on_query();
      case Node::AwaitCorrectionConfirm: return on_correction();
      case Node::AwaitDeleteConfirm: return on_delete_confirm();
      case Node::ReadyToGenerate: return is(Intent::GenerateCode) ? generate_code() : reprompt();
      case Node::Done: break;
    }
    throw Error("session-done", "the session is finished");
  }

  // ---- contract ----

  BotResponse on_start() {
    if (is(Intent::Help)) return info(std::string(kHelp));
    if (!is(Intent::CreateContract)) return reprompt();
    go(Node::AwaitContractName);
    if (auto raw = raw_name()) return set_contract_name(*raw);
    return ask("Great, let's create a contract.");
  }

  BotResponse on_contract_name() {
    if (is(Intent::Cancel)) return cancel_contract();
    if (is(Intent::ProvideName)) {
      if (auto raw = raw_name()) return set_contract_name(*raw);
    }
    return reprompt();
  }

  BotResponse set_contract_name(const std::string& raw) {
    auto name = to_identifier(raw);
    if (!name) return error("\"" + raw + "\" is not a valid name; use letters, digits and underscores.");
    model().name = *name;
    record_trace(model(), contract_element_id(model()), id_);
    go(Node::AwaitPlatform);
    return ask("The contract is called " + *name + ".");
  }

  BotResponse on_platform() {
    if (is(Intent::Cancel)) return cancel_contract();
    if (is(Intent::ProvidePlatform)) {
      if (auto p = platform_value()) return set_platform(*p);
    }
    if (auto r = suggest_term(TermKind::Platform, CorrectionSlot::Platform)) return *r;
    return reprompt();
  }

  BotResponse set_platform(PlatformTarget p) {
    model().platform = p;
    record_trace(model(), contract_element_id(model()), id_);
    if (s_.state.node == Node::AwaitPlatform) {
      go(Node::MainMenu);
      return ask("The contract " + *model().name + " targets " + platform_label(p) + ".");
    }
    return ask("The platform is now " + platform_label(p) + ".");
  }

  BotResponse cancel_contract() {
    model() = ContractModel{};
    pending() = SlotFrame{};
    go(Node::Start);
    return ask("OK, nothing was created.");
  }

  // ---- main menu ----

  BotResponse on_main_menu() {
    if (!in_.intent) return reprompt();
    switch (*in_.intent) {
      case Intent::CreateElement: return start_create();
      case Intent::ReadElement: return start_query(CrudAction::Read);
      case Intent::UpdateElement: return start_query(CrudAction::Update);
      case Intent::DeleteElement: return start_query(CrudAction::Delete);
      case Intent::ShowModel: return info("Here is the contract so far:\n" + serialize(model()));
      case Intent::GenerateCode: go(Node::ReadyToGenerate); return generate_code();
      case Intent::ChangePlatform:
        if (auto p = platform_value()) return set_platform(*p);
        if (auto r = suggest_term(TermKind::Platform, CorrectionSlot::Platform)) return *r;
        return reprompt();
      case Intent::Help: return info(std::string(kHelp));
      default: return reprompt();
    }
  }

  BotResponse generate_code() {
    auto violations = validate(model());
    if (!violations.empty()) {
      go(Node::MainMenu);
      std::string text = "The contract is not ready yet:";
      for (const auto& v : violations) text += "\n- " + v.message;
      BotResponse r;
      r.kind = ResponseKind::Error;
      r.text = text;
      return r;
    }
    auto artifacts = generate(model(), *model().platform);
    std::vector<std::string> files;
    for (const auto& a : artifacts) files.push_back(a.filename);
    s_.artifacts = artifacts;
    go(Node::Done);
    BotResponse r;
    r.kind = ResponseKind::CodeReady;
    r.text = "Here is the code of " + *model().name + " for " + platform_label(*model().platform) + ": " +
             join(files, ", ") + ".";
    r.artifacts = std::move(artifacts);
    return r;
  }

  // ---- element creation ----

  BotResponse start_create() {
    auto kind = concept_value();
    if (!kind || !is_element_kind(*kind)) {
      return ask("Which kind of element? You can create a participant, an asset or a transaction.");
    }
    pending() = SlotFrame{};
    pending().kind = *kind;
    draft_trace();
    go(Node::AwaitElementName);
    if (auto raw = raw_name()) return set_element_name(*raw);
    return ask();
  }

  BotResponse on_element_name() {
    if (is(Intent::Cancel)) return cancel_draft();
    if (is(Intent::ProvideName)) {
      if (auto raw = raw_name()) return set_element_name(*raw);
    }
    return reprompt();
  }

  BotResponse set_element_name(const std::string& raw) {
    auto name = to_identifier(raw);
    if (!name) return error("\"" + raw + "\" is not a valid name; use letters, digits and underscores.");
    if (auto ref = find_element(model(), *name)) {
      return error("The name " + *name + " is already used by the " + kind_word(ref->kind) + " " +
                   element_name(model(), *ref) + ".");
    }
    pending().name = *name;
    draft_trace();
    go(Node::AwaitParamName);
    return ask("Creating the " + kind_word(*pending().kind) + " " + *name + ".");
  }

  BotResponse cancel_draft() {
    pending() = SlotFrame{};
    go(Node::MainMenu);
    return ask("OK, discarded.");
  }

  BotResponse on_param_name() {
    if (is(Intent::Cancel)) return cancel_draft();
    if (is(Intent::Finish)) return finish_params();
    if (is(Intent::ProvideName) || is(Intent::AddParameter)) {
      if (auto raw = raw_name()) return add_draft_param(*raw, datatype_value());
    }
    return reprompt();
  }

  BotResponse add_draft_param(const std::string& raw, std::optional<DataType> type) {
    auto name = to_identifier(raw);
    if (!name) return error("\"" + raw + "\" is not a valid parameter name.");
    for (const auto& p : pending().params) {
      if (utf8::iequals(p.name, *name)) return error(pending().name + " already has a parameter named " + p.name + ".");
    }
    draft_trace();
    if (type) {
      pending().params.push_back({*name, *type});
      return ask("Added " + *name + ": " + std::string(to_string(*type)) + ".");
    }
    pending().pending_param = *name;
    go(Node::AwaitParamType);
    return ask();
  }

  BotResponse on_param_type() {
    if (is(Intent::Cancel)) {
      pending().pending_param.reset();
      if (pending().editing) {
        pending().editing = false;
        go(DialogueState::query(CrudAction::Update));
      } else {
        go(Node::AwaitParamName);
      }
      return ask("OK.");
    }
    if (is(Intent::ProvideDatatype)) {
      if (auto t = datatype_value()) return set_param_type(*t);
    }
    if (auto r = suggest_term(TermKind::DataType, CorrectionSlot::Datatype)) return *r;
    return error("That is not a type I know.");
  }

  BotResponse set_param_type(DataType type) {
    std::string name = *pending().pending_param;
    pending().pending_param.reset();
    if (pending().editing) {
      pending().editing = false;
      go(DialogueState::query(CrudAction::Update));
      return apply_edit(edit::AddParameter{{name, type}},
                        "Added " + name + ": " + std::string(to_string(type)) + " to " + *pending().target + ".");
    }
    pending().params.push_back({name, type});
    draft_trace();
    go(Node::AwaitParamName);
    return ask("Added " + name + ": " + std::string(to_string(type)) + ".");
  }

  BotResponse finish_params() {
    if (pending().kind == ConceptKind::Transaction) {
      go(Node::AwaitRelationshipTarget);
      return ask();
    }
    if (pending().params.empty()) return error("A " + kind_word(*pending().kind) + " needs at least one parameter.");
    go(Node::AwaitIdentifierChoice);
    return ask();
  }

  BotResponse on_identifier() {
    if (is(Intent::Cancel)) return cancel_draft();
    if (is(Intent::ProvideName) || is(Intent::SetIdentifier)) {
      if (auto raw = raw_name()) {
        std::vector<std::string> names;
        for (const auto& p : pending().params) {
          if (utf8::iequals(p.name, *raw) || utf8::iequals(p.name, to_identifier(*raw).value_or(""))) {
            return set_identifier(p.name);
          }
          names.push_back(p.name);
        }
        if (auto i = nearest_index(*raw, names)) {
          return correct(CorrectionSlot::Identifier, *raw, names[*i],
                         "\"" + *raw + "\" is not a parameter of " + pending().name + ".");
        }
        return error("\"" + *raw + "\" is not a parameter of " + pending().name + ".");
      }
    }
    return reprompt();
  }

  BotResponse set_identifier(const std::string& param) {
    pending().identifier = param;
    draft_trace();
    if (pending().kind == ConceptKind::Participant) {
      go(DialogueState::create(ConceptKind::Participant));
    } else {
      go(Node::AwaitAssetKind);
    }
    return ask(pending().name + " is identified by " + param + ".");
  }

  BotResponse on_asset_kind() {
    if (is(Intent::Cancel)) return cancel_draft();
    if (is(Intent::ProvideAssetKind)) {
      if (auto k = asset_kind_value()) return set_asset_kind(*k);
    }
    if (auto r = suggest_term(TermKind::AssetKind, CorrectionSlot::AssetKind)) return *r;
    return reprompt();
  }

  BotResponse set_asset_kind(AssetKind kind) {
    pending().asset_kind = kind;
    draft_trace();
    go(DialogueState::create(ConceptKind::Asset));
    return ask();
  }

  BotResponse on_relationship() {
    if (is(Intent::Cancel)) return cancel_draft();
    if (is(Intent::Finish)) {
      go(DialogueState::create(ConceptKind::Transaction));
      return ask();
    }
    if (is(Intent::ProvideName) || is(Intent::AddRelationship)) {
      if (auto raw = raw_name()) return pick_related(*raw, CorrectionSlot::Relationship);
    }
    return reprompt();
  }

  // Resolves a participant or asset for a new relationship.
  BotResponse pick_related(const std::string& raw, CorrectionSlot slot) {
    auto filter = concept_value();
    std::string name = to_identifier(raw).value_or(raw);
    if (auto ref = find_element(model(), name)) {
      bool linkable = ref->kind == ConceptKind::Participant || ref->kind == ConceptKind::Asset;
      if (linkable && (!filter || *filter == ref->kind)) {
        std::string target = element_name(model(), *ref);
        return slot == CorrectionSlot::Relationship ? add_draft_relationship(target)
                                                    : edit_relationship(Intent::AddRelationship, target);
      }
    }
    std::vector<std::string> names;
    if (!filter || filter == ConceptKind::Participant) {
      for (const auto& p : model().participants) names.push_back(p.name);
    }
    if (!filter || filter == ConceptKind::Asset) {
      for (const auto& a : model().assets) names.push_back(a.name);
    }
    std::string what = filter ? kind_word(*filter) : std::string("participant or asset");
    if (auto i = nearest_index(raw, names)) {
      return correct(slot, raw, names[*i], "There is no " + what + " named " + raw + ".",
                     slot == CorrectionSlot::EditRelationship ? std::optional(Intent::AddRelationship)
                                                              : std::nullopt);
    }
    return error("There is no " + what + " named " + raw + ".");
  }

  BotResponse add_draft_relationship(const std::string& target) {
    auto ref = *find_element(model(), target);
    for (const auto& r : pending().relationships) {
      if (utf8::iequals(r.target_name, target)) return error(pending().name + " already involves " + target + ".");
    }
    TargetKind kind = ref.kind == ConceptKind::Participant ? TargetKind::Participant : TargetKind::Asset;
    pending().relationships.push_back({kind, target});
    draft_trace();
    return ask(pending().name + " now involves the " + kind_word(ref.kind) + " " + target + ".");
  }

  BotResponse on_create_confirm() {
    ConceptKind kind = *s_.state.kind;
    if (is(Intent::Cancel)) return cancel_draft();
    if (kind == ConceptKind::Participant && (is(Intent::Affirm) || is(Intent::Deny))) {
      pending().is_creator = is(Intent::Affirm);
      return commit();
    }
    if (is(Intent::Affirm)) return commit();
    if (is(Intent::Deny)) return cancel_draft();
    return reprompt();
  }

  BotResponse commit() {
    SlotFrame draft = pending();
    if (draft.trace.empty() || draft.trace.back() != id_) draft.trace.push_back(id_);
    ElementPayload payload;
    switch (*draft.kind) {
      case ConceptKind::Participant:
        payload = Participant{draft.name, draft.is_creator, draft.identifier, draft.params};
        break;
      case ConceptKind::Asset:
        payload = Asset{draft.name, draft.asset_kind, draft.identifier, draft.params};
        break;
      default:
        payload = Transaction{draft.name, draft.params, draft.relationships};
        break;
    }
    pending() = SlotFrame{};
    go(Node::MainMenu);
    try {
      create_element(model(), std::move(payload), draft.trace);
    } catch (const ModelError& e) {
      return error(e.what());
    }
    std::string kind = kind_word(*draft.kind);
    kind[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(kind[0])));
    return ask(kind + " " + draft.name + " has been added.");
  }

  // ---- read / update / delete ----

  BotResponse start_query(CrudAction action) {
    pending() = SlotFrame{};
    pending().action = action;
    pending().concept_filter = concept_value();
    if (auto raw = raw_name()) return resolve(*raw);
    go(DialogueState::query(action));
    return ask();
  }

  BotResponse on_query() {
    if (s_.state.action == CrudAction::Update && pending().target) return on_update();
    if (is(Intent::Cancel) || is(Intent::Finish)) {
      pending() = SlotFrame{};
      go(Node::MainMenu);
      return ask("OK.");
    }
    if (is(Intent::ProvideName)) {
      if (auto raw = raw_name()) {
        if (auto kind = concept_value()) pending().concept_filter = kind;
        return resolve(*raw);
      }
    }
    return reprompt();
  }

  // Existence check: only names find_element resolves reach perform_query.
  BotResponse resolve(const std::string& raw) {
    const auto filter = pending().concept_filter;
    std::string name = to_identifier(raw).value_or(raw);
    if (auto ref = find_element(model(), name); ref && (!filter || *filter == ref->kind)) {
      return perform_query(element_name(model(), *ref));
    }
    std::vector<std::string> names;
    for (ElementRef ref : all_elements(model())) {
      if (!filter || *filter == ref.kind) names.push_back(element_name(model(), ref));
    }
    std::string what = filter ? kind_word(*filter) : std::string("element");
    if (auto i = nearest_index(raw, names)) {
      return correct(CorrectionSlot::Target, raw, names[*i], "There is no " + what + " named " + raw + ".");
    }
    return error("There is no " + what + " named " + raw + ".");
  }

  BotResponse perform_query(const std::string& name) {
    auto ref = *find_element(model(), name);
    pending().target = name;
    switch (*pending().action) {
      case CrudAction::Read: {
        pending() = SlotFrame{};
        go(Node::MainMenu);
        return info(read_element(model(), name));
      }
      case CrudAction::Update:
        go(DialogueState::query(CrudAction::Update));
        return ask("Editing the " + kind_word(ref.kind) + " " + name + ".");
      case CrudAction::Delete:
        go(Node::AwaitDeleteConfirm);
        return ask();
      case CrudAction::Create: break;
    }
    return reprompt();
  }

  BotResponse on_delete_confirm() {
    std::string target = *pending().target;
    pending() = SlotFrame{};
    go(Node::MainMenu);
    if (is(Intent::Affirm)) {
      delete_element(model(), target);
      return ask(target + " has been deleted.");
    }
    return ask("OK, " + target + " stays.");
  }

  BotResponse on_update() {
    const std::string target = *pending().target;
    const ElementRef ref = *find_element(model(), target);
    if (!in_.intent) return reprompt();
    auto raw = raw_name();
    switch (*in_.intent) {
      case Intent::Cancel:
      case Intent::Finish:
        pending() = SlotFrame{};
        go(Node::MainMenu);
        return ask("Finished editing " + target + ".");
      case Intent::ProvideName:
        if (!raw) return reprompt();
        pending().target.reset();
        pending().concept_filter = concept_value();
        return resolve(*raw);
      case Intent::RenameElement: {
        if (!raw) return reprompt();
        auto name = to_identifier(*raw);
        if (!name) return error("\"" + *raw + "\" is not a valid name.");
        if (auto other = find_element(model(), *name); other && !(*other == ref)) {
          return error("The name " + *name + " is already used by the " + kind_word(other->kind) + " " +
                       element_name(model(), *other) + ".");
        }
        auto r = apply_edit(edit::Rename{*name}, target + " is now called " + *name + ".");
        if (r.kind != ResponseKind::Error) {
          pending().target = *name;
          r = ask(target + " is now called " + *name + ".");
        }
        return r;
      }
      case Intent::AddParameter: {
        if (!raw) return reprompt();
        auto name = to_identifier(*raw);
        if (!name) return error("\"" + *raw + "\" is not a valid parameter name.");
        for (const auto& p : element_params(model(), ref)) {
          if (utf8::iequals(p.name, *name)) return error(target + " already has a parameter named " + p.name + ".");
        }
        if (auto type = datatype_value()) {
          return apply_edit(edit::AddParameter{{*name, *type}},
                            "Added " + *name + ": " + std::string(to_string(*type)) + " to " + target + ".");
        }
        pending().pending_param = *name;
        pending().editing = true;
        go(Node::AwaitParamType);
        return ask();
      }
      case Intent::RemoveParameter:
        if (!raw) return reprompt();
        return pick_param(ref, *raw, Intent::RemoveParameter, std::nullopt);
      case Intent::RetypeParameter: {
        auto type = datatype_value();
        if (!raw || !type) return reprompt();
        return pick_param(ref, *raw, Intent::RetypeParameter, type);
      }
      case Intent::SetIdentifier:
        if (ref.kind == ConceptKind::Transaction) return error("Transactions have no identifier.");
        if (!raw) return reprompt();
        return pick_param(ref, *raw, Intent::SetIdentifier, std::nullopt);
      case Intent::ProvideAssetKind: {
        if (ref.kind != ConceptKind::Asset) return error("Only assets have a kind.");
        auto kind = asset_kind_value();
        if (!kind) return reprompt();
        return apply_edit(edit::SetAssetKind{*kind},
                          target + " is now " + utf8::to_lower(to_string(*kind)) + ".");
      }
      case Intent::AddRelationship:
        if (ref.kind != ConceptKind::Transaction) return error("Only transactions have relationships.");
        if (!raw) return reprompt();
        return pick_related(*raw, CorrectionSlot::EditRelationship);
      case Intent::RemoveRelationship: {
        if (ref.kind != ConceptKind::Transaction) return error("Only transactions have relationships.");
        if (!raw) return reprompt();
        std::vector<std::string> names;
        for (const auto& r : model().transactions[ref.index].relationships) {
          if (utf8::iequals(r.target_name, *raw)) return edit_relationship(Intent::RemoveRelationship, r.target_name);
          names.push_back(r.target_name);
        }
        if (auto i = nearest_index(*raw, names)) {
          return correct(CorrectionSlot::EditRelationship, *raw, names[*i],
                         target + " does not involve " + *raw + ".", Intent::RemoveRelationship);
        }
        return error(target + " does not involve " + *raw + ".");
      }
      default: return reprompt();
    }
  }

  BotResponse pick_param(ElementRef ref, const std::string& raw, Intent edit_kind, std::optional<DataType> type) {
    std::vector<std::string> names;
    for (const auto& p : element_params(model(), ref)) {
      if (utf8::iequals(p.name, raw) || utf8::iequals(p.name, to_identifier(raw).value_or(""))) {
        return edit_parameter(edit_kind, p.name, type);
      }
      names.push_back(p.name);
    }
    const std::string& target = element_name(model(), ref);
    if (auto i = nearest_index(raw, names)) {
      return correct(CorrectionSlot::EditParameter, raw, names[*i], target + " has no parameter named " + raw + ".",
                     edit_kind, type);
    }
    return error(target + " has no parameter named " + raw + ".");
  }

  BotResponse edit_parameter(Intent edit_kind, const std::string& param, std::optional<DataType> type) {
    const std::string target = *pending().target;
    switch (edit_kind) {
      case Intent::RemoveParameter:
        return apply_edit(edit::RemoveParameter{param}, "Removed " + param + " from " + target + ".");
      case Intent::RetypeParameter:
        return apply_edit(edit::RetypeParameter{param, *type},
                          param + " is now of type " + std::string(to_string(*type)) + ".");
      default:
        return apply_edit(edit::SetIdentifier{param}, target + " is identified by " + param + ".");
    }
  }

  BotResponse edit_relationship(Intent edit_kind, const std::string& other) {
    const std::string target = *pending().target;
    if (edit_kind == Intent::RemoveRelationship) {
      return apply_edit(edit::RemoveRelationship{other}, target + " no longer involves " + other + ".");
    }
    auto ref = *find_element(model(), other);
    TargetKind kind = ref.kind == ConceptKind::Participant ? TargetKind::Participant : TargetKind::Asset;
    return apply_edit(edit::AddRelationship{{kind, other}}, target + " now involves " + other + ".");
  }

  BotResponse apply_edit(const ElementEdit& change, std::string done) {
    try {
      update_element(model(), *pending().target, change, id_);
    } catch (const ModelError& e) {
      return error(e.what());
    }
    return ask(std::move(done));
  }

  // ---- corrections ----

  BotResponse on_correction() {
    PendingCorrection pc = *s_.pending_correction;
    if (is(Intent::Deny)) {
      s_.pending_correction.reset();
      go(pc.fallback);
      return ask("OK.");
    }
    if (!is(Intent::Affirm)) return reprompt();
    s_.pending_correction.reset();
    go(pc.resume);
    switch (pc.slot) {
      case CorrectionSlot::Target: return perform_query(pc.suggestion);
      case CorrectionSlot::Platform: return set_platform(*parse_platform(pc.suggestion));
      case CorrectionSlot::Datatype: return set_param_type(*parse_datatype(pc.suggestion));
      case CorrectionSlot::AssetKind: return set_asset_kind(*parse_asset_kind(pc.suggestion));
      case CorrectionSlot::Identifier: return set_identifier(pc.suggestion);
      case CorrectionSlot::Relationship: return add_draft_relationship(pc.suggestion);
      case CorrectionSlot::EditParameter: return edit_parameter(*pc.edit, pc.suggestion, pc.edit_type);
      case CorrectionSlot::EditRelationship: return edit_relationship(*pc.edit, pc.suggestion);
    }
    return reprompt();
  }

  const DialogueEngine& engine_;
  Session& s_;
  UtteranceId id_;
  std::string text_;
  ParsedInput in_;
};

DialogueEngine::DialogueEngine(std::shared_ptr<const Lexicon> lexicon) : nlu_(std::move(lexicon)) {}

Session DialogueEngine::new_session() const { return new_session(random_id()); }

Session DialogueEngine::new_session(std::string id) const {
  Session s;
  s.id = std::move(id);
  BotResponse hello = greeting();
  std::string start = to_string(s.state);
  s.transcript.push_back({0, "bot", hello.text, start, start, std::string(to_string(hello.kind))});
  return s;
}

BotResponse DialogueEngine::greeting() const {
  return BotResponse{std::string(kGreeting), ResponseKind::Prompt, {"I want to create a contract", "help"}, {}};
}

BotResponse DialogueEngine::handle_message(Session& session, std::string_view utterance) const {
  if (session.done()) throw Error("session-done", "the session is finished; start a new one");
  UtteranceId id = session.log.empty() ? 1 : session.log.back().id + 1;
  session.log.push_back({id, std::string(utterance)});
  std::string before = to_string(session.state);
  BotResponse response = Turn(*this, session, id, utterance).run();
  std::string after = to_string(session.state);
  session.transcript.push_back({id, "user", std::string(utterance), before, after, std::nullopt});
  session.transcript.push_back({id, "bot", response.text, before, after, std::string(to_string(response.kind))});
  return response;
}

Session DialogueEngine::replay(const std::vector<TranscriptRecord>& transcript, std::string id) const {
  Session s = new_session(std::move(id));
  for (const auto& record : transcript) {
    if (record.role == "user") handle_message(s, record.text);
  }
  return s;
}

}  // namespace icb
