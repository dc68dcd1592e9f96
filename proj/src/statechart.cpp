#include "icb/statechart.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace icb {

std::string_view to_string(Intent i) {
  switch (i) {
    case Intent::CreateContract: return "CreateContract";
    case Intent::Help: return "Help";
    case Intent::CreateElement: return "CreateElement";
    case Intent::ReadElement: return "ReadElement";
    case Intent::UpdateElement: return "UpdateElement";
    case Intent::DeleteElement: return "DeleteElement";
    case Intent::ShowModel: return "ShowModel";
    case Intent::GenerateCode: return "GenerateCode";
    case Intent::ChangePlatform: return "ChangePlatform";
    case Intent::ProvideName: return "ProvideName";
    case Intent::ProvidePlatform: return "ProvidePlatform";
    case Intent::ProvideDatatype: return "ProvideDatatype";
    case Intent::ProvideAssetKind: return "ProvideAssetKind";
    case Intent::AddParameter: return "AddParameter";
    case Intent::RemoveParameter: return "RemoveParameter";
    case Intent::RetypeParameter: return "RetypeParameter";
    case Intent::RenameElement: return "RenameElement";
    case Intent::SetIdentifier: return "SetIdentifier";
    case Intent::AddRelationship: return "AddRelationship";
    case Intent::RemoveRelationship: return "RemoveRelationship";
    case Intent::Affirm: return "Affirm";
    case Intent::Deny: return "Deny";
    case Intent::Finish: return "Finish";
    case Intent::Cancel: return "Cancel";
  }
  return "?";
}

std::optional<Intent> parse_intent(std::string_view s) {
  for (Intent i : kAllIntents) {
    if (to_string(i) == s) return i;
  }
  return std::nullopt;
}

namespace {

std::string_view node_name(Node n) {
  switch (n) {
    case Node::Start: return "Start";
    case Node::AwaitContractName: return "AwaitContractName";
    case Node::AwaitPlatform: return "AwaitPlatform";
    case Node::MainMenu: return "MainMenu";
    case Node::CreateElement: return "CreateElement";
    case Node::AwaitElementName: return "AwaitElementName";
    case Node::AwaitParamName: return "AwaitParamName";
    case Node::AwaitParamType: return "AwaitParamType";
    case Node::AwaitIdentifierChoice: return "AwaitIdentifierChoice";
    case Node::AwaitAssetKind: return "AwaitAssetKind";
    case Node::AwaitRelationshipTarget: return "AwaitRelationshipTarget";
    case Node::QueryElement: return "QueryElement";
    case Node::AwaitCorrectionConfirm: return "AwaitCorrectionConfirm";
    case Node::AwaitDeleteConfirm: return "AwaitDeleteConfirm";
    case Node::ReadyToGenerate: return "ReadyToGenerate";
    case Node::Done: return "Done";
  }
  return "?";
}

const std::vector<DialogueState>& state_table() {
  static const std::vector<DialogueState> table = {
      DialogueState::at(Node::Start),
      DialogueState::at(Node::AwaitContractName),
      DialogueState::at(Node::AwaitPlatform),
      DialogueState::at(Node::MainMenu),
      DialogueState::create(ConceptKind::Participant),
      DialogueState::create(ConceptKind::Asset),
      DialogueState::create(ConceptKind::Transaction),
      DialogueState::at(Node::AwaitElementName),
      DialogueState::at(Node::AwaitParamName),
      DialogueState::at(Node::AwaitParamType),
      DialogueState::at(Node::AwaitIdentifierChoice),
      DialogueState::at(Node::AwaitAssetKind),
      DialogueState::at(Node::AwaitRelationshipTarget),
      DialogueState::query(CrudAction::Read),
      DialogueState::query(CrudAction::Update),
      DialogueState::query(CrudAction::Delete),
      DialogueState::at(Node::AwaitCorrectionConfirm),
      DialogueState::at(Node::AwaitDeleteConfirm),
      DialogueState::at(Node::ReadyToGenerate),
      DialogueState::at(Node::Done),
  };
  return table;
}

using I = Intent;
constexpr std::array kStart = {I::CreateContract, I::Help};
constexpr std::array kContractName = {I::ProvideName, I::Cancel};
constexpr std::array kPlatform = {I::ProvidePlatform, I::Cancel};
constexpr std::array kMainMenu = {I::CreateElement, I::ReadElement,  I::UpdateElement,  I::DeleteElement,
                                  I::ShowModel,     I::GenerateCode, I::ChangePlatform, I::Help};
constexpr std::array kYesNoCancel = {I::Affirm, I::Deny, I::Cancel};
constexpr std::array kElementName = {I::ProvideName, I::Cancel};
constexpr std::array kParamName = {I::ProvideName, I::AddParameter, I::Finish, I::Cancel};
constexpr std::array kParamType = {I::ProvideDatatype, I::Cancel};
constexpr std::array kIdentifier = {I::ProvideName, I::SetIdentifier, I::Cancel};
constexpr std::array kAssetKind = {I::ProvideAssetKind, I::Cancel};
constexpr std::array kRelationship = {I::ProvideName, I::AddRelationship, I::Finish, I::Cancel};
constexpr std::array kQueryTarget = {I::ProvideName, I::Cancel};
constexpr std::array kQueryUpdate = {I::ProvideName,     I::RenameElement,    I::AddParameter,
                                     I::RemoveParameter, I::RetypeParameter,  I::SetIdentifier,
                                     I::ProvideAssetKind, I::AddRelationship, I::RemoveRelationship,
                                     I::Finish,           I::Cancel};
constexpr std::array kYesNo = {I::Affirm, I::Deny};
constexpr std::array kGenerate = {I::GenerateCode};

}  // namespace

std::string to_string(const DialogueState& s) {
  std::string out(node_name(s.node));
  if (s.kind) out += "." + std::string(icb::to_string(*s.kind));
  if (s.action) out += "." + std::string(icb::to_string(*s.action));
  return out;
}

std::optional<DialogueState> parse_state(std::string_view s) {
  for (const auto& state : state_table()) {
    if (to_string(state) == s) return state;
  }
  return std::nullopt;
}

std::span<const DialogueState> all_states() { return state_table(); }

std::span<const Intent> legal_intents(const DialogueState& s) {
  switch (s.node) {
    case Node::Start: return kStart;
    case Node::AwaitContractName: return kContractName;
    case Node::AwaitPlatform: return kPlatform;
    case Node::MainMenu: return kMainMenu;
    case Node::CreateElement: return kYesNoCancel;
    case Node::AwaitElementName: return kElementName;
    case Node::AwaitParamName: return kParamName;
    case Node::AwaitParamType: return kParamType;
    case Node::AwaitIdentifierChoice: return kIdentifier;
    case Node::AwaitAssetKind: return kAssetKind;
    case Node::AwaitRelationshipTarget: return kRelationship;
    case Node::QueryElement:
      if (s.action == CrudAction::Update) return kQueryUpdate;
      return kQueryTarget;
    case Node::AwaitCorrectionConfirm: return kYesNo;
    case Node::AwaitDeleteConfirm: return kYesNo;
    case Node::ReadyToGenerate: return kGenerate;
    case Node::Done: return {};
  }
  return {};
}

bool is_legal(const DialogueState& s, Intent i) {
  auto legal = legal_intents(s);
  return std::find(legal.begin(), legal.end(), i) != legal.end();
}

}  // namespace icb
