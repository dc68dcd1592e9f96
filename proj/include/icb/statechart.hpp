#pragma once

// Closed vocabulary of the chatbot intent flow: intents, statechart nodes,
// and which intents each node accepts. Shared by the NLU (context filtering)
// and the dialogue engine (routing).

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "icb/metamodel.hpp"

namespace icb {

enum class Intent {
  CreateContract,
  Help,
  CreateElement,
  ReadElement,
  UpdateElement,
  DeleteElement,
  ShowModel,
  GenerateCode,
  ChangePlatform,
  ProvideName,
  ProvidePlatform,
  ProvideDatatype,
  ProvideAssetKind,
  AddParameter,
  RemoveParameter,
  RetypeParameter,
  RenameElement,
  SetIdentifier,
  AddRelationship,
  RemoveRelationship,
  Affirm,
  Deny,
  Finish,
  Cancel,
};

inline constexpr Intent kAllIntents[] = {
    Intent::CreateContract,  Intent::Help,           Intent::CreateElement,    Intent::ReadElement,
    Intent::UpdateElement,   Intent::DeleteElement,  Intent::ShowModel,        Intent::GenerateCode,
    Intent::ChangePlatform,  Intent::ProvideName,    Intent::ProvidePlatform,  Intent::ProvideDatatype,
    Intent::ProvideAssetKind, Intent::AddParameter,  Intent::RemoveParameter,  Intent::RetypeParameter,
    Intent::RenameElement,   Intent::SetIdentifier,  Intent::AddRelationship,  Intent::RemoveRelationship,
    Intent::Affirm,          Intent::Deny,           Intent::Finish,           Intent::Cancel,
};

std::string_view to_string(Intent i);
std::optional<Intent> parse_intent(std::string_view s);

enum class Node {
  Start,
  AwaitContractName,
  AwaitPlatform,
  MainMenu,
  CreateElement,  // parameterized by element kind
  AwaitElementName,
  AwaitParamName,
  AwaitParamType,
  AwaitIdentifierChoice,
  AwaitAssetKind,
  AwaitRelationshipTarget,
  QueryElement,  // parameterized by Read/Update/Delete
  AwaitCorrectionConfirm,
  AwaitDeleteConfirm,
  ReadyToGenerate,
  Done,
};

// A statechart position. `kind` is set only for CreateElement (Participant,
// Asset or Transaction); `action` only for QueryElement (Read, Update or
// Delete).
struct DialogueState {
  Node node = Node::Start;
  std::optional<ConceptKind> kind;
  std::optional<CrudAction> action;

  bool operator==(const DialogueState&) const = default;

  static DialogueState at(Node n) { return {n, std::nullopt, std::nullopt}; }
  static DialogueState create(ConceptKind k) { return {Node::CreateElement, k, std::nullopt}; }
  static DialogueState query(CrudAction a) { return {Node::QueryElement, std::nullopt, a}; }
};

// "MainMenu", "CreateElement.Participant", "QueryElement.Update", ...
std::string to_string(const DialogueState& s);
std::optional<DialogueState> parse_state(std::string_view s);

// Every reachable statechart node, in declaration order.
std::span<const DialogueState> all_states();

std::span<const Intent> legal_intents(const DialogueState& s);
bool is_legal(const DialogueState& s, Intent i);

}  // namespace icb
