#pragma once

// The chatbot intent flow: a statechart that turns a conversation into a
// ContractModel, one user message at a time.
//
// A contract (name, then platform) must exist before anything else. From
// the main menu the user creates, reads, updates or deletes participants,
// assets and transactions. Creation collects slots in a fixed order:
//
//   name -> parameters (loop, "done" ends) -> identifier -> asset kind
//        -> relationships (transactions, loop) -> confirmation
//
// Read/update/delete resolve their target first; an unknown name yields an
// edit-distance suggestion to confirm, or an error. Deletion always asks
// for confirmation. "generate the code" validates the model and, when it
// is clean, renders the platform artifacts and ends the session.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "icb/codegen.hpp"
#include "icb/lexicon.hpp"
#include "icb/metamodel.hpp"
#include "icb/nlu.hpp"
#include "icb/statechart.hpp"
#include "icb/transcript.hpp"

namespace icb {

enum class ResponseKind { Prompt, Confirm, Error, Info, CodeReady };

std::string_view to_string(ResponseKind k);

struct BotResponse {
  std::string text;
  ResponseKind kind = ResponseKind::Prompt;
  std::vector<std::string> suggestions;      // quick replies, sent verbatim when picked
  std::vector<GeneratedArtifact> artifacts;  // CodeReady only

  bool operator==(const BotResponse&) const = default;
};

struct Utterance {
  UtteranceId id = 0;
  std::string text;

  bool operator==(const Utterance&) const = default;
};

// Element under construction, or the target of a read/update/delete.
struct SlotFrame {
  std::optional<ConceptKind> kind;
  std::string name;
  std::vector<Parameter> params;
  std::optional<std::string> pending_param;  // named, awaiting its type
  std::optional<std::string> identifier;
  std::optional<AssetKind> asset_kind;
  bool is_creator = false;
  std::vector<Relationship> relationships;
  std::vector<UtteranceId> trace;

  std::optional<CrudAction> action;
  std::optional<ConceptKind> concept_filter;  // kind named in a query ("delete the asset x")
  std::optional<std::string> target;           // resolved element name
  bool editing = false;                        // AwaitParamType reached from an update

  bool operator==(const SlotFrame&) const = default;
};

enum class CorrectionSlot { Target, Platform, Datatype, Identifier, AssetKind, Relationship, EditParameter, EditRelationship };

struct PendingCorrection {
  std::string original;
  std::string suggestion;
  CorrectionSlot slot = CorrectionSlot::Target;
  DialogueState resume;    // state to continue from on "yes"
  DialogueState fallback;  // state to return to on "no"
  std::optional<Intent> edit;          // EditParameter/EditRelationship: which edit
  std::optional<DataType> edit_type;   // RetypeParameter: the new type

  bool operator==(const PendingCorrection&) const = default;
};

struct Session {
  std::string id;
  DialogueState state;
  SlotFrame pending;
  ContractModel model;
  std::vector<Utterance> log;
  std::optional<PendingCorrection> pending_correction;
  std::vector<TranscriptRecord> transcript;
  std::vector<GeneratedArtifact> artifacts;  // set once the session reaches Done

  bool done() const { return state.node == Node::Done; }
};

class DialogueEngine {
 public:
  explicit DialogueEngine(std::shared_ptr<const Lexicon> lexicon = Lexicon::builtin());

  // Fresh session in Start with a random 16-hex-digit id; the greeting is
  // transcript turn 0.
  Session new_session() const;
  Session new_session(std::string id) const;

  BotResponse greeting() const;

  // One user turn. Throws Error("session-done") once the session is Done.
  // Unrecognized input never throws: it is answered with a reprompt.
  BotResponse handle_message(Session& session, std::string_view utterance) const;

  // Feeds the user records of `transcript` into a fresh session.
  Session replay(const std::vector<TranscriptRecord>& transcript, std::string id = "replay") const;

  const Nlu& nlu() const noexcept { return nlu_; }
  const Lexicon& lexicon() const noexcept { return nlu_.lexicon(); }

 private:
  class Turn;

  Nlu nlu_;
};

// "bid amount" -> "bidAmount"; single words pass through. Returns nullopt
// when the result is not an identifier.
std::optional<std::string> to_identifier(std::string_view text);

}  // namespace icb
