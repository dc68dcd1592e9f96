#pragma once

// Construction, mutation, traceability and the textual DSL form of a
// ContractModel.
//
// DSL grammar (one field per line, two-space indentation, LF endings):
//
//   Contract: <name>
//   Platform: <Solidity|HyperledgerComposer|Azure>
//   Participant {
//     Name: <name>
//     Creator: <T|F>
//     Identifier: <param>
//     Parameter {
//       Name: <name>
//       Type: <String|Integer|Decimal|Boolean|Address>
//     }
//   }
//   Asset { Name, Kind: <Tangible|Intangible>, Identifier, Parameter... }
//   Transaction { Name, Parameter..., Relationship { Target: <Participant|Asset>:<name> }... }
//
// Name opens every block; the other fields of a block may come in any
// order, each at most once. Header lines and optional fields (Identifier, Kind) are omitted while
// unset. Traces are session metadata and are not part of the document.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "icb/error.hpp"
#include "icb/metamodel.hpp"

namespace icb {

// Codes: duplicate-name, invalid-payload, not-found, invalid-edit, contract-undefined.
class ModelError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::string expected)
      : Error("syntax-error", "line " + std::to_string(line) + ": expected " + expected),
        line_(line),
        expected_(std::move(expected)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t line_;
  std::string expected_;
};

using ElementPayload = std::variant<Participant, Asset, Transaction>;

namespace edit {
struct Rename { std::string new_name; };
struct AddParameter { Parameter param; };
struct RemoveParameter { std::string name; };
struct RetypeParameter { std::string name; DataType type; };
struct SetIdentifier { std::string param; };
struct SetAssetKind { AssetKind kind; };
struct SetCreator { bool creator; };
struct AddRelationship { Relationship relationship; };
struct RemoveRelationship { std::string target_name; };
}  // namespace edit

using ElementEdit =
    std::variant<edit::Rename, edit::AddParameter, edit::RemoveParameter, edit::RetypeParameter, edit::SetIdentifier,
                 edit::SetAssetKind, edit::SetCreator, edit::AddRelationship, edit::RemoveRelationship>;

// Appends the element and records `utterances` as its trace. Requires the
// contract name and platform to be set. Relationships to missing elements
// are accepted; the validator reports them. The model is untouched on error.
void create_element(ContractModel& model, ElementPayload payload, std::span<const UtteranceId> utterances = {});

// Human-readable summary of one element.
std::string read_element(const ContractModel& model, std::string_view name);

// Applies one edit. Renames carry the trace over to the new id and retarget
// relationships; removing the identifier parameter clears the identifier.
void update_element(ContractModel& model, std::string_view name, const ElementEdit& change,
                    std::optional<UtteranceId> utterance = std::nullopt);

// Removes the element, every relationship targeting it, and its trace.
void delete_element(ContractModel& model, std::string_view name);

// Utterance ids that set or edited the element, in order.
std::vector<UtteranceId> trace(const ContractModel& model, std::string_view name);

// Appends `utterance` to the trace of `id` unless it is already the last entry.
void record_trace(ContractModel& model, const std::string& id, UtteranceId utterance);

std::string serialize(const ContractModel& model);

// Throws SyntaxError at the first offending line.
ContractModel parse_dsl(std::string_view text);

// Atomic write (temp file + rename) of serialize(model).
void save_model(const std::filesystem::path& path, const ContractModel& model);
ContractModel load_model(const std::filesystem::path& path);

}  // namespace icb
