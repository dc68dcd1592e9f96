#pragma once

// Abstract syntax of a smart contract: the concepts every other module
// builds, checks, serializes and renders.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace icb {

enum class PlatformTarget { EthereumSolidity, HyperledgerComposer, AzureBlockchainWorkbench };

enum class ConceptKind { Contract, Participant, Asset, Transaction, Parameter, Relationship };

enum class CrudAction { Create, Read, Update, Delete };

enum class DataType { String, Integer, Decimal, Boolean, Address };

enum class AssetKind { Tangible, Intangible };

// Relationships may only point at participants or assets.
enum class TargetKind { Participant, Asset };

inline constexpr PlatformTarget kAllPlatforms[] = {PlatformTarget::EthereumSolidity,
                                                   PlatformTarget::HyperledgerComposer,
                                                   PlatformTarget::AzureBlockchainWorkbench};
inline constexpr DataType kAllDataTypes[] = {DataType::String, DataType::Integer, DataType::Decimal,
                                             DataType::Boolean, DataType::Address};
inline constexpr ConceptKind kAllConcepts[] = {ConceptKind::Contract,    ConceptKind::Participant,
                                               ConceptKind::Asset,       ConceptKind::Transaction,
                                               ConceptKind::Parameter,   ConceptKind::Relationship};
inline constexpr CrudAction kAllActions[] = {CrudAction::Create, CrudAction::Read, CrudAction::Update,
                                             CrudAction::Delete};

// Canonical spellings. Platform names are the DSL tokens
// (Solidity, HyperledgerComposer, Azure).
std::string_view to_string(PlatformTarget p);
std::string_view to_string(ConceptKind k);
std::string_view to_string(CrudAction a);
std::string_view to_string(DataType t);
std::string_view to_string(AssetKind k);
std::string_view to_string(TargetKind k);

// Exact (case-sensitive) inverses of to_string.
std::optional<PlatformTarget> parse_platform(std::string_view s);
std::optional<ConceptKind> parse_concept(std::string_view s);
std::optional<CrudAction> parse_action(std::string_view s);
std::optional<DataType> parse_datatype(std::string_view s);
std::optional<AssetKind> parse_asset_kind(std::string_view s);
std::optional<TargetKind> parse_target_kind(std::string_view s);

ConceptKind to_concept(TargetKind k);

using UtteranceId = std::uint64_t;

struct Parameter {
  std::string name;
  DataType type = DataType::String;

  bool operator==(const Parameter&) const = default;
};

struct Participant {
  std::string name;
  bool is_creator = false;
  std::optional<std::string> identifier;
  std::vector<Parameter> params;

  bool operator==(const Participant&) const = default;
};

struct Asset {
  std::string name;
  std::optional<AssetKind> kind;
  std::optional<std::string> identifier;
  std::vector<Parameter> params;

  bool operator==(const Asset&) const = default;
};

struct Relationship {
  TargetKind target_kind = TargetKind::Asset;
  std::string target_name;

  bool operator==(const Relationship&) const = default;
};

struct Transaction {
  std::string name;
  std::vector<Parameter> params;
  std::vector<Relationship> relationships;

  bool operator==(const Transaction&) const = default;
};

struct ContractModel {
  std::optional<std::string> name;
  std::optional<PlatformTarget> platform;
  std::vector<Participant> participants;
  std::vector<Asset> assets;
  std::vector<Transaction> transactions;
  // element-id -> ids of the utterances that set or edited the element.
  std::map<std::string, std::vector<UtteranceId>> trace;

  bool operator==(const ContractModel&) const = default;
};

// Position of an element inside its kind's list.
struct ElementRef {
  ConceptKind kind = ConceptKind::Participant;
  std::size_t index = 0;

  bool operator==(const ElementRef&) const = default;
};

// Case-insensitive lookup across participants, assets and transactions.
// Never resolves to the contract itself.
std::optional<ElementRef> find_element(const ContractModel& model, std::string_view name);

const std::string& element_name(const ContractModel& model, ElementRef ref);
std::vector<Parameter>& element_params(ContractModel& model, ElementRef ref);
const std::vector<Parameter>& element_params(const ContractModel& model, ElementRef ref);

// Trace key for an element: "<kind>:<lowercased-name>", e.g. "participant:patient".
std::string element_id(ConceptKind kind, std::string_view name);
std::string contract_element_id(const ContractModel& model);

// [A-Za-z][A-Za-z0-9_]*
bool is_identifier(std::string_view name);

// Every element in model order (participants, assets, transactions).
std::vector<ElementRef> all_elements(const ContractModel& model);

// Structural invariants the dialogue engine must preserve after every turn:
// identifier-shaped unique element names, unique parameter names per element,
// identifiers naming owned parameters, trace keys naming live elements.
// Returns human-readable descriptions; empty when all hold.
std::vector<std::string> invariant_violations(const ContractModel& model);

}  // namespace icb
