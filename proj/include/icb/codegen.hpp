#pragma once

// Model-to-text transformation: renders a validated ContractModel into
// source files for each target platform from the templates under
// templates/.

#include <string>
#include <string_view>
#include <vector>

#include "icb/metamodel.hpp"

namespace icb {

// Lines [first_line, last_line] (1-based, inclusive) were emitted for `element`.
struct ProvenanceEntry {
  std::size_t first_line = 0;
  std::size_t last_line = 0;
  std::string element;

  bool operator==(const ProvenanceEntry&) const = default;
};

struct GeneratedArtifact {
  std::string filename;
  std::string content;
  PlatformTarget platform = PlatformTarget::EthereumSolidity;
  std::vector<ProvenanceEntry> provenance;

  bool operator==(const GeneratedArtifact&) const = default;
};

// Platform type token for a parameter type.
//   Solidity: bytes32 int256 int256 bool address
//   Composer: String Integer Double Boolean String
//   Azure (Workbench configuration): string int money bool address
std::string_view datatype_map(DataType type, PlatformTarget platform);

// Solidity:  <Name>.sol
// Composer:  <Name>.cto model + <Name>.js transaction processor skeleton
// Azure:     <Name>.json Workbench configuration + <Name>.sol
// Deterministic. Throws Error("precondition-violated") unless validate(model) is empty.
std::vector<GeneratedArtifact> generate(const ContractModel& model, PlatformTarget platform);

// Output directory name for a platform: "solidity", "hyperledgercomposer", "azure".
std::string platform_dir(PlatformTarget platform);

}  // namespace icb
