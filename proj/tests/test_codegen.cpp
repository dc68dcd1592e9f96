#include <cstdlib>
#include <algorithm>
#include <set>
#include <sstream>

#include "doctest.h"
#include "icb/codegen.hpp"
#include "icb/error.hpp"
#include "icb/files.hpp"
#include "icb/model_store.hpp"
#include "icb/validator.hpp"
#include "support.hpp"

using namespace icb;

namespace {

const DialogueEngine& engine() {
  static const DialogueEngine e;
  return e;
}

ContractModel model_of(const std::string& use_case) { return test::run_script(engine(), test::script(use_case)).model; }

// Set ICB_UPDATE_GOLDEN=1 to rewrite the golden files from current output.
bool updating() { return std::getenv("ICB_UPDATE_GOLDEN") != nullptr; }

void check_golden(const std::filesystem::path& path, const std::string& actual) {
  if (updating()) write_file_atomic(path, actual);
  REQUIRE_MESSAGE(std::filesystem::exists(path), path.string());
  CHECK_MESSAGE(test::slurp(path) == actual, path.string());
}

std::set<std::string> element_ids(const ContractModel& m) {
  std::set<std::string> ids = {contract_element_id(m)};
  for (auto ref : all_elements(m)) ids.insert(element_id(ref.kind, element_name(m, ref)));
  return ids;
}

}  // namespace

TEST_CASE("datatype table") {
  using enum DataType;
  const auto sol = PlatformTarget::EthereumSolidity;
  const auto hlc = PlatformTarget::HyperledgerComposer;
  const auto az = PlatformTarget::AzureBlockchainWorkbench;
  CHECK(datatype_map(String, sol) == "bytes32");
  CHECK(datatype_map(Integer, sol) == "int256");
  CHECK(datatype_map(Decimal, sol) == "int256");
  CHECK(datatype_map(Boolean, sol) == "bool");
  CHECK(datatype_map(Address, sol) == "address");
  CHECK(datatype_map(String, hlc) == "String");
  CHECK(datatype_map(Integer, hlc) == "Integer");
  CHECK(datatype_map(Decimal, hlc) == "Double");
  CHECK(datatype_map(Boolean, hlc) == "Boolean");
  CHECK(datatype_map(Address, hlc) == "String");
  CHECK(datatype_map(String, az) == "string");
  CHECK(datatype_map(Integer, az) == "int");
  CHECK(datatype_map(Decimal, az) == "money");
  CHECK(datatype_map(Boolean, az) == "bool");
  CHECK(datatype_map(Address, az) == "address");
  CHECK(platform_dir(hlc) == "hyperledgercomposer");
}

TEST_CASE("medical record reproduces the published Solidity listing") {
  auto files = generate(model_of("medical_record"), PlatformTarget::EthereumSolidity);
  REQUIRE(files.size() == 1);
  CHECK(files[0].filename == "MedicalRecord.sol");
  CHECK(files[0].content ==
        "pragma solidity >=0.4.22 <0.7.0;\n"
        "contract MedicalRecord{\n"
        "    constructor() public {}\n"
        "    struct Patient{\n"
        "    bytes32 name;\n"
        "    address patientAddress;}\n"
        "    struct Record{\n"
        "    bytes32 id;\n"
        "    bytes32 owner;}\n"
        "}\n");
}

TEST_CASE("use-case outputs match the golden files") {
  for (const auto& use_case : test::use_cases()) {
    auto model = model_of(use_case);
    REQUIRE(validate(model).empty());
    const auto dir = test::fixture("golden/" + use_case);
    check_golden(dir / "model.icb", serialize(model));
    for (auto platform : kAllPlatforms) {
      auto files = generate(model, platform);
      std::set<std::string> names;
      for (const auto& f : files) {
        names.insert(f.filename);
        check_golden(dir / platform_dir(platform) / f.filename, f.content);
      }
      std::set<std::string> on_disk;
      for (const auto& e : std::filesystem::directory_iterator(dir / platform_dir(platform))) {
        on_disk.insert(e.path().filename().string());
      }
      CHECK(names == on_disk);
    }
  }
}

TEST_CASE("generated files are syntactically sane and trace back to every element") {
  for (const auto& use_case : test::use_cases()) {
    auto model = model_of(use_case);
    for (auto platform : kAllPlatforms) {
      CAPTURE(use_case);
      CAPTURE(platform_dir(platform));
      auto files = generate(model, platform);
      std::set<std::string> covered;
      for (const auto& f : files) {
        CHECK(test::balanced(f.content));
        CHECK(f.content.find("${") == std::string::npos);
        CHECK(f.platform == platform);
        const auto lines = static_cast<std::size_t>(std::count(f.content.begin(), f.content.end(), '\n'));
        for (const auto& p : f.provenance) {
          CHECK(p.first_line >= 1);
          CHECK(p.first_line <= p.last_line);
          CHECK(p.last_line <= lines);
          covered.insert(p.element);
        }
        if (f.filename.ends_with(".sol")) {
          CHECK(test::count_of(f.content, "\ncontract ") == 1);
          for (const auto& t : model.transactions) CHECK(test::count_of(f.content, "function " + t.name + "(") == 1);
        }
        if (f.filename.ends_with(".cto")) {
          for (const auto& t : model.transactions) {
            std::string type = t.name;
            type[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(type[0])));
            CHECK(test::count_of(f.content, "transaction " + type + " {") == 1);
          }
        }
        if (f.filename.ends_with(".js")) {
          for (const auto& t : model.transactions) CHECK(test::count_of(f.content, "async function " + t.name + "(") == 1);
        }
        if (f.filename.ends_with(".json")) {
          for (const auto& t : model.transactions) CHECK(test::count_of(f.content, "\"Function\": \"" + t.name + "\"") == 1);
        }
      }
      CHECK(covered == element_ids(model));
    }
  }
}

TEST_CASE("provenance points at the lines naming the element") {
  auto model = model_of("medical_record");
  auto files = generate(model, PlatformTarget::EthereumSolidity);
  std::vector<std::string> lines;
  std::istringstream in(files[0].content);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  for (const auto& p : files[0].provenance) {
    if (p.element == "participant:patient") CHECK(lines[p.first_line - 1] == "    struct Patient{");
    if (p.element == "asset:record") CHECK(lines[p.first_line - 1] == "    struct Record{");
  }
}

TEST_CASE("decimals carry the scaling note and name clashes are disambiguated") {
  ContractModel m = parse_dsl(
      "Contract: Shop\nPlatform: Solidity\n"
      "Asset {\n  Name: item\n  Kind: Tangible\n  Identifier: sku\n"
      "  Parameter {\n    Name: sku\n    Type: String\n  }\n"
      "  Parameter {\n    Name: price\n    Type: Decimal\n  }\n}\n"
      "Transaction {\n  Name: buy\n"
      "  Parameter {\n    Name: item\n    Type: String\n  }\n"
      "  Relationship {\n    Target: Asset:item\n  }\n}\n");
  auto sol = generate(m, PlatformTarget::EthereumSolidity)[0].content;
  CHECK(sol.find("    // fixed-point: value scaled by 10**18\n    int256 price;}") != std::string::npos);
  CHECK(test::balanced(sol));
  auto cto = generate(m, PlatformTarget::HyperledgerComposer)[0].content;
  CHECK(cto.find("o String item\n") != std::string::npos);
  CHECK(cto.find("--> Item itemRef\n") != std::string::npos);
  CHECK(cto.find("o Double price") != std::string::npos);
}

TEST_CASE("generation refuses invalid models and is deterministic") {
  auto model = model_of("vehicle_auction");
  for (auto platform : kAllPlatforms) CHECK(generate(model, platform) == generate(model, platform));
  model.assets[0].kind.reset();
  try {
    generate(model, PlatformTarget::EthereumSolidity);
    FAIL("generated from an invalid model");
  } catch (const Error& e) {
    CHECK(e.code() == "precondition-violated");
  }
}
