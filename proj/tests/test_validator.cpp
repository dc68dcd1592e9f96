#include "doctest.h"
#include "icb/validator.hpp"

using namespace icb;

namespace {

ContractModel valid() {
  ContractModel m;
  m.name = "Auction";
  m.platform = PlatformTarget::HyperledgerComposer;
  m.participants.push_back({"bidder", false, "bidderId", {{"bidderId", DataType::String}}});
  m.assets.push_back({"vehicle", AssetKind::Tangible, "vin", {{"vin", DataType::String}}});
  m.transactions.push_back(
      {"placeBid", {{"amount", DataType::Integer}}, {{TargetKind::Participant, "bidder"}, {TargetKind::Asset, "vehicle"}}});
  return m;
}

std::vector<Rule> rules(const std::vector<Violation>& vs) {
  std::vector<Rule> out;
  for (const auto& v : vs) out.push_back(v.rule);
  return out;
}

}  // namespace

TEST_CASE("a complete model is valid") { CHECK(validate(valid()).empty()); }

TEST_CASE("each rule fires alone on its minimal mutant") {
  auto m = valid();
  SUBCASE("V1") {
    m.platform.reset();
    auto v = validate(m);
    CHECK(rules(v) == std::vector{Rule::V1});
    CHECK(v[0].message == "A target platform must be specified.");
  }
  SUBCASE("V2") {
    m.name.reset();
    auto v = validate(m);
    CHECK(rules(v) == std::vector{Rule::V2});
    CHECK(v[0].message == "A contract name must be specified.");
  }
  SUBCASE("V3") {
    m.assets[0].kind.reset();
    auto v = validate(m);
    CHECK(rules(v) == std::vector{Rule::V3});
    CHECK(v[0].element == "asset:vehicle");
  }
  SUBCASE("V4") {
    m.participants[0].identifier.reset();
    auto v = validate(m);
    CHECK(rules(v) == std::vector{Rule::V4});
    CHECK(v[0].message.find("A unique identifier must be specified") == 0);
  }
  SUBCASE("V5 missing target") {
    m.transactions[0].relationships[1].target_name = "boat";
    CHECK(rules(validate(m)) == std::vector{Rule::V5});
  }
  SUBCASE("V5 wrong kind") {
    m.transactions[0].relationships[0].target_kind = TargetKind::Asset;
    CHECK(rules(validate(m)) == std::vector{Rule::V5});
  }
  SUBCASE("V6") {
    m.transactions[0].params.push_back({"amount", DataType::Decimal});
    CHECK(rules(validate(m)) == std::vector{Rule::V6});
  }
  SUBCASE("V7") {
    m.assets[0].identifier = "plate";
    CHECK(rules(validate(m)) == std::vector{Rule::V7});
  }
}

TEST_CASE("all violations are reported in rule order") {
  ContractModel m;
  m.assets.push_back({"a", std::nullopt, std::nullopt, {}});
  m.transactions.push_back({"t", {}, {{TargetKind::Participant, "ghost"}}});
  CHECK(rules(validate(m)) == std::vector{Rule::V1, Rule::V2, Rule::V3, Rule::V4, Rule::V5});
}

TEST_CASE("validation does not mutate") {
  auto m = valid();
  m.platform.reset();
  const auto before = m;
  validate(m);
  CHECK(m == before);
  CHECK(to_string(Rule::V7) == "V7");
}
