#include <set>

#include "doctest.h"
#include "icb/statechart.hpp"

using namespace icb;

TEST_CASE("state ids round-trip") {
  CHECK(all_states().size() == 20);
  std::set<std::string> ids;
  for (const auto& s : all_states()) {
    auto id = to_string(s);
    CHECK(ids.insert(id).second);
    CHECK(parse_state(id) == s);
  }
  CHECK(to_string(DialogueState::create(ConceptKind::Participant)) == "CreateElement.Participant");
  CHECK(to_string(DialogueState::query(CrudAction::Update)) == "QueryElement.Update");
  CHECK_FALSE(parse_state("CreateElement.Contract").has_value());
  CHECK_FALSE(parse_state("Nowhere").has_value());
}

TEST_CASE("intent ids round-trip") {
  for (auto i : kAllIntents) CHECK(parse_intent(to_string(i)) == i);
  CHECK_FALSE(parse_intent("Dance").has_value());
}

TEST_CASE("every non-terminal state accepts something and every intent is accepted somewhere") {
  std::set<Intent> used;
  for (const auto& s : all_states()) {
    auto legal = legal_intents(s);
    if (s.node == Node::Done) {
      CHECK(legal.empty());
    } else {
      CHECK_FALSE(legal.empty());
    }
    used.insert(legal.begin(), legal.end());
  }
  CHECK(used.size() == std::size(kAllIntents));
}

TEST_CASE("element creation is only legal from the main menu") {
  for (const auto& s : all_states()) {
    CHECK(is_legal(s, Intent::CreateElement) == (s.node == Node::MainMenu));
  }
  CHECK(is_legal(DialogueState::at(Node::Start), Intent::CreateContract));
  CHECK_FALSE(is_legal(DialogueState::at(Node::AwaitPlatform), Intent::CreateElement));
}
