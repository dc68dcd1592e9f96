#include <string>

#include "doctest.h"
#include "icb/nlu.hpp"

using namespace icb;

namespace {

const Nlu& nlu() {
  static const Nlu instance(Lexicon::builtin());
  return instance;
}

ParsedInput at(Node node, std::string_view text) { return nlu().match_intent(text, DialogueState::at(node)); }

}  // namespace

TEST_CASE("tokenize splits words, numbers, punctuation and quoted spans") {
  auto tokens = tokenize("Let's add \"bid amount\", 42 items!");
  REQUIRE(tokens.size() == 7);
  CHECK(tokens[0].surface == "Let's");
  CHECK(tokens[0].lowered == "let's");
  CHECK(tokens[2].kind == TokenKind::Quoted);
  CHECK(tokens[2].surface == "\"bid amount\"");
  CHECK(tokens[2].lowered == "bid amount");
  CHECK(tokens[3].kind == TokenKind::Punct);
  CHECK(tokens[4].kind == TokenKind::Number);
  CHECK(tokens[6].surface == "!");
}

TEST_CASE("token offsets rebuild the utterance") {
  std::string text = "  create   a \"smart contract\" now. \"open";
  for (const auto& t : tokenize(text)) CHECK(text.substr(t.offset, t.surface.size()) == t.surface);
  CHECK(tokenize("\"open").front().kind == TokenKind::Punct);
  CHECK(tokenize("").empty());
}

TEST_CASE("phrases classify into verbs, regular nouns and proper nouns") {
  auto classes = classify_phrases(tokenize("Please create a smart contract called MedicalRecord"), nlu().lexicon());
  REQUIRE(classes.verbs.size() == 1);
  CHECK(classes.verbs[0].term == Term{TermKind::Action, "Create"});
  REQUIRE(classes.regular_nouns.size() == 1);
  CHECK(classes.regular_nouns[0].text == "smart contract");
  CHECK(classes.regular_nouns[0].term == Term{TermKind::Concept, "Contract"});
  CHECK(classes.proper_nouns == std::vector<std::string>{"MedicalRecord"});

  auto quoted = classify_phrases(tokenize("add \"the string\" please"), nlu().lexicon());
  CHECK(quoted.proper_nouns == std::vector<std::string>{"the string"});
  CHECK(quoted.regular_nouns.empty());
}

TEST_CASE("the contract-creation utterance matches and a bare noun phrase does not") {
  auto yes = at(Node::Start, "I want to create a contract");
  CHECK(yes.intent == Intent::CreateContract);
  CHECK(yes.score >= kIntentThreshold);
  CHECK(yes.action == CrudAction::Create);
  CHECK(yes.element_kind == ConceptKind::Contract);

  auto no = at(Node::Start, "A contract");
  CHECK_FALSE(no.intent.has_value());
  CHECK(no.score < kIntentThreshold);
}

TEST_CASE("placeholders bind user values") {
  auto del = at(Node::MainMenu, "delete the participant docter");
  CHECK(del.intent == Intent::DeleteElement);
  CHECK(del.values.at("element") == "Participant");
  CHECK(del.values.at("name") == "docter");

  auto create = at(Node::MainMenu, "add a new role called patient");
  CHECK(create.intent == Intent::CreateElement);
  CHECK(create.values.at("element") == "Participant");
  CHECK(create.values.at("name") == "patient");

  auto param = at(Node::AwaitParamName, "\"bid amount\" int");
  CHECK(param.intent == Intent::AddParameter);
  CHECK(param.values.at("name") == "bid amount");
  CHECK(param.values.at("datatype") == "Integer");

  auto platform = at(Node::AwaitPlatform, "ethereum");
  CHECK(platform.intent == Intent::ProvidePlatform);
  CHECK(platform.values.at("platform") == "Solidity");

  auto name = at(Node::AwaitContractName, "MedicalRecord");
  CHECK(name.intent == Intent::ProvideName);
  CHECK(name.values.at("name") == "MedicalRecord");
}

TEST_CASE("the element placeholder accepts only participant, asset and transaction") {
  auto p = at(Node::MainMenu, "create a parameter");
  CHECK(p.intent != Intent::CreateElement);
}

TEST_CASE("replies and finish words resolve in their states") {
  CHECK(at(Node::AwaitDeleteConfirm, "yes").intent == Intent::Affirm);
  CHECK(at(Node::AwaitDeleteConfirm, "nope").intent == Intent::Deny);
  CHECK(at(Node::AwaitParamName, "done").intent == Intent::Finish);
  CHECK(at(Node::AwaitParamName, "name").intent == Intent::ProvideName);
  CHECK(at(Node::AwaitParamType, "string").intent == Intent::ProvideDatatype);
  CHECK(at(Node::AwaitAssetKind, "intangible").intent == Intent::ProvideAssetKind);
}

TEST_CASE("matching never leaves the legal set of the context") {
  const char* utterances[] = {"I want to create a contract", "yes", "no", "done", "delete the asset record",
                              "MedicalRecord", "string", "solidity", "generate the code", "help", "cancel",
                              "rename it to doctor", "add a parameter age of type integer", "tangible", "xyzzy"};
  for (const auto& state : all_states()) {
    for (auto u : utterances) {
      auto parsed = nlu().match_intent(u, state);
      if (parsed.intent) CHECK(is_legal(state, *parsed.intent));
    }
  }
}

TEST_CASE("Done accepts nothing") {
  CHECK_FALSE(at(Node::Done, "generate the code").intent.has_value());
}

TEST_CASE("score_all reports every intent, context-free") {
  auto scores = nlu().score_all("generate the code");
  CHECK(scores.size() == std::size(kAllIntents));
  auto best = std::max_element(scores.begin(), scores.end(),
                               [](const auto& a, const auto& b) { return a.score < b.score; });
  CHECK(best->intent == Intent::GenerateCode);
  CHECK(best->score == doctest::Approx(1.0));
}

TEST_CASE("matching is deterministic") {
  for (int i = 0; i < 3; ++i) CHECK(at(Node::MainMenu, "show me the patient") == at(Node::MainMenu, "show me the patient"));
}
