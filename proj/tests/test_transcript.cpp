#include "doctest.h"
#include "icb/error.hpp"
#include "icb/transcript.hpp"

using namespace icb;

TEST_CASE("records round-trip through JSON lines") {
  std::vector<TranscriptRecord> records = {
      {0, "bot", "Hello", "Start", "Start", "Prompt"},
      {1, "user", "call it \"Record\"\nplease \xC3\xA9", "AwaitContractName", "AwaitPlatform", std::nullopt},
      {1, "bot", "ok", "AwaitContractName", "AwaitPlatform", "Prompt"},
  };
  auto text = to_jsonl(records);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  CHECK(parse_jsonl(text) == records);
}

TEST_CASE("line format uses kebab-case keys and omits absent kinds") {
  auto line = to_json_line({7, "user", "hi", "MainMenu", "MainMenu", std::nullopt});
  CHECK(line == R"({"turn-id":7,"role":"user","text":"hi","state-before":"MainMenu","state-after":"MainMenu"})");
}

TEST_CASE("blank lines are skipped and malformed lines rejected") {
  CHECK(parse_jsonl("\n\n").empty());
  CHECK_THROWS_AS(parse_jsonl("{not json}\n"), Error);
  CHECK_THROWS_AS(parse_json_line(R"({"turn-id":1,"role":"user"})"), Error);
  CHECK_THROWS_AS(parse_json_line(R"({"turn-id":-1,"role":"user","text":"","state-before":"","state-after":""})"),
                  Error);
}
