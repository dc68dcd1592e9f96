#pragma once

// JSON-lines conversation log: one record per message, user and bot
// records of the same turn share a turn id. Turn 0 is the greeting.
//
//   {"turn-id":1,"role":"user","text":"...","state-before":"Start","state-after":"AwaitContractName"}

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace icb {

struct TranscriptRecord {
  std::uint64_t turn_id = 0;
  std::string role;  // "user" or "bot"
  std::string text;
  std::string state_before;
  std::string state_after;
  std::optional<std::string> kind;  // bot records only: Prompt, Confirm, Error, Info, CodeReady

  bool operator==(const TranscriptRecord&) const = default;
};

std::string to_json_line(const TranscriptRecord& record);
TranscriptRecord parse_json_line(std::string_view line);

std::string to_jsonl(const std::vector<TranscriptRecord>& records);
// Blank lines are skipped; malformed lines throw Error("transcript-error").
std::vector<TranscriptRecord> parse_jsonl(std::string_view text);

}  // namespace icb
