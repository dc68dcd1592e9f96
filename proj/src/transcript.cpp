#include "icb/transcript.hpp"

#include "icb/error.hpp"
#include "json.hpp"

namespace icb {

std::string to_json_line(const TranscriptRecord& r) {
  nlohmann::ordered_json j = {{"turn-id", r.turn_id},
                              {"role", r.role},
                              {"text", r.text},
                              {"state-before", r.state_before},
                              {"state-after", r.state_after}};
  if (r.kind) j["kind"] = *r.kind;
  return j.dump();
}

TranscriptRecord parse_json_line(std::string_view line) {
  try {
    const auto j = nlohmann::json::parse(line);
    TranscriptRecord r;
    if (!j.at("turn-id").is_number_unsigned()) throw Error("transcript-error", "turn-id must be a non-negative integer");
    r.turn_id = j.at("turn-id").get<std::uint64_t>();
    r.role = j.at("role").get<std::string>();
    r.text = j.at("text").get<std::string>();
    r.state_before = j.at("state-before").get<std::string>();
    r.state_after = j.at("state-after").get<std::string>();
    if (j.contains("kind")) r.kind = j.at("kind").get<std::string>();
    if (r.role != "user" && r.role != "bot") throw Error("transcript-error", "role must be 'user' or 'bot'");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error("transcript-error", std::string("malformed transcript record: ") + e.what());
  }
}

std::string to_jsonl(const std::vector<TranscriptRecord>& records) {
  std::string out;
  for (const auto& r : records) out += to_json_line(r) + "\n";
  return out;
}

std::vector<TranscriptRecord> parse_jsonl(std::string_view text) {
  std::vector<TranscriptRecord> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) out.push_back(parse_json_line(line));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

}  // namespace icb
