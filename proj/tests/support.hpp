#pragma once

// Fixture access and independent checkers shared by the unit tests and the
// acceptance suite.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "icb/dialogue.hpp"

namespace icb::test {

inline std::filesystem::path fixture(const std::string& relative) {
  return std::filesystem::path(ICB_FIXTURES) / relative;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// One utterance per line; blank lines are kept as empty utterances.
inline std::vector<std::string> script(const std::string& name) {
  std::istringstream in(slurp(fixture("scripts/" + name + ".txt")));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

inline const std::vector<std::string>& use_cases() {
  static const std::vector<std::string> names = {"medical_record", "digital_certificate", "vehicle_auction"};
  return names;
}

inline Session run_script(const DialogueEngine& engine, const std::vector<std::string>& lines,
                          std::vector<BotResponse>* responses = nullptr) {
  Session s = engine.new_session("test");
  for (const auto& line : lines) {
    auto r = engine.handle_message(s, line);
    if (responses) responses->push_back(r);
  }
  return s;
}

// Bracket balance of (), [] and {}, skipping "..." / '...' literals and
// // and /* */ comments.
inline bool balanced(std::string_view text) {
  std::string stack;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '"' || c == '\'') {
      for (++i; i < text.size() && text[i] != c; ++i) {
        if (text[i] == '\\') ++i;
      }
      if (i >= text.size()) return false;
    } else if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '/' && i + 1 < text.size() && text[i + 1] == '*') {
      auto end = text.find("*/", i + 2);
      if (end == std::string_view::npos) return false;
      i = end + 1;
    } else if (c == '(' || c == '[' || c == '{') {
      stack.push_back(c);
    } else if (c == ')' || c == ']' || c == '}') {
      char open = c == ')' ? '(' : c == ']' ? '[' : '{';
      if (stack.empty() || stack.back() != open) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

inline std::size_t count_of(std::string_view haystack, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string_view::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

// Occurrences of `word` not preceded or followed by an identifier character.
inline std::size_t count_word(std::string_view haystack, std::string_view word) {
  auto ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  std::size_t n = 0;
  for (auto pos = haystack.find(word); pos != std::string_view::npos; pos = haystack.find(word, pos + 1)) {
    bool left = pos == 0 || !ident(haystack[pos - 1]);
    bool right = pos + word.size() == haystack.size() || !ident(haystack[pos + word.size()]);
    if (left && right) ++n;
  }
  return n;
}

}  // namespace icb::test
