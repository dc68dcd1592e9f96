#pragma once

// Edit-distance correction of user-supplied names against known vocabulary.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace icb {

// Suggestions whose normalized distance exceeds this are discarded.
inline constexpr double kMaxNormalizedDistance = 0.5;

struct MatchSuggestion {
  std::string candidate;
  std::size_t distance = 0;
  double normalized = 0.0;  // distance / max(len(input), len(candidate)), code points

  bool operator==(const MatchSuggestion&) const = default;
};

// Minimum number of single code point insertions, deletions and
// substitutions turning `a` into `b`. Bottom-up dynamic programming over
// two rolling rows: O(|a|*|b|) time, O(min(|a|,|b|)) space.
std::size_t levenshtein(std::string_view a, std::string_view b);
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);

// Closest candidate by edit distance (ties go to the earliest candidate),
// provided its normalized distance is within kMaxNormalizedDistance.
// Comparison is case-sensitive; callers fold case first if they want it.
std::optional<MatchSuggestion> nearest_match(std::string_view input, std::span<const std::string> candidates);

}  // namespace icb
