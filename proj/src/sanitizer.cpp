#include "icb/sanitizer.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "icb/utf8.hpp"

namespace icb {

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  // prev[j] = distance(a[0..i), b[0..j))
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t substitution = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, substitution});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(utf8::decode(a), utf8::decode(b));
}

std::optional<MatchSuggestion> nearest_match(std::string_view input, std::span<const std::string> candidates) {
  const std::u32string in = utf8::decode(input);
  std::optional<MatchSuggestion> best;
  for (const auto& candidate : candidates) {
    const std::u32string c = utf8::decode(candidate);
    const std::size_t d = levenshtein(in, c);
    if (d == 0) return MatchSuggestion{candidate, 0, 0.0};
    if (!best || d < best->distance) {
      const auto longest = std::max(in.size(), c.size());
      best = MatchSuggestion{candidate, d, static_cast<double>(d) / static_cast<double>(longest)};
    }
  }
  if (best && best->normalized > kMaxNormalizedDistance) return std::nullopt;
  return best;
}

}  // namespace icb
