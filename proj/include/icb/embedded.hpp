#pragma once

#include <optional>
#include <string_view>

namespace icb::embedded {

// Data files compiled into the binary (lexicon, training corpus, code
// templates), keyed by their path relative to the source root.
std::optional<std::string_view> lookup(std::string_view name);

}  // namespace icb::embedded
