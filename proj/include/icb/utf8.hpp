#pragma once

#include <string>
#include <string_view>

namespace icb::utf8 {

// Decodes UTF-8 into code points. Malformed bytes decode to U+FFFD one
// byte at a time, so every input has a defined result.
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view text);

// ASCII-only case folding; non-ASCII bytes pass through untouched.
std::string to_lower(std::string_view text);

std::string trim(std::string_view text);

bool iequals(std::string_view a, std::string_view b);

}  // namespace icb::utf8
