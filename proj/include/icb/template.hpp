#pragma once

#include <map>
#include <string>
#include <string_view>

namespace icb {

using TemplateSlots = std::map<std::string, std::string, std::less<>>;

// Replaces every ${slot} in `tmpl`. A slot missing from `slots` or an
// unterminated "${" throws Error("template-error"); output never contains
// an unresolved marker.
std::string render(std::string_view tmpl, const TemplateSlots& slots);

// Built-in template text by path, e.g. "templates/solidity/struct.tmpl".
std::string_view builtin_template(std::string_view name);

}  // namespace icb
