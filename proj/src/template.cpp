#include "icb/template.hpp"

#include "icb/embedded.hpp"
#include "icb/error.hpp"

namespace icb {

std::string render(std::string_view tmpl, const TemplateSlots& slots) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t pos = 0;
  while (true) {
    const auto open = tmpl.find("${", pos);
    if (open == std::string_view::npos) {
      out.append(tmpl.substr(pos));
      return out;
    }
    out.append(tmpl.substr(pos, open - pos));
    const auto close = tmpl.find('}', open + 2);
    if (close == std::string_view::npos) throw Error("template-error", "unterminated slot marker");
    const auto name = tmpl.substr(open + 2, close - open - 2);
    auto it = slots.find(name);
    if (it == slots.end()) throw Error("template-error", "no value for slot '" + std::string(name) + "'");
    out.append(it->second);
    pos = close + 1;
  }
}

std::string_view builtin_template(std::string_view name) {
  auto text = embedded::lookup(name);
  if (!text) throw Error("template-error", "no built-in template '" + std::string(name) + "'");
  return *text;
}

}  // namespace icb
