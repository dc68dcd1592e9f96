#include "doctest.h"
#include "icb/error.hpp"
#include "icb/template.hpp"

using namespace icb;

TEST_CASE("slots are substituted everywhere they appear") {
  CHECK(render("${a}-${b}-${a}", {{"a", "x"}, {"b", "y"}}) == "x-y-x");
  CHECK(render("no slots", {}) == "no slots");
  CHECK(render("$a ${a}$", {{"a", "1"}}) == "$a 1$");
}

TEST_CASE("substituted text is not re-scanned") {
  CHECK(render("${a}", {{"a", "${b}"}}) == "${b}");
}

TEST_CASE("missing slots and unterminated markers are errors") {
  CHECK_THROWS_AS(render("${missing}", {}), Error);
  CHECK_THROWS_AS(render("x ${open", {{"open", "1"}}), Error);
  try {
    render("${missing}", {});
  } catch (const Error& e) {
    CHECK(e.code() == "template-error");
  }
}

TEST_CASE("built-in templates are embedded") {
  for (auto name : {"templates/solidity/contract.tmpl", "templates/solidity/struct.tmpl",
                    "templates/solidity/field.tmpl", "templates/solidity/function.tmpl",
                    "templates/composer/model.tmpl", "templates/composer/participant.tmpl",
                    "templates/composer/asset.tmpl", "templates/composer/transaction.tmpl",
                    "templates/composer/logic.tmpl", "templates/composer/logic_function.tmpl"}) {
    CHECK_FALSE(builtin_template(name).empty());
  }
  CHECK(builtin_template("templates/solidity/contract.tmpl").find("contract ${contract}{") != std::string_view::npos);
  CHECK_THROWS_AS(builtin_template("templates/nope.tmpl"), Error);
}
