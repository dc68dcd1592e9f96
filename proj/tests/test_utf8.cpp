#include "doctest.h"
#include "icb/utf8.hpp"

using namespace icb;

TEST_CASE("decode and encode round-trip multi-byte text") {
  std::string text = "caf\xC3\xA9 \xE2\x82\xAC \xF0\x9F\x98\x80";
  auto cps = utf8::decode(text);
  REQUIRE(cps.size() == 8);
  CHECK(cps[3] == U'é');
  CHECK(cps[5] == U'€');
  CHECK(cps[7] == U'\U0001F600');
  CHECK(utf8::encode(cps) == text);
}

TEST_CASE("malformed bytes decode to replacement characters one at a time") {
  CHECK(utf8::decode("a\xFF" "b") == U"a\uFFFDb");
  CHECK(utf8::decode("\xC3") == U"\uFFFD");  // truncated sequence
  CHECK(utf8::decode("\xC0\xAF") == U"\uFFFD\uFFFD");  // overlong
  CHECK(utf8::decode("\xED\xA0\x80") == U"\uFFFD\uFFFD\uFFFD");  // surrogate
}

TEST_CASE("case folding touches ASCII only") {
  CHECK(utf8::to_lower("MedicalRecord") == "medicalrecord");
  CHECK(utf8::to_lower("\xC3\x89T\xC3\x89") == "\xC3\x89t\xC3\x89");
  CHECK(utf8::iequals("Patient", "pATIENT"));
  CHECK_FALSE(utf8::iequals("Patient", "Patients"));
}

TEST_CASE("trim strips surrounding whitespace") {
  CHECK(utf8::trim("  a b \t\n") == "a b");
  CHECK(utf8::trim("   ").empty());
  CHECK(utf8::trim("") == "");
}
