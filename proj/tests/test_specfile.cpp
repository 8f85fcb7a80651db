#include <doctest.h>

#include "cocyclelab/specfile.hpp"

using namespace cocyclelab;

namespace {

const char* kDiagSpec = R"(# constant diagonal over the full 2-shift
[sft]
size = 2
row = 1 1
row = 1 1

[cocycle]
kind = locally-constant
window = 0 0
alpha = 0.5
0 = 2.0 0.0 0.0 0.5
1 = 2.0 0.0 0.0 0.5
)";

const char* kBuiltinSpec = R"([sft]
size = 2
row = 1 1
row = 1 1

[cocycle]
kind = builtin

[builtin]
name = diag-rotation-s4
)";

}  // namespace

TEST_CASE("parse locally constant") {
  const CocycleSpec spec = parse_spec_text(kDiagSpec);
  CHECK(spec.is_locally_constant());
  CHECK(spec.base().size() == 2);
  CHECK(spec.alpha() == 0.5);
  CHECK(spec.table().entries.at({0}).m00 == 2.0);
}

TEST_CASE("parse builtin") {
  const CocycleSpec spec = parse_spec_text(kBuiltinSpec);
  CHECK(spec.is_builtin());
  CHECK(spec.builtin_ref().name == kBuiltinDiagRotationName);
  CHECK(spec.alpha() == 0.125);
}

TEST_CASE("round trip") {
  for (const char* text : {kDiagSpec, kBuiltinSpec}) {
    const CocycleSpec spec = parse_spec_text(text);
    const std::string emitted = emit_spec_text(spec);
    const CocycleSpec again = parse_spec_text(emitted);
    CHECK(emit_spec_text(again) == emitted);
    CHECK(again.base().entries() == spec.base().entries());
    CHECK(again.alpha() == spec.alpha());
    if (spec.is_locally_constant()) {
      CHECK(again.table().entries.size() == spec.table().entries.size());
      for (const auto& [w, m] : spec.table().entries) {
        const Mat2& n = again.table().entries.at(w);
        CHECK(m.m00 == n.m00);
        CHECK(m.m01 == n.m01);
        CHECK(m.m10 == n.m10);
        CHECK(m.m11 == n.m11);
      }
    }
  }
}

TEST_CASE("parse errors carry line numbers") {
  SUBCASE("non-SL2 matrix") {
    const std::string bad = std::string(kDiagSpec).replace(
        std::string(kDiagSpec).find("2.0 0.0 0.0 0.5"), 15, "1.1 0.0 0.0 1.0");
    try {
      parse_spec_text(bad);
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      CHECK(std::string(e.what()).find("line") != std::string::npos);
      CHECK(std::string(e.what()).find("determinant") != std::string::npos);
    }
  }
  SUBCASE("unknown key rejected") {
    CHECK_THROWS_AS(parse_spec_text("[sft]\nsize = 2\nrowz = 1 1\nrow = 1 1\nrow = 1 1\n"),
                    Error);
  }
  SUBCASE("unknown section rejected") {
    CHECK_THROWS_AS(parse_spec_text("[nope]\n"), Error);
  }
  SUBCASE("missing table word rejected") {
    const char* missing = R"([sft]
size = 2
row = 1 1
row = 1 1

[cocycle]
kind = locally-constant
window = 0 0
alpha = 0.5
0 = 2.0 0.0 0.0 0.5
)";
    CHECK_THROWS_AS(parse_spec_text(missing), Error);
  }
  SUBCASE("word length must match the window") {
    const char* wrong = R"([sft]
size = 2
row = 1 1
row = 1 1

[cocycle]
kind = locally-constant
window = 0 1
alpha = 0.5
0 = 1.0 0.0 0.0 1.0
)";
    CHECK_THROWS_AS(parse_spec_text(wrong), Error);
  }
}

TEST_CASE("digest is stable") {
  CHECK(spec_digest("abc") == spec_digest("abc"));
  CHECK(spec_digest("abc") != spec_digest("abd"));
  CHECK(spec_digest("abc").size() == 16);
}
