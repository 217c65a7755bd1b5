#include <map>
#include <string>

#include "doctest.h"
#include "wtl/format.hpp"
#include "wtl/model.hpp"

using namespace wtl;

namespace {

// Nondeterministic non-returning machine matching pairs of letters against
// their primed copies; also exercises empty letter classes and translucency.
const char* kPairMatcher = R"(mode: non-returning
letters.push: a b
letters.pop: a1 a2 b1 b2
letters.state:
stack: A B
states: q0 q1 q2 q3 q4 q5
initial: q0
translucent: q0 ->
translucent: q1 -> a1 b1
translucent: q2 ->
translucent: q3 ->
translucent: q4 ->
translucent: q5 ->
trans: q0 a _ -> q0 push A
trans: q0 a _ -> q1 push A
trans: q0 a _ -> q3 push A
trans: q0 a A -> q0 push A
trans: q0 a A -> q1 push A
trans: q0 a A -> q3 push A
trans: q0 a B -> q0 push A
trans: q0 a B -> q1 push A
trans: q0 a B -> q3 push A
trans: q0 b _ -> q0 push B
trans: q0 b _ -> q1 push B
trans: q0 b _ -> q3 push B
trans: q0 b A -> q0 push B
trans: q0 b A -> q1 push B
trans: q0 b A -> q3 push B
trans: q0 b B -> q0 push B
trans: q0 b B -> q1 push B
trans: q0 b B -> q3 push B
trans: q1 a2 A -> q2 pop
trans: q1 b2 B -> q2 pop
trans: q2 a2 A -> q2 pop
trans: q2 b2 B -> q2 pop
trans: q2 end _ -> accept
trans: q3 a1 A -> q4 pop
trans: q3 b1 B -> q4 pop
trans: q4 a1 A -> q4 pop
trans: q4 b1 B -> q4 pop
trans: q4 a2 _ -> q5 pop
trans: q4 b2 _ -> q5 pop
trans: q5 a2 _ -> q5 pop
trans: q5 b2 _ -> q5 pop
trans: q5 end _ -> accept
)";

bool has_violation(const ValidationResult& r, const std::string& needle) {
  for (const auto& v : r.violations)
    if (v.message.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_SUITE_BEGIN("model");

TEST_CASE("pair matcher text loads cleanly") {
  auto r = load_automaton(kPairMatcher);
  REQUIRE(r.violations.empty());
  REQUIRE(r.automaton.has_value());
  const Automaton& m = *r.automaton;
  CHECK(m.mode == Mode::NonReturning);
  CHECK(m.states.size() == 6);
  CHECK(m.initial == "q0");
  CHECK(m.sig.push == std::set<std::string>{"a", "b"});
  CHECK(m.sig.pop == std::set<std::string>{"a1", "a2", "b1", "b2"});
  CHECK(m.sig.state.empty());
  CHECK(m.tau.at("q1") == std::set<std::string>{"a1", "b1"});
  CHECK(m.tau.at("q0").empty());
  CHECK_FALSE(is_deterministic(m));
  CHECK(r.warnings.empty());
}

TEST_CASE("serialization round trip is exact") {
  auto r = load_automaton(kPairMatcher);
  REQUIRE(r.automaton.has_value());
  std::string text = serialize(*r.automaton);
  auto r2 = load_automaton(text);
  REQUIRE(r2.automaton.has_value());
  CHECK(*r.automaton == *r2.automaton);
  CHECK(serialize(*r2.automaton) == text);
}

TEST_CASE("comments strip at first occurrence") {
  std::string text = kPairMatcher;
  text += "// trailing comment line\n";
  text += "trans: q2 b2 B -> q2 pop // duplicate of an existing rule\n";
  auto r = load_automaton(text);
  REQUIRE(r.automaton.has_value());
  auto base = load_automaton(kPairMatcher);
  CHECK(*r.automaton == *base.automaton);
}

TEST_CASE("letter classes must be disjoint") {
  auto r = load_automaton(
      "mode: returning\n"
      "letters.push: a\n"
      "letters.pop: a\n"
      "states: p\n"
      "initial: p\n"
      "translucent: p ->\n");
  CHECK(!r.automaton.has_value());
  CHECK(has_violation(r, "signature sets not disjoint"));
}

TEST_CASE("stack action must match the letter class") {
  auto r = load_automaton(
      "mode: returning\n"
      "letters.push: a\n"
      "states: p\n"
      "initial: p\n"
      "translucent: p ->\n"
      "trans: p a _ -> p pop\n");
  CHECK(has_violation(r, "wrong table for letter class"));
}

TEST_CASE("endmarker rules live in the state table") {
  auto r = load_automaton(
      "mode: returning\n"
      "letters.push: a\n"
      "stack: A\n"
      "states: p\n"
      "initial: p\n"
      "translucent: p ->\n"
      "trans: p end _ -> p push A\n");
  CHECK(has_violation(r, "wrong table for letter class"));
}

TEST_CASE("duplicate directives are rejected") {
  auto r1 = load_automaton("mode: returning\nmode: returning\n");
  CHECK(has_violation(r1, "duplicate mode"));
  auto r2 = load_automaton(
      "mode: returning\nstates: p q\ninitial: p\ninitial: q\n");
  CHECK(has_violation(r2, "duplicate initial"));
}

TEST_CASE("reserved tokens cannot be named") {
  auto r = load_automaton(
      "mode: returning\n"
      "letters.push: end\n"
      "states: push\n"
      "initial: push\n");
  CHECK(has_violation(r, "reserved token 'end'"));
  CHECK(has_violation(r, "reserved token 'push'"));
}

TEST_CASE("undeclared names are flagged") {
  auto r = load_automaton(
      "mode: returning\n"
      "letters.push: a\n"
      "stack: A\n"
      "states: p\n"
      "initial: q\n"
      "translucent: p -> z\n"
      "trans: p c _ -> p none\n"
      "trans: p a B -> p push A\n"
      "trans: p a _ -> q push A\n");
  CHECK(has_violation(r, "initial state 'q'"));
  CHECK(has_violation(r, "translucent letter 'z'"));
  CHECK(has_violation(r, "undeclared letter 'c'"));
  CHECK(has_violation(r, "undeclared stack symbol 'B'"));
  CHECK(has_violation(r, "transition to undeclared state 'q'"));
}

TEST_CASE("accept cannot mix with successor targets") {
  auto r = load_automaton(
      "mode: returning\n"
      "letters.push: a\n"
      "stack: A\n"
      "states: p\n"
      "initial: p\n"
      "translucent: p ->\n"
      "trans: p a _ -> accept\n"
      "trans: p a _ -> p push A\n");
  CHECK(has_violation(r, "mixes accept"));
}

TEST_CASE("missing translucency line warns and defaults to visible") {
  auto r = load_automaton(
      "mode: returning\n"
      "letters.push: a\n"
      "stack: A\n"
      "states: p\n"
      "initial: p\n");
  REQUIRE(r.automaton.has_value());
  CHECK(r.warnings.size() == 1);
  CHECK(r.automaton->tau.at("p").empty());
}

TEST_CASE("state renaming preserves structure") {
  auto r = load_automaton(kPairMatcher);
  REQUIRE(r.automaton.has_value());
  std::map<std::string, std::string> fwd, bwd;
  int i = 0;
  for (const auto& q : r.automaton->states) {
    std::string n = "n" + std::to_string((i * 7 + 3) % 11);
    fwd[q] = n;
    bwd[n] = q;
    ++i;
  }
  Automaton renamed = rename_states(*r.automaton, fwd);
  CHECK(renamed.states.size() == r.automaton->states.size());
  CHECK(is_deterministic(renamed) == is_deterministic(*r.automaton));
  CHECK(rename_states(renamed, bwd) == *r.automaton);
  auto reloaded = load_automaton(serialize(renamed));
  REQUIRE(reloaded.automaton.has_value());
  CHECK(*reloaded.automaton == renamed);
}

TEST_CASE("signature compatibility ignores stack alphabets") {
  auto a = load_automaton(
      "mode: returning\nletters.push: a\nletters.pop: b\nstack: A\n"
      "states: p\ninitial: p\ntranslucent: p ->\n");
  auto b = load_automaton(
      "mode: returning\nletters.push: a\nletters.pop: b\nstack: Z Y\n"
      "states: r\ninitial: r\ntranslucent: r ->\n");
  auto c = load_automaton(
      "mode: returning\nletters.push: a b\nstack: A\n"
      "states: p\ninitial: p\ntranslucent: p ->\n");
  REQUIRE(a.automaton.has_value());
  REQUIRE(b.automaton.has_value());
  REQUIRE(c.automaton.has_value());
  CHECK(signatures_compatible(*a.automaton, *b.automaton));
  CHECK_FALSE(signatures_compatible(*a.automaton, *c.automaton));
}

TEST_SUITE_END();
