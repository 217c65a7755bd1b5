#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "wtl/engine.hpp"
#include "wtl/format.hpp"
#include "wtl/langlib.hpp"

namespace {

using wtl::Word;

Word toks(std::initializer_list<const char*> ts) {
  Word w;
  for (const char* t : ts) w.emplace_back(t);
  return w;
}

Word chars(const std::string& s) {
  Word w;
  for (char c : s) w.emplace_back(1, c);
  return w;
}

wtl::Automaton load_fixture(const std::string& name) {
  auto result = wtl::load_automaton(wtl::fixture_text(name));
  REQUIRE(result.automaton.has_value());
  return *result.automaton;
}

wtl::Automaton load_text(const std::string& text) {
  auto result = wtl::load_automaton(text);
  REQUIRE_MESSAGE(result.automaton.has_value(),
                  (result.violations.empty() ? "no automaton"
                                             : result.violations[0].message));
  return *result.automaton;
}

std::string conf_key(const wtl::Configuration& c) {
  std::string key = c.state;
  key += '\x1f';
  key += std::to_string(c.head);
  for (const auto& t : c.tape) {
    key += '\x1f';
    key += t;
  }
  key += '\x1e';
  for (const auto& g : c.stack) {
    key += '\x1f';
    key += g;
  }
  return key;
}

// Reference acceptance driven purely through the public single-step
// relation, used to cross-check the compiled engine.
bool naive_accepts(const wtl::Automaton& aut, const Word& w) {
  std::deque<wtl::Configuration> queue;
  std::set<std::string> visited;
  queue.push_back(wtl::initial_configuration(aut, w));
  visited.insert(conf_key(queue.front()));
  std::size_t expansions = 0;
  while (!queue.empty()) {
    wtl::Configuration c = queue.front();
    queue.pop_front();
    REQUIRE(++expansions < 100000);
    wtl::StepResult r = wtl::step(aut, c);
    if (r.accept) return true;
    for (auto& next : r.successors) {
      if (visited.insert(conf_key(next)).second) queue.push_back(next);
    }
  }
  return false;
}

std::vector<std::string> sorted_alphabet(const std::string& oracle) {
  auto set = wtl::oracle_alphabet(oracle);
  return {set.begin(), set.end()};
}

// Inline machines for behaviours the catalog has no small example of.

const char* kMidwordAccept = R"(mode: returning
letters.push: a
letters.state: x
stack: A
states: h0
initial: h0
translucent: h0 ->
trans: h0 a _ -> accept
)";

const char* kEndLoop = R"(mode: returning
letters.state: x
stack:
states: g0 g1
initial: g0
translucent: g0 -> x
translucent: g1 -> x
trans: g0 end _ -> g1 none
trans: g1 end _ -> g0 none
)";

const char* kWrapReveal = R"(mode: non-returning
letters.state: a b
stack:
states: q0 q1 q2 q3
initial: q0
translucent: q0 -> a
translucent: q1 ->
translucent: q2 ->
translucent: q3 ->
trans: q0 b _ -> q1 none
trans: q1 end _ -> q2 none
trans: q2 a _ -> q3 none
trans: q3 end _ -> accept
)";

}  // namespace

TEST_SUITE_BEGIN("engine");

TEST_CASE("visibility scan skips translucent letters") {
  auto aut = load_fixture("exa21");
  wtl::Configuration c = wtl::initial_configuration(aut, chars("aab"));
  CHECK(wtl::scan_visible(aut, c) == 2);

  c.state = "va";  // sees everything
  CHECK(wtl::scan_visible(aut, c) == 0);

  c = wtl::initial_configuration(aut, chars("aaa"));
  CHECK_FALSE(wtl::scan_visible(aut, c).has_value());
}

TEST_CASE("single step applies the letter class action") {
  auto l1 = load_fixture("m_l1");
  wtl::Configuration c = wtl::initial_configuration(l1, chars("ab"));
  wtl::StepResult r = wtl::step(l1, c);
  REQUIRE(r.successors.size() == 1);
  CHECK(r.successors[0].state == "s0");
  CHECK(r.successors[0].tape == chars("b"));
  CHECK(r.successors[0].stack == std::vector<std::string>{"A"});

  auto l2 = load_fixture("m_l2");
  c = wtl::initial_configuration(l2, chars("b"));
  r = wtl::step(l2, c);
  REQUIRE(r.successors.size() == 1);
  CHECK(r.successors[0].state == "t1");
  CHECK(r.successors[0].stack.empty());  // pop on the empty stack holds
}

TEST_CASE("accepting move is final with letters still unread") {
  auto aut = load_text(kMidwordAccept);
  wtl::Engine eng(aut);
  CHECK(eng.accepts(toks({"a", "x"})));
  auto trace = eng.accepting_trace(toks({"a", "x"}));
  REQUIRE(trace.has_value());
  REQUIRE(trace->size() == 1);
  CHECK(trace->back().to_accept);
  CHECK(trace->back().consumed == "a");
  CHECK(trace->back().tape_after == toks({"x"}));
  CHECK(trace->back().stack_after.empty());  // accept skips the stack action

  CHECK_FALSE(eng.accepts(toks({"x", "x"})));
  CHECK_FALSE(eng.accepting_trace(toks({"x"})).has_value());
}

TEST_CASE("block mismatch machine verdicts") {
  wtl::Engine eng(load_fixture("exa21"));
  CHECK(eng.accepts(chars("bba")));
  CHECK(eng.accepts(chars("baa")));
  CHECK(eng.accepts(chars("b#bba")));
  CHECK(eng.accepts(chars("bab#b")));

  CHECK_FALSE(eng.accepts(chars("")));
  CHECK_FALSE(eng.accepts(chars("b")));
  CHECK_FALSE(eng.accepts(chars("a")));
  CHECK_FALSE(eng.accepts(chars("ab")));
  CHECK_FALSE(eng.accepts(chars("ba")));
  CHECK_FALSE(eng.accepts(chars("b#ba")));
  CHECK_FALSE(eng.accepts(chars("#")));
}

TEST_CASE("marked pair machine verdicts") {
  wtl::Engine eng(load_fixture("exa22"));
  CHECK(eng.accepts(toks({"a", "a1", "a2"})));
  CHECK(eng.accepts(toks({"a", "b", "b1", "a1", "b2", "a2"})));
  CHECK(eng.accepts(toks({"a", "a1", "a1", "a2"})));

  CHECK_FALSE(eng.accepts(toks({})));
  CHECK_FALSE(eng.accepts(toks({"a", "a2", "a1"})));  // marks out of order
  CHECK_FALSE(eng.accepts(toks({"a", "a2"})));
  CHECK_FALSE(eng.accepts(toks({"a", "a1"})));
  CHECK_FALSE(eng.accepts(toks({"a1", "a2"})));
  CHECK_FALSE(eng.accepts(toks({"a", "b2", "a1", "a2"})));
}

TEST_CASE("counting machine verdicts") {
  wtl::Engine eng(load_fixture("m_abc_counts"));
  CHECK(eng.accepts(chars("")));
  CHECK(eng.accepts(chars("abc")));
  CHECK(eng.accepts(chars("cab")));
  CHECK(eng.accepts(chars("aabbcc")));
  CHECK(eng.accepts(chars("abccba")));

  CHECK_FALSE(eng.accepts(chars("a")));
  CHECK_FALSE(eng.accepts(chars("ab")));
  CHECK_FALSE(eng.accepts(chars("aabc")));
  CHECK_FALSE(eng.accepts(chars("abcc")));
}

TEST_CASE("class ordered machine verdicts") {
  wtl::Engine eng(load_fixture("m_astar"));
  CHECK(eng.accepts(chars("")));
  CHECK(eng.accepts(chars("b")));
  CHECK(eng.accepts(chars("abc")));
  CHECK(eng.accepts(chars("aacc")));
  CHECK(eng.accepts(chars("abbb")));

  CHECK_FALSE(eng.accepts(chars("ba")));
  CHECK_FALSE(eng.accepts(chars("cb")));
  CHECK_FALSE(eng.accepts(chars("aba")));
  CHECK_FALSE(eng.accepts(chars("ca")));
}

TEST_CASE("two block machines and their union") {
  wtl::Engine l1(load_fixture("m_l1"));
  CHECK(l1.accepts(chars("ab#b")));
  CHECK(l1.accepts(chars("ba#b")));
  CHECK(l1.accepts(chars("aabb#b")));
  CHECK_FALSE(l1.accepts(chars("a#b")));
  CHECK_FALSE(l1.accepts(chars("ab")));
  CHECK_FALSE(l1.accepts(chars("ab#")));
  CHECK_FALSE(l1.accepts(chars("aab#b")));

  wtl::Engine l2(load_fixture("m_l2"));
  CHECK(l2.accepts(chars("b#ab")));
  CHECK_FALSE(l2.accepts(chars("ab#bb")));  // second block must match
  CHECK(l2.accepts(chars("b#aabb")));
  CHECK_FALSE(l2.accepts(chars("b#a")));
  CHECK_FALSE(l2.accepts(chars("#ab")));

  wtl::Engine u(load_fixture("m_union_l1l2"));
  CHECK(u.accepts(chars("ab#b")));
  CHECK(u.accepts(chars("b#ab")));
  CHECK(u.accepts(chars("ba#b")));
  CHECK_FALSE(u.accepts(chars("a#b")));
  CHECK_FALSE(u.accepts(chars("b#b")));
}

TEST_CASE("finite and empty machines enumerate exactly") {
  wtl::Engine fin(load_fixture("m_fin"));
  auto words = fin.enumerate(3);
  REQUIRE(words.size() == 2);
  CHECK(words[0] == chars("a"));
  CHECK(words[1] == chars("ab"));

  wtl::Engine empty(load_fixture("m_empty"));
  CHECK(empty.enumerate(4).empty());
}

TEST_CASE("enumeration lists accepted words shortest first") {
  wtl::Engine eng(load_fixture("m_astar"));
  auto words = eng.enumerate(3);
  CHECK(words.size() == 20);  // compositions of a* b* c* up to length 3
  CHECK(words.front() == chars(""));
  CHECK(std::find(words.begin(), words.end(), chars("abc")) != words.end());
  CHECK(std::find(words.begin(), words.end(), chars("ba")) == words.end());
  CHECK(std::is_sorted(words.begin(), words.end(),
                       [](const Word& x, const Word& y) {
                         return x.size() < y.size();
                       }));
}

TEST_CASE("machines agree with their oracles on every small word") {
  const struct {
    const char* fixture;
    const char* oracle;
    int bound;
  } pairs[] = {
      {"exa21", "l_mismatch", 6},      {"m_l1", "l1_sec3", 6},
      {"m_l2", "l2_sec3", 6},          {"m_union_l1l2", "l_union_sec3", 6},
      {"m_abc_counts", "l_counts_abc", 7}, {"m_astar", "reg_astar", 7},
      {"exa22", "l_union_exa22", 5},
  };
  for (const auto& pair : pairs) {
    CAPTURE(pair.fixture);
    wtl::Engine eng(load_fixture(pair.fixture));
    for (const Word& w : wtl::all_words(sorted_alphabet(pair.oracle),
                                        pair.bound)) {
      bool machine = eng.accepts(w);
      bool oracle = wtl::oracle_accepts(pair.oracle, w);
      if (machine != oracle) {
        std::string joined;
        for (const auto& t : w) {
          joined += t;
          joined += ' ';
        }
        CAPTURE(joined);
        REQUIRE(machine == oracle);
      }
    }
  }
}

TEST_CASE("empty machine rejects every small word") {
  wtl::Engine eng(load_fixture("m_empty"));
  for (const Word& w : wtl::all_words({"#", "a", "b"}, 5)) {
    CHECK_FALSE(eng.accepts(w));
  }
}

TEST_CASE("compiled search matches the public step relation") {
  const struct {
    const char* fixture;
    const char* oracle;
    int bound;
  } pairs[] = {
      {"m_l1", "l1_sec3", 4},
      {"exa22", "l_union_exa22", 3},
  };
  for (const auto& pair : pairs) {
    CAPTURE(pair.fixture);
    auto aut = load_fixture(pair.fixture);
    wtl::Engine eng(aut);
    for (const Word& w : wtl::all_words(sorted_alphabet(pair.oracle),
                                        pair.bound)) {
      CHECK(eng.accepts(w) == naive_accepts(aut, w));
    }
  }
}

TEST_CASE("accepting traces replay consistently") {
  const char* fixtures[] = {"m_union_l1l2", "exa22", "exa21"};
  for (const char* name : fixtures) {
    CAPTURE(name);
    auto aut = load_fixture(name);
    wtl::Engine eng(aut);
    bool returning = aut.mode == wtl::Mode::Returning;
    std::string oracle = std::string(name) == "m_union_l1l2"
                             ? "l_union_sec3"
                             : (std::string(name) == "exa22" ? "l_union_exa22"
                                                             : "l_mismatch");
    int bound = std::string(name) == "exa22" ? 4 : 5;
    for (const Word& w : wtl::all_words(sorted_alphabet(oracle), bound)) {
      if (!eng.accepts(w)) continue;
      auto trace = eng.accepting_trace(w);
      REQUIRE(trace.has_value());
      REQUIRE_FALSE(trace->empty());

      Word tape = w;
      std::string state = aut.initial;
      std::vector<std::string> stack;
      for (std::size_t i = 0; i < trace->size(); ++i) {
        const wtl::Step& s = (*trace)[i];
        CHECK(s.from_state == state);
        CHECK((s.to_accept) == (i + 1 == trace->size()));
        CHECK(s.stack_top_seen ==
              (stack.empty() ? std::string(wtl::kBottomToken)
                             : stack.front()));
        if (s.action == "wrap") {
          CHECK(s.consumed == wtl::kEndToken);
          CHECK(s.tape_after == tape);
          CHECK(s.head_after == 0);
          CHECK(s.stack_after == stack);
        } else {
          // One instance of the consumed letter leaves the tape.
          REQUIRE(std::find(tape.begin(), tape.end(), s.consumed) !=
                  tape.end());
          std::multiset<std::string> before(tape.begin(), tape.end());
          std::multiset<std::string> after(s.tape_after.begin(),
                                           s.tape_after.end());
          before.erase(before.find(s.consumed));
          CHECK(before == after);
          if (returning) CHECK(s.head_after == 0);

          if (!s.to_accept) {
            if (s.action == "push") {
              REQUIRE_FALSE(s.stack_after.empty());
              CHECK(s.stack_after.front() == s.push_symbol);
              CHECK(std::vector<std::string>(s.stack_after.begin() + 1,
                                             s.stack_after.end()) == stack);
            } else if (s.action == "pop") {
              if (stack.empty()) {
                CHECK(s.stack_after.empty());
              } else {
                CHECK(s.stack_after ==
                      std::vector<std::string>(stack.begin() + 1,
                                               stack.end()));
              }
            } else {
              CHECK(s.action == "none");
              CHECK(s.stack_after == stack);
            }
          } else {
            CHECK(s.stack_after == stack);  // accept leaves the stack alone
          }
        }
        tape = s.tape_after;
        stack = s.stack_after;
        state = s.to_state;
      }
    }
  }
}

TEST_CASE("deterministic runs terminate with a verdict") {
  wtl::Engine counts(load_fixture("m_abc_counts"));
  auto v = counts.run_deterministic(chars("abc"));
  CHECK(v.kind == wtl::VerdictKind::Accept);
  CHECK(v.trace.size() == 4);  // three letters, then the endmarker accepts
  CHECK(counts.run_deterministic(chars("ab")).kind ==
        wtl::VerdictKind::RejectUndefined);

  wtl::Engine loop(load_text(kEndLoop));
  auto lv = loop.run_deterministic(toks({"x"}));
  CHECK(lv.kind == wtl::VerdictKind::RejectLoop);
  CHECK_FALSE(lv.trace.empty());
  CHECK(loop.run_deterministic(toks({})).kind == wtl::VerdictKind::RejectLoop);

  wtl::Engine nondet(load_fixture("exa21"));
  CHECK_THROWS_AS(nondet.run_deterministic(chars("bba")),
                  std::invalid_argument);
}

TEST_CASE("deterministic verdicts agree with search") {
  const struct {
    const char* fixture;
    std::vector<std::string> alphabet;
  } machines[] = {
      {"m_l1", {"#", "a", "b"}},
      {"m_l2", {"#", "a", "b"}},
      {"m_abc_counts", {"a", "b", "c"}},
      {"m_astar", {"a", "b", "c"}},
      {"m_fin", {"a", "b"}},
  };
  for (const auto& m : machines) {
    CAPTURE(m.fixture);
    wtl::Engine eng(load_fixture(m.fixture));
    for (const Word& w : wtl::all_words(m.alphabet, 5)) {
      bool accepted = eng.accepts(w);
      auto verdict = eng.run_deterministic(w);
      CHECK((verdict.kind == wtl::VerdictKind::Accept) == accepted);
    }
  }
}

TEST_CASE("head restarts only where the mode says") {
  auto aut = load_text(kWrapReveal);
  wtl::Engine eng(aut);
  REQUIRE(eng.accepts(toks({"a", "b"})));
  auto trace = *eng.accepting_trace(toks({"a", "b"}));
  REQUIRE(trace.size() == 4);
  CHECK(trace[0].consumed == "b");
  CHECK(trace[0].head_after == 1);  // the skipped letter stays behind the head
  CHECK(trace[1].action == "wrap");
  CHECK(trace[1].head_after == 0);
  CHECK(trace[2].consumed == "a");

  // The returning twin scans from the left again and gets stuck on the
  // letter the non-returning machine had put behind it.
  std::string text(kWrapReveal);
  auto pos = text.find("non-returning");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, std::string("non-returning").size(), "returning");
  wtl::Engine twin(load_text(text));
  CHECK_FALSE(twin.accepts(toks({"a", "b"})));
}

TEST_CASE("letters outside the machine alphabet block the run") {
  wtl::Engine eng(load_fixture("m_astar"));
  CHECK_FALSE(eng.accepts(toks({"a", "z"})));
  CHECK_FALSE(eng.accepts(toks({"z"})));
  CHECK(eng.accepts(chars("a")));
}

TEST_CASE("configuration budget is enforced") {
  wtl::Engine eng(load_fixture("exa22"), wtl::EngineLimits{8});
  CHECK_THROWS_AS(eng.accepts(toks({"a", "a", "a", "a"})),
                  wtl::ResourceLimitError);
}

TEST_CASE("trace lines render in the fixed shape") {
  wtl::Engine eng(load_fixture("m_l1"));
  auto v = eng.run_deterministic(chars("ab#b"));
  REQUIRE(v.kind == wtl::VerdictKind::Accept);
  REQUIRE(v.trace.size() == 6);
  CHECK(wtl::render_step(0, v.trace[0]) ==
        "0: s0 --a/_--> push A s0 | tape=\"^b # b\" stack=\"A _\"");
  CHECK(wtl::render_step(1, v.trace[1]) ==
        "1: s0 --end/A--> wrap s1 | tape=\"^b # b\" stack=\"A _\"");
  CHECK(wtl::render_step(2, v.trace[2]) ==
        "2: s1 --b/A--> pop s1 | tape=\"^# b\" stack=\"_\"");
  CHECK(wtl::render_step(3, v.trace[3]) ==
        "3: s1 --#/_--> none s2 | tape=\"^b\" stack=\"_\"");
  CHECK(wtl::render_step(4, v.trace[4]) ==
        "4: s2 --b/_--> pop s3 | tape=\"^\" stack=\"_\"");
  CHECK(wtl::render_step(5, v.trace[5]) ==
        "5: s3 --end/_--> wrap ACCEPT | tape=\"^\" stack=\"_\"");
  CHECK(wtl::render_verdict(v.kind) == "ACCEPT");
  CHECK(wtl::render_verdict(wtl::VerdictKind::RejectUndefined) ==
        "REJECT(undefined)");
  CHECK(wtl::render_verdict(wtl::VerdictKind::RejectLoop) == "REJECT(loop)");
}

TEST_SUITE_END();
