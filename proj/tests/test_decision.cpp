#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "wtl/constructions.hpp"
#include "wtl/decision.hpp"
#include "wtl/engine.hpp"
#include "wtl/format.hpp"
#include "wtl/langlib.hpp"

namespace {

using wtl::Word;

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

}  // namespace

TEST_SUITE_BEGIN("decision");

TEST_CASE("grammar well-formedness checks") {
  wtl::CFG good{{"S"}, {"a"}, "S", {{"S", {"a", "S"}}, {"S", {"a"}}}};
  CHECK(wtl::cfg_validate(good).empty());

  wtl::CFG bad{{"S"}, {"a", "S"}, "T", {{"U", {"x"}}}};
  auto problems = wtl::cfg_validate(bad);
  CHECK(problems.size() == 4);  // overlap, start, lhs, undeclared x
}

TEST_CASE("emptiness of hand-written grammars") {
  wtl::CFG circular{{"S"}, {"a"}, "S", {{"S", {"a", "S"}}}};
  CHECK(wtl::cfg_empty(circular));
  wtl::CFG single{{"S"}, {"a"}, "S", {{"S", {"a"}}}};
  CHECK_FALSE(wtl::cfg_empty(single));
}

TEST_CASE("finiteness of hand-written grammars") {
  wtl::CFG pumping{{"S"}, {"a"}, "S", {{"S", {"a", "S"}}, {"S", {"a"}}}};
  std::vector<std::string> cycle;
  CHECK_FALSE(wtl::cfg_finite(pumping, &cycle));
  CHECK(std::find(cycle.begin(), cycle.end(), "S") != cycle.end());

  wtl::CFG two{{"S"}, {"a", "b"}, "S", {{"S", {"a"}}, {"S", {"b"}}}};
  CHECK(wtl::cfg_finite(two));

  // A unit cycle repeats derivations without growing words.
  wtl::CFG unit{{"S", "A"},
                {"a"},
                "S",
                {{"S", {"A"}}, {"A", {"S"}}, {"A", {"a"}}}};
  CHECK(wtl::cfg_finite(unit));

  // A cycle fed only by a vanishing symbol is no pump either.
  wtl::CFG vanishing{{"S", "A"},
                     {"a"},
                     "S",
                     {{"S", {"A", "S"}}, {"S", {"a"}}, {"A", {}}}};
  CHECK(wtl::cfg_finite(vanishing));

  wtl::CFG epsilon{{"S"}, {"a"}, "S", {{"S", {}}}};
  CHECK(wtl::cfg_finite(epsilon));
  CHECK(wtl::to_cnf(epsilon).derives_epsilon);
  CHECK(wtl::cfg_words_upto(epsilon, 2) == std::set<Word>{Word{}});
}

TEST_CASE("shortest derivable words") {
  wtl::CFG g{{"S", "A"},
             {"a", "b"},
             "S",
             {{"S", {"A", "A"}}, {"S", {"b", "b", "b"}}, {"A", {"b", "a"}},
              {"A", {"a"}}}};
  auto w = wtl::cfg_shortest_word(g);
  REQUIRE(w.has_value());
  CHECK(*w == chars("aa"));

  wtl::CFG dead{{"S"}, {"a"}, "S", {{"S", {"a", "S"}}}};
  CHECK_FALSE(wtl::cfg_shortest_word(dead).has_value());

  // Same length, smaller rendering wins.
  wtl::CFG tie{{"S"}, {"a", "b"}, "S", {{"S", {"b", "a"}}, {"S", {"a", "b"}}}};
  auto t = wtl::cfg_shortest_word(tie);
  REQUIRE(t.has_value());
  CHECK(*t == chars("ab"));
}

TEST_CASE("grammar from a machine with no accepting runs") {
  auto cfg = wtl::npda_to_cfg(
      wtl::letter_equivalent_npda(load_fixture("m_empty")));
  CHECK(wtl::cfg_validate(cfg).empty());
  CHECK(wtl::cfg_empty(cfg));
  CHECK(wtl::cfg_words_upto(cfg, 4).empty());
}

TEST_CASE("grammar from a pushdown accepting only the empty word") {
  wtl::OrdinaryNPDA npda;
  npda.sig.push = {"a"};
  npda.states = {"d"};
  npda.initial = "d";
  npda.stack_alphabet = {"Z"};
  npda.accept_at_end = {"d"};
  auto cfg = wtl::npda_to_cfg(npda);
  CHECK(wtl::cfg_validate(cfg).empty());
  CHECK_FALSE(wtl::cfg_empty(cfg));
  CHECK(wtl::cfg_words_upto(cfg, 3) == std::set<Word>{Word{}});
  CHECK(wtl::cfg_shortest_word(cfg) == Word{});
  CHECK(wtl::cfg_finite(cfg));
}

TEST_CASE("grammar of the mismatch machine") {
  auto aut = load_fixture("exa21");
  auto npda = wtl::letter_equivalent_npda(aut);
  auto cfg = wtl::npda_to_cfg(npda);
  CHECK(wtl::cfg_validate(cfg).empty());
  CHECK_FALSE(wtl::cfg_empty(cfg));
  CHECK(wtl::cfg_words_upto(cfg, 3).count(chars("bba")) == 1);

  std::set<Word> direct;
  for (const Word& w : wtl::all_words({"#", "a", "b"}, 6))
    if (wtl::npda_accepts(npda, w)) direct.insert(w);
  CHECK(wtl::cfg_words_upto(cfg, 6) == direct);

  std::vector<std::string> cycle;
  CHECK_FALSE(wtl::cfg_finite(cfg, &cycle));
  REQUIRE_FALSE(cycle.empty());
  for (const auto& name : cycle) CHECK(cfg.nonterminals.count(name) == 1);
}

TEST_CASE("grammar of the two-word machine") {
  auto npda = wtl::letter_equivalent_npda(load_fixture("m_fin"));
  auto cfg = wtl::npda_to_cfg(npda);
  CHECK(wtl::cfg_finite(cfg));
  std::set<Word> expect{chars("a"), chars("ab")};
  CHECK(wtl::cfg_words_upto(cfg, 5) == expect);
}

TEST_CASE("emptiness reports") {
  auto nonempty = wtl::emptiness(load_fixture("exa21"));
  CHECK(nonempty.question == wtl::Question::Emptiness);
  REQUIRE(nonempty.answer.has_value());
  CHECK_FALSE(*nonempty.answer);
  REQUIRE(nonempty.witness.has_value());
  CHECK(nonempty.witness->size() == 3);
  CHECK(wtl::Engine(load_fixture("exa21")).accepts(*nonempty.witness));
  CHECK(nonempty.exit_code() == 1);

  auto empty = wtl::emptiness(load_fixture("m_empty"));
  REQUIRE(empty.answer.has_value());
  CHECK(*empty.answer);
  CHECK_FALSE(empty.witness.has_value());
  CHECK(empty.exit_code() == 0);
  CHECK(wtl::Engine(load_fixture("m_empty")).enumerate(7).empty());

  auto u = wtl::union_compatible(load_fixture("m_empty"),
                                 load_fixture("m_empty"));
  CHECK(*wtl::emptiness(u).answer);

  CHECK_THROWS_AS(wtl::emptiness(load_fixture("exa22")),
                  std::invalid_argument);
}

TEST_CASE("finiteness reports") {
  auto infinite = wtl::finiteness(load_fixture("exa21"));
  REQUIRE(infinite.answer.has_value());
  CHECK_FALSE(*infinite.answer);

  CHECK(*wtl::finiteness(load_fixture("m_fin")).answer);
  CHECK(*wtl::finiteness(load_fixture("m_empty")).answer);
  CHECK_THROWS_AS(wtl::finiteness(load_fixture("exa22")),
                  std::invalid_argument);

  // Finite fixtures stop producing new words well before the structural
  // bound 2 * |states| * (stack alphabet + 1), and nothing new appears for
  // three more lengths.
  wtl::Engine fin(load_fixture("m_fin"));
  CHECK(fin.enumerate(12).size() == fin.enumerate(15).size());
  wtl::Engine none(load_fixture("m_empty"));
  CHECK(none.enumerate(2).size() == none.enumerate(5).size());
}

TEST_CASE("complement recognizer") {
  auto aut = load_fixture("m_abc_counts");
  CHECK(wtl::complement_accepts(aut, chars("ab")));
  CHECK_FALSE(wtl::complement_accepts(aut, chars("abc")));
  CHECK_FALSE(wtl::complement_accepts(aut, {}));
  CHECK_THROWS_AS(wtl::complement_accepts(load_fixture("exa21"), chars("bba")),
                  std::invalid_argument);

  const char* det_fixtures[] = {"m_abc_counts", "m_l1", "m_l2", "m_astar",
                                "m_fin"};
  for (const char* name : det_fixtures) {
    CAPTURE(name);
    auto det = load_fixture(name);
    wtl::Engine eng(det);
    std::vector<std::string> alphabet;
    for (const auto& l : det.sig.all_letters()) alphabet.push_back(l);
    for (const Word& w : wtl::all_words(alphabet, 5))
      CHECK(wtl::complement_accepts(det, w) != eng.accepts(w));
  }
}

TEST_CASE("bounded universality") {
  auto r = wtl::bounded_universality(load_fixture("m_astar"), 4);
  REQUIRE(r.answer.has_value());
  CHECK_FALSE(*r.answer);
  CHECK(r.witness == Word{"b", "a"});
  CHECK(r.bound == 4);
  CHECK(r.exit_code() == 1);

  auto unknown = wtl::bounded_universality(load_fixture("m_abc_counts"), 0);
  CHECK_FALSE(unknown.answer.has_value());
  CHECK(unknown.exit_code() == 3);

  CHECK_THROWS_AS(wtl::bounded_universality(load_fixture("m_astar"), -1),
                  std::invalid_argument);
}

TEST_CASE("bounded inclusion and equivalence") {
  auto inc = wtl::bounded_inclusion(load_fixture("m_fin"),
                                    load_fixture("m_astar"), 6);
  CHECK_FALSE(inc.answer.has_value());

  auto rev = wtl::bounded_inclusion(load_fixture("m_astar"),
                                    load_fixture("m_fin"), 6);
  REQUIRE(rev.answer.has_value());
  CHECK_FALSE(*rev.answer);
  CHECK(rev.witness == Word{});

  auto eq = wtl::bounded_equivalence(load_fixture("exa21"),
                                     load_fixture("exa21"), 6);
  CHECK_FALSE(eq.answer.has_value());
  CHECK(eq.bound == 6);
  CHECK(eq.exit_code() == 3);

  auto diff = wtl::bounded_equivalence(load_fixture("m_l1"),
                                       load_fixture("m_l2"), 5);
  REQUIRE(diff.answer.has_value());
  CHECK_FALSE(*diff.answer);
  REQUIRE(diff.witness.has_value());
  CHECK(diff.witness->size() == 5);
  CHECK(wtl::Engine(load_fixture("m_l1")).accepts(*diff.witness) !=
        wtl::Engine(load_fixture("m_l2")).accepts(*diff.witness));

  CHECK_THROWS_AS(wtl::bounded_equivalence(load_fixture("exa21"),
                                           load_fixture("exa22"), 3),
                  std::invalid_argument);
}

TEST_CASE("report serialization and exit codes") {
  wtl::DecisionReport r{wtl::Question::UniversalityBounded, false,
                        Word{"b", "a"}, 4};
  auto text = r.to_json();
  CHECK(text.find("\"question\": \"universality_bounded\"") !=
        std::string::npos);
  CHECK(text.find("\"answer\": false") != std::string::npos);
  CHECK(text.find("\"witness\": \"b a\"") != std::string::npos);
  CHECK(text.find("\"bound\": 4") != std::string::npos);

  wtl::DecisionReport unknown{wtl::Question::Emptiness, std::nullopt,
                              std::nullopt, std::nullopt};
  auto t2 = unknown.to_json();
  CHECK(t2.find("\"answer\": \"unknown\"") != std::string::npos);
  CHECK(t2.find("\"witness\": null") != std::string::npos);
  CHECK(unknown.exit_code() == 3);

  wtl::DecisionReport yes{wtl::Question::Emptiness, true, std::nullopt,
                          std::nullopt};
  CHECK(yes.exit_code() == 0);
}

TEST_SUITE_END();
