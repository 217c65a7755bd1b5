#ifndef WTL_DECISION_HPP
#define WTL_DECISION_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wtl/constructions.hpp"
#include "wtl/model.hpp"

namespace wtl {

// A context-free grammar over explicit symbol sets.  A right-hand-side entry
// is a terminal iff it appears in `terminals`; nonterminal and terminal names
// never overlap in a well-formed grammar.
struct Production {
  std::string lhs;
  std::vector<std::string> rhs;

  bool operator==(const Production&) const = default;
};

struct CFG {
  std::set<std::string> nonterminals;
  std::set<std::string> terminals;
  std::string start;
  std::vector<Production> productions;
};

// Returns one message per well-formedness problem: an undeclared start symbol,
// a production whose left side is not a declared nonterminal, a right-hand
// side referencing an undeclared symbol, or a name in both symbol sets.
// An empty result means the grammar is well formed.
std::vector<std::string> cfg_validate(const CFG& cfg);

// Builds a grammar with L(grammar) = L(npda).  Acceptance-at-end in a drain
// state is first normalized to acceptance by empty stack: every drain state
// gets silent stack-clearing pops, including one for the bottom marker, so a
// run empties its stack exactly when it has reached a drain with the whole
// input consumed.  Nonterminals are triples "[p Z q]" generating the words
// that move the machine from p with Z on top to q with Z popped; only triples
// that both generate a word and are reachable from the start are kept.
// Throws ResourceLimitError when the production count would exceed an
// internal cap.
CFG npda_to_cfg(const OrdinaryNPDA& npda);

// True iff the start symbol derives no terminal word (computed with the usual
// generating-symbol fixpoint).
bool cfg_empty(const CFG& cfg);

// Chomsky-normal-form view of a grammar, restricted to useful symbols.
// `derives_epsilon` records whether the original start derives the empty
// word; the grammar itself carries no epsilon productions.  `origin` maps
// every surviving nonterminal back to the original symbol it stands for, so
// structural reports can use the caller's names.
struct CnfGrammar {
  CFG grammar;
  bool derives_epsilon = false;
  std::map<std::string, std::string> origin;
};

CnfGrammar to_cnf(const CFG& cfg);

// True iff the language is finite.  The grammar is brought to Chomsky normal
// form restricted to useful symbols; the language is infinite exactly when
// the occurs-in-a-right-hand-side graph over those nonterminals has a cycle.
// When a cycle exists and `cycle_out` is given, it receives the cycle's
// nonterminals translated back to original names.
bool cfg_finite(const CFG& cfg, std::vector<std::string>* cycle_out = nullptr);

// Shortest terminal word derivable from the start symbol, with ties broken by
// the lexicographic order of the space-joined rendering.  Empty when the
// start symbol is non-generating.
std::optional<Word> cfg_shortest_word(const CFG& cfg);

// Every derivable terminal word of length at most max_len, computed with a
// length-bounded fixpoint.  Throws ResourceLimitError when the intermediate
// word sets grow past an internal cap.
std::set<Word> cfg_words_upto(const CFG& cfg, int max_len);

enum class Question {
  Emptiness,
  Finiteness,
  UniversalityBounded,
  InclusionBounded,
  EquivalenceBounded,
};

// Outcome of one decision question.  `answer` empty means Unknown: the
// bounded search ran out of words to try without settling the question.
// Whenever a witness is present, replaying it through the engine confirms
// the reported answer.
struct DecisionReport {
  Question question;
  std::optional<bool> answer;
  std::optional<Word> witness;
  std::optional<int> bound;

  std::string to_json() const;

  // 0 for a true answer, 1 for false, 3 for Unknown.
  int exit_code() const;
};

// Whether the machine accepts no word at all.  Returning mode only; the
// question is reduced through the letter-count-preserving pushdown simulation
// and its grammar, which has the same emptiness status.  When the language is
// nonempty the report carries the shortest grammar word as a witness.  The
// simulation reads letters in consumption order, so each of its words
// replays verbatim on the source machine; the witness is replay-checked
// before it is reported.
DecisionReport emptiness(const Automaton& aut);

// Whether the machine accepts only finitely many words.  Returning mode
// only; finiteness transfers through the simulation because only finitely
// many words share any letter-count vector.
DecisionReport finiteness(const Automaton& aut);

// True iff the deterministic machine rejects the word.  Total: deterministic
// runs always halt, with cycling runs detected and reported as rejection.
// Throws std::invalid_argument for a nondeterministic machine.
bool complement_accepts(const Automaton& aut, const Word& word);

// Searches every word over the machine's own letters up to the length bound
// for one the machine rejects.  Finding one answers false with that witness;
// exhausting the bound yields Unknown.  Deterministic machines are driven
// through the complement recognizer so the search cannot hang on a cycling
// run.
DecisionReport bounded_universality(const Automaton& aut, int bound);

// Searches words over the union of both machines' letters, up to the bound,
// for one accepted by `a` but not by `b`.
DecisionReport bounded_inclusion(const Automaton& a, const Automaton& b,
                                 int bound);

// Searches for a word on which the two machines disagree.  Refuses machines
// with different head modes.
DecisionReport bounded_equivalence(const Automaton& a, const Automaton& b,
                                   int bound);

}  // namespace wtl

#endif  // WTL_DECISION_HPP
