#pragma once

// Machine-to-machine constructions: mode conversion, union of compatible
// machines, and the subset simulation that strips translucency at the price
// of reordering letters.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wtl/model.hpp"

namespace wtl {

class IncompatibleSignatures : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IncompatibleInitialTranslucency : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Simulates a returning machine in non-returning mode. Every original state
// gets a twin that sees no letter at all, so after each consumption the twin
// forces an endmarker move whose only effect is sending the head back to the
// left. Accepts the same language; doubles the state count.
// Throws std::invalid_argument when the input is already non-returning.
Automaton to_nonreturning(const Automaton& aut);

// Union behind a fresh initial state that copies both machines' initial
// moves. Requires equal letter signatures, equal modes, and initial states
// that are translucent to exactly the same letters; throws
// IncompatibleSignatures or IncompatibleInitialTranslucency otherwise.
Automaton union_compatible(const Automaton& a, const Automaton& b);

// A pushdown machine without translucency. Stack discipline is still fixed
// by the letter classes; silent moves consume nothing and leave the stack
// alone. A word is accepted when some run consumes all of it and ends in a
// state listed in accept_at_end.
struct OrdinaryNPDA {
  Signature sig;
  std::set<std::string> states;
  std::string initial;
  std::set<std::string> stack_alphabet;
  std::map<Key, Outcome> delta_push;
  std::map<Key, Outcome> delta_pop;
  std::map<Key, Outcome> delta_state;
  // (state, top-or-bottom) -> successor states.
  std::map<std::pair<std::string, std::string>, std::set<std::string>> silent;
  std::set<std::string> accept_at_end;

  bool operator==(const OrdinaryNPDA&) const = default;
};

// Subset simulation of a returning machine that reads letters in the order
// the machine consumes them. States pair a machine state with the set of
// states that already scanned the whole remaining input; a letter is legal
// only if every state in that set is blind to it. The result accepts a
// language letter-equivalent to the machine's. Throws std::invalid_argument
// on non-returning input and ResourceLimitError when the subset space is
// too large to enumerate.
OrdinaryNPDA letter_equivalent_npda(const Automaton& aut);

bool npda_accepts(const OrdinaryNPDA& npda, const Word& w);

std::string serialize_npda(const OrdinaryNPDA& npda);

struct NpdaLoadResult {
  std::optional<OrdinaryNPDA> npda;
  std::vector<Violation> violations;
};

// Parses the serialize_npda format: the machine set directives without
// mode or translucency, trans lines without endmarker keys, plus
//   silent: <state> <top|_> -> <state>
//   drain: <state>
// load_npda(serialize_npda(n)) reproduces n.
NpdaLoadResult load_npda(const std::string& text);

}  // namespace wtl
