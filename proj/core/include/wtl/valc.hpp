#pragma once

// Deterministic linear bounded automata and the computation-word gadget
// built on them: a generator that encodes an accepting run as a single
// token word, a total membership oracle for the encoding, and a machine
// construction accepting exactly the complement of the encoding language.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wtl/model.hpp"

namespace wtl {

// One table row: scanning `t` in state `q` writes `write`, enters `state`,
// and moves the head one cell left or right.
struct LbaMove {
  std::string state;
  std::string write;
  char dir = 'R';

  bool operator==(const LbaMove&) const = default;
};

// Tape machine confined to the input region. `tape` keeps declaration
// order; its first two entries are the left and right endmarkers. A state
// scanning a symbol with no table entry halts, and halting accepts.
struct Lba {
  std::set<std::string> states;
  std::string initial;
  std::vector<std::string> tape;
  std::set<std::string> input;
  std::map<std::pair<std::string, std::string>, LbaMove> moves;

  const std::string& left_end() const { return tape.at(0); }
  const std::string& right_end() const { return tape.at(1); }

  bool operator==(const Lba&) const = default;
};

struct LbaLoadResult {
  std::optional<Lba> lba;
  std::vector<Violation> violations;
};

// Text format, one directive per line, `//` comments allowed:
//   lba.states: <token>...
//   lba.initial: <token>
//   lba.tape: <left end> <right end> <token>...
//   lba.input: <token>...
//   lba.trans: <state> <symbol> -> <state> <symbol> <L|R>
// Entries may never scan the left endmarker, and a scanned symbol is
// rewritten to an endmarker only if it is that endmarker.
LbaLoadResult load_lba(const std::string& text);

// Canonical text: sorted states and input, tape in declared order, one
// sorted line per table row. load_lba(serialize_lba(l)) reproduces l.
std::string serialize_lba(const Lba& lba);

// A configuration as a token sequence: left endmarker, the tape cells with
// the state token inserted before the scanned cell, right endmarker. The
// state token sits directly before the right endmarker when the head
// scans it.
using LbaConfig = std::vector<std::string>;

enum class LbaOutcome { Accepted, Rejected, Exceeded };

// Rejected covers both a blocked move (the head would cross an endmarker)
// and a revisited configuration. trace lists every configuration reached,
// the initial one first; the move count is trace.size() - 1.
struct LbaRun {
  LbaOutcome outcome = LbaOutcome::Rejected;
  std::vector<LbaConfig> trace;
};

// Deterministic simulation from ▷ q0 input ◁. The step budget is
// |Q|·(|T|+2)^(n+2)·(n+3), saturated; a repeated configuration rejects
// before the budget is ever reached.
LbaRun lba_run(const Lba& lba, const Word& input);

// Encodes the accepting run on `input` as a word: the even-indexed
// configurations in order, separated by #, then c, then the reversed final
// configuration with every token single-primed plus a primed #, followed
// by the remaining odd-indexed configurations in descending order,
// reversed, double-primed, separated by double-primed #. Returns nullopt
// when the run rejects or exceeds, and when its move count is even (the
// encoding needs an odd count to split evenly around c).
std::optional<Word> valc_generate(const Lba& lba, const Word& input);

// Total membership test for the encoding language: true iff the word has
// the exact shape valc_generate produces up to interleaving of the primed
// and double-primed halves, its first configuration is initial, its last
// one halts, and every adjacent pair is one legal move apart.
bool in_valcp(const Lba& lba, const Word& word);

// Returning, nondeterministic machine accepting exactly the words
// in_valcp rejects. Plain tokens push, primed and double-primed tokens
// pop, c changes only state; the four violation checks (shape, token
// count, and a wrong successor at an even or odd chain position) share
// the input through the first-letter fan-out of the initial state.
// Throws ResourceLimitError when the construction exceeds its size guard
// and std::invalid_argument for an LBA whose tokens cannot be decorated.
Automaton build_invalc(const Lba& lba);

// One seeded edit: substitute a token, delete one, swap an adjacent pair,
// or move a token between prime levels. The result always differs from
// the input; the caller re-checks membership when it needs a non-member.
Word mutate_valid(const Word& word, std::uint64_t seed);

// Built-in fixture: accepts a*b, always halting after an odd number of
// moves, at least three.
const std::string& toy_lba_text();

}  // namespace wtl
