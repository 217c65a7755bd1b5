#pragma once

// Pushdown machines whose input letters may be translucent per state: the head
// consumes the first remaining letter the current state can see, and each
// letter's class fixes its stack action (push / pop / state-only).

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace wtl {

enum class Mode { Returning, NonReturning };

// Input words are token sequences; letters are free-form tokens.
using Word = std::vector<std::string>;

enum class LetterClass { Push, Pop, State };

// Token spellings with fixed meaning in the text format and in trace output.
inline constexpr const char* kBottomToken = "_";
inline constexpr const char* kEndToken = "end";

bool is_reserved_token(const std::string& tok);

// The three pairwise disjoint letter sets. Stack behaviour is determined by
// which set a letter belongs to, never by the transition taken.
struct Signature {
  std::set<std::string> push;
  std::set<std::string> pop;
  std::set<std::string> state;

  bool contains(const std::string& letter) const;
  std::optional<LetterClass> class_of(const std::string& letter) const;
  std::set<std::string> all_letters() const;

  bool operator==(const Signature&) const = default;
};

// One successor of a transition entry. push_symbol is empty unless the entry
// sits in the push table.
struct Target {
  std::string state;
  std::string push_symbol;

  auto operator<=>(const Target&) const = default;
};

// A transition entry either accepts outright or offers successor targets.
// accept and non-empty targets never coexist in a validated machine.
struct Outcome {
  bool accept = false;
  std::set<Target> targets;

  bool operator==(const Outcome&) const = default;
};

// Lookup key: letter holds kEndToken for endmarker entries, top holds
// kBottomToken when the entry fires on the empty stack.
struct Key {
  std::string state;
  std::string letter;
  std::string top;

  auto operator<=>(const Key&) const = default;
};

struct Automaton {
  Mode mode = Mode::Returning;
  std::set<std::string> states;
  std::string initial;
  Signature sig;
  std::set<std::string> stack_alphabet;
  // Letters invisible per state. States absent here see every letter.
  std::map<std::string, std::set<std::string>> tau;
  std::map<Key, Outcome> delta_push;
  std::map<Key, Outcome> delta_pop;
  std::map<Key, Outcome> delta_state;

  // Entry for (state, letter-or-end, top), dispatched to the table the
  // letter's class selects; endmarker entries live in the state table.
  const Outcome* lookup(const std::string& state, const std::string& letter,
                        const std::string& top) const;

  bool operator==(const Automaton&) const = default;
};

struct Violation {
  int line = 0;  // 0 when the defect has no single source line
  std::string message;

  bool operator==(const Violation&) const = default;
};

// ---- text format ------------------------------------------------------
// See format.hpp for parsing. Validation turns a parsed description into a
// machine or reports every defect found.

struct RawTransition {
  int line = 0;
  std::string state;
  std::string letter;  // kEndToken for endmarker rules
  std::string top;     // kBottomToken for empty-stack rules
  bool accept = false;
  std::string target_state;
  std::string action;  // "push" | "pop" | "none"; empty when accept
  std::string push_symbol;
};

struct RawTranslucency {
  int line = 0;
  std::string state;
  std::vector<std::string> letters;
};

struct RawDescription {
  std::optional<std::pair<int, std::string>> mode;
  std::vector<std::pair<int, std::string>> push_letters;
  std::vector<std::pair<int, std::string>> pop_letters;
  std::vector<std::pair<int, std::string>> state_letters;
  std::vector<std::pair<int, std::string>> stack_symbols;
  std::vector<std::pair<int, std::string>> state_names;
  std::optional<std::pair<int, std::string>> initial;
  std::vector<RawTranslucency> translucent;
  std::vector<RawTransition> transitions;
};

struct ValidationResult {
  std::optional<Automaton> automaton;
  std::vector<Violation> violations;
  std::vector<std::string> warnings;
};

ValidationResult validate(const RawDescription& raw);

// Canonical text: sorted sets, one translucency line per state, one target
// per transition line, stable ordering. Parsing the output reproduces the
// machine exactly.
std::string serialize(const Automaton& aut);

bool is_deterministic(const Automaton& aut);

// Same letter sets with the same classes; stack alphabets may differ.
bool signatures_compatible(const Automaton& a, const Automaton& b);

// Rewrites every state name through the map, which must be a bijection over
// the state set. Intended for tests.
Automaton rename_states(const Automaton& aut,
                        const std::map<std::string, std::string>& name_map);

}  // namespace wtl
