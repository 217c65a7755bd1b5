#pragma once

// Execution of machine descriptions. The public configuration type keeps
// letters and stack symbols as strings; the Engine compiles a machine once
// into dense tables and runs words against it.

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wtl/model.hpp"

namespace wtl {

// Remaining input plus machine state. tape holds only unconsumed letters;
// head is the scan cursor (always 0 in returning mode). stack lists the top
// symbol first and never includes the bottom marker.
struct Configuration {
  std::string state;
  Word tape;
  std::size_t head = 0;
  std::vector<std::string> stack;

  bool operator==(const Configuration&) const = default;
};

Configuration initial_configuration(const Automaton& aut, const Word& w);

// Index of the letter the state consumes next: the first letter at or after
// head the state can see. nullopt means the endmarker acts.
std::optional<std::size_t> scan_visible(const Automaton& aut,
                                        const Configuration& conf);

struct StepResult {
  bool accept = false;
  std::vector<Configuration> successors;
};

// One move relation application. accept is final and immediate even when
// letters remain unconsumed.
StepResult step(const Automaton& aut, const Configuration& conf);

enum class VerdictKind { Accept, RejectUndefined, RejectLoop };

// One executed move, recorded for trace output. consumed is the letter or
// the endmarker token; action is "push", "pop", "none", or "wrap" for
// endmarker moves. Accepting moves leave to_state empty and the stack
// untouched.
struct Step {
  std::string from_state;
  std::string consumed;
  std::string stack_top_seen;
  std::string action;
  std::string push_symbol;
  std::string to_state;
  bool to_accept = false;
  Word tape_after;
  std::size_t head_after = 0;
  std::vector<std::string> stack_after;
};

struct Verdict {
  VerdictKind kind = VerdictKind::RejectUndefined;
  std::vector<Step> trace;
};

struct EngineLimits {
  std::size_t max_configurations = 1'000'000;
};

class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Engine {
 public:
  explicit Engine(Automaton aut, EngineLimits limits = {});
  ~Engine();
  Engine(Engine&&) noexcept;
  Engine& operator=(Engine&&) noexcept;

  const Automaton& automaton() const;

  // True when some run of the word reaches accept.
  bool accepts(const Word& w) const;

  // A shortest accepting run, or nullopt.
  std::optional<std::vector<Step>> accepting_trace(const Word& w) const;

  // The unique run of a deterministic machine. Loops through endmarker
  // moves are detected and reported, so this always terminates.
  // Throws std::invalid_argument on nondeterministic machines.
  Verdict run_deterministic(const Word& w) const;

  // Accepted words up to max_len over the machine's letters.
  std::vector<Word> enumerate(int max_len) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool accepts(const Automaton& aut, const Word& w);
std::optional<std::vector<Step>> accepting_trace(const Automaton& aut,
                                                 const Word& w);
Verdict run_deterministic(const Automaton& aut, const Word& w);
std::vector<Word> enumerate(const Automaton& aut, int max_len);

// One trace line: index, move arrow, then the configuration reached. The
// caret marks the head position among the remaining letters; the stack is
// printed top first with the bottom marker last.
std::string render_step(std::size_t index, const Step& s);

std::string render_verdict(VerdictKind kind);

}  // namespace wtl
