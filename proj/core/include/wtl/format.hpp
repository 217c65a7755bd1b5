#pragma once

// Line-oriented machine descriptions. Directives:
//
//   mode: returning | non-returning
//   letters.push: a b ...
//   letters.pop: ...
//   letters.state: ...
//   stack: A B ...
//   states: q0 q1 ...
//   initial: q0
//   translucent: q -> [a b ...]        (possibly empty list)
//   trans: q a top -> accept
//   trans: q a top -> q2 push A
//   trans: q a top -> q2 pop
//   trans: q a top -> q2 none
//
// "_" names the empty-stack top, "end" the endmarker. "//" starts a comment.
// Repeated set directives accumulate; repeated trans lines for one key
// accumulate targets.

#include <string>
#include <vector>

#include "wtl/model.hpp"

namespace wtl {

struct ParseResult {
  std::optional<RawDescription> raw;
  std::vector<Violation> violations;
};

ParseResult parse_description(const std::string& text);

// parse + validate in one step; violations from either stage.
ValidationResult load_automaton(const std::string& text);

}  // namespace wtl
