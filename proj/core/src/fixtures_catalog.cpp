#include <stdexcept>
#include <utility>
#include <vector>

#include "wtl/langlib.hpp"

namespace wtl {

namespace {

// Nondeterministic: guesses which b-block the a-count fails against, then
// verifies the rest of the block pattern before accepting. rs* states handle
// a guess with a suffix still to validate, re* a guess at the final block;
// the 0/1 suffix tracks whether an a has been matched yet. vb/vbb replay the
// block pattern after the guess, va/da drain surplus a letters.
const char* kExa21 = R"(mode: returning
letters.push: b
letters.pop: a
letters.state: #
stack: B dot
states: da p q0 q1 re0 re1 rs0 rs1 s va vb vbb
initial: q0
translucent: q0 -> a
translucent: q1 -> a
translucent: s -> a
translucent: p -> a
translucent: rs0 -> # b
translucent: rs1 -> # b
translucent: re0 -> # b
translucent: re1 -> # b
translucent: vb -> a
translucent: vbb -> a
translucent: va ->
translucent: da ->
trans: q0 b _ -> q1 push dot
trans: q0 b _ -> p push B
trans: q1 b dot -> q1 push dot
trans: q1 # dot -> s none
trans: q1 # dot -> p none
trans: s b dot -> q1 push dot
trans: p b dot -> p push B
trans: p b B -> p push B
trans: p # B -> rs0 none
trans: p end B -> re0 none
trans: rs0 a B -> rs1 pop
trans: rs1 a B -> rs1 pop
trans: re0 a B -> re1 pop
trans: re1 a B -> re1 pop
trans: rs1 a dot -> vb pop
trans: rs1 a _ -> vb pop
trans: re1 a dot -> va pop
trans: re1 a _ -> va pop
trans: rs1 end B -> vb none
trans: re1 end B -> accept
trans: vb b _ -> vbb push dot
trans: vb b dot -> vbb push dot
trans: vb b B -> vbb push dot
trans: vbb b dot -> vbb push dot
trans: vbb # dot -> vb none
trans: vbb end dot -> da none
trans: va a dot -> va pop
trans: va a _ -> va pop
trans: va end dot -> accept
trans: va end _ -> accept
trans: da a dot -> da pop
trans: da a _ -> da pop
trans: da end dot -> accept
trans: da end _ -> accept
)";

// Nondeterministic non-returning matcher for marked-copy palindrome pairs.
// Branch q1/q2 matches double-marked letters against the pushed prefix and
// then demands at least one single-marked letter via q6/q7; branch q3/q4/q5
// matches single-marked letters first and drains double-marked ones.
const char* kExa22 = R"(mode: non-returning
letters.push: a b
letters.pop: a1 a2 b1 b2
letters.state:
stack: A B
states: q0 q1 q2 q3 q4 q5 q6 q7
initial: q0
translucent: q0 ->
translucent: q1 -> a1 b1
translucent: q2 ->
translucent: q3 ->
translucent: q4 ->
translucent: q5 ->
translucent: q6 ->
translucent: q7 -> a1 b1
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
trans: q2 end _ -> q6 none
trans: q3 a1 A -> q4 pop
trans: q3 b1 B -> q4 pop
trans: q4 a1 A -> q4 pop
trans: q4 b1 B -> q4 pop
trans: q4 a2 _ -> q5 pop
trans: q4 b2 _ -> q5 pop
trans: q5 a2 _ -> q5 pop
trans: q5 b2 _ -> q5 pop
trans: q5 end _ -> accept
trans: q6 a1 _ -> q7 pop
trans: q6 b1 _ -> q7 pop
trans: q7 end _ -> accept
)";

// Deterministic: counts a letters on the stack, matches the first b-block
// against them, then requires one separator and a nonempty second block.
const char* kML1 = R"(mode: returning
letters.push: a
letters.pop: b
letters.state: #
stack: A
states: s0 s1 s2 s3
initial: s0
translucent: s0 -> # b
translucent: s1 ->
translucent: s2 ->
translucent: s3 ->
trans: s0 a _ -> s0 push A
trans: s0 a A -> s0 push A
trans: s0 end A -> s1 none
trans: s1 b A -> s1 pop
trans: s1 # _ -> s2 none
trans: s2 b _ -> s3 pop
trans: s3 b _ -> s3 pop
trans: s3 end _ -> accept
)";

// Deterministic mirror image of the above: skips over a letters while
// consuming the first block, then matches the second block against the
// stacked a count.
const char* kML2 = R"(mode: returning
letters.push: a
letters.pop: b
letters.state: #
stack: A
states: t0 t1 t2 t3
initial: t0
translucent: t0 -> a
translucent: t1 -> a
translucent: t2 -> b
translucent: t3 ->
trans: t0 b _ -> t1 pop
trans: t1 b _ -> t1 pop
trans: t1 # _ -> t2 none
trans: t2 a _ -> t2 push A
trans: t2 a A -> t2 push A
trans: t2 end A -> t3 none
trans: t3 b A -> t3 pop
trans: t3 end _ -> accept
)";

// Nondeterministic union of the two block machines behind a fresh initial
// state. Both branches begin by consuming one b; the first-block branch
// compensates with the X marker under the a count.
const char* kMUnionL1L2 = R"(mode: returning
letters.push: a
letters.pop: b
letters.state: #
stack: A X
states: m1 m2 m3 p1 p2 t1 t2 t3 u0
initial: u0
translucent: u0 -> a
translucent: t1 -> a
translucent: t2 -> b
translucent: t3 ->
translucent: p1 -> # b
translucent: p2 -> # b
translucent: m1 ->
translucent: m2 ->
translucent: m3 ->
trans: u0 b _ -> t1 pop
trans: u0 b _ -> p1 pop
trans: t1 b _ -> t1 pop
trans: t1 # _ -> t2 none
trans: t2 a _ -> t2 push A
trans: t2 a A -> t2 push A
trans: t2 end A -> t3 none
trans: t3 b A -> t3 pop
trans: t3 end _ -> accept
trans: p1 a _ -> p2 push X
trans: p2 a X -> p2 push A
trans: p2 a A -> p2 push A
trans: p2 end A -> m1 none
trans: p2 end X -> m1 none
trans: m1 b A -> m1 pop
trans: m1 # X -> m2 none
trans: m2 b X -> m3 pop
trans: m3 b _ -> m3 pop
trans: m3 end _ -> accept
)";

// Deterministic equal-count checker. Each state's subscript lists the
// letters still owed in the current round; owed letters are visible, settled
// ones translucent. Acceptance only at a round boundary.
const char* kMAbcCounts = R"(mode: returning
letters.push: a
letters.pop: b c
letters.state:
stack: A
states: R_a R_ab R_abc R_ac R_b R_bc R_c
initial: R_abc
translucent: R_abc ->
translucent: R_bc -> a
translucent: R_ac -> b
translucent: R_ab -> c
translucent: R_a -> b c
translucent: R_b -> a c
translucent: R_c -> a b
trans: R_abc a _ -> R_bc push A
trans: R_abc a A -> R_bc push A
trans: R_abc b _ -> R_ac pop
trans: R_abc b A -> R_ac pop
trans: R_abc c _ -> R_ab pop
trans: R_abc c A -> R_ab pop
trans: R_bc b _ -> R_c pop
trans: R_bc b A -> R_c pop
trans: R_bc c _ -> R_b pop
trans: R_bc c A -> R_b pop
trans: R_ac a _ -> R_c push A
trans: R_ac a A -> R_c push A
trans: R_ac c _ -> R_a pop
trans: R_ac c A -> R_a pop
trans: R_ab a _ -> R_b push A
trans: R_ab a A -> R_b push A
trans: R_ab b _ -> R_a pop
trans: R_ab b A -> R_a pop
trans: R_a a _ -> R_abc push A
trans: R_a a A -> R_abc push A
trans: R_b b _ -> R_abc pop
trans: R_b b A -> R_abc pop
trans: R_c c _ -> R_abc pop
trans: R_c c A -> R_abc pop
trans: R_abc end _ -> accept
trans: R_abc end A -> accept
)";

// Deterministic, fully visible: letters must arrive in class order.
const char* kMAstar = R"(mode: returning
letters.push: a
letters.pop: b c
letters.state:
stack: A
states: g0 g1 g2
initial: g0
translucent: g0 ->
translucent: g1 ->
translucent: g2 ->
trans: g0 a _ -> g0 push A
trans: g0 a A -> g0 push A
trans: g0 b _ -> g1 pop
trans: g0 b A -> g1 pop
trans: g0 c _ -> g2 pop
trans: g0 c A -> g2 pop
trans: g1 b _ -> g1 pop
trans: g1 b A -> g1 pop
trans: g1 c _ -> g2 pop
trans: g1 c A -> g2 pop
trans: g2 c _ -> g2 pop
trans: g2 c A -> g2 pop
trans: g0 end _ -> accept
trans: g0 end A -> accept
trans: g1 end _ -> accept
trans: g1 end A -> accept
trans: g2 end _ -> accept
trans: g2 end A -> accept
)";

// No transitions at all: accepts nothing.
const char* kMEmpty = R"(mode: returning
letters.push: b
letters.pop: a
letters.state: #
stack:
states: e0
initial: e0
translucent: e0 ->
)";

// Accepts exactly the two words a and ab.
const char* kMFin = R"(mode: returning
letters.push: a
letters.pop: b
letters.state:
stack: A
states: f0 f1 f2
initial: f0
translucent: f0 ->
translucent: f1 ->
translucent: f2 ->
trans: f0 a _ -> f1 push A
trans: f1 end A -> accept
trans: f1 b A -> f2 pop
trans: f2 end _ -> accept
)";

const std::vector<std::pair<std::string, std::string>>& fixture_table() {
  static const std::vector<std::pair<std::string, std::string>> table = {
      {"exa21", kExa21},
      {"exa22", kExa22},
      {"m_l1", kML1},
      {"m_l2", kML2},
      {"m_union_l1l2", kMUnionL1L2},
      {"m_abc_counts", kMAbcCounts},
      {"m_astar", kMAstar},
      {"m_empty", kMEmpty},
      {"m_fin", kMFin},
  };
  return table;
}

}  // namespace

std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  for (const auto& [n, t] : fixture_table()) names.push_back(n);
  return names;
}

bool is_fixture_name(const std::string& name) {
  for (const auto& [n, t] : fixture_table())
    if (n == name) return true;
  return false;
}

const std::string& fixture_text(const std::string& name) {
  for (const auto& [n, t] : fixture_table())
    if (n == name) return t;
  throw std::out_of_range("unknown fixture '" + name + "'");
}

}  // namespace wtl
