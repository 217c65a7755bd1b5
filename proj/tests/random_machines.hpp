#pragma once

// Seeded generators for the randomized harness entries. Machines come out
// of a serialize/load round trip, so everything returned here is validated.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wtl/format.hpp"
#include "wtl/model.hpp"

namespace harness {

inline wtl::Word random_word(const std::vector<std::string>& alphabet,
                             int max_len, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  wtl::Word w;
  int n = len(rng);
  w.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w.push_back(alphabet[pick(rng)]);
  return w;
}

// Small returning machine: up to 4 states, 3 letters, 2 stack symbols.
// Entry density and branching are tuned so that roughly half the keys have
// an entry and accepts stay rare enough for interesting languages.
inline wtl::Automaton random_returning_machine(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto roll = [&rng](int n) {
    return std::uniform_int_distribution<int>(0, n - 1)(rng);
  };

  const std::vector<std::string> letter_pool = {"a", "b", "c"};
  const std::vector<std::string> stack_pool = {"X", "Y"};

  wtl::Automaton m;
  m.mode = wtl::Mode::Returning;

  int n_states = 1 + roll(4);
  std::vector<std::string> states;
  for (int i = 0; i < n_states; ++i) states.push_back("q" + std::to_string(i));
  m.states.insert(states.begin(), states.end());
  m.initial = states[0];

  int n_letters = 1 + roll(3);
  std::vector<std::string> letters(letter_pool.begin(),
                                   letter_pool.begin() + n_letters);
  std::vector<wtl::LetterClass> cls(letters.size());
  for (std::size_t i = 0; i < letters.size(); ++i) {
    switch (roll(3)) {
      case 0:
        cls[i] = wtl::LetterClass::Push;
        m.sig.push.insert(letters[i]);
        break;
      case 1:
        cls[i] = wtl::LetterClass::Pop;
        m.sig.pop.insert(letters[i]);
        break;
      default:
        cls[i] = wtl::LetterClass::State;
        m.sig.state.insert(letters[i]);
        break;
    }
  }

  int n_stack = 1 + roll(2);
  std::vector<std::string> stack(stack_pool.begin(),
                                 stack_pool.begin() + n_stack);
  m.stack_alphabet.insert(stack.begin(), stack.end());

  for (const auto& q : states) {
    auto& inv = m.tau[q];
    for (const auto& a : letters)
      if (roll(4) == 0) inv.insert(a);
  }

  std::vector<std::string> tops = {wtl::kBottomToken};
  tops.insert(tops.end(), stack.begin(), stack.end());

  auto make_outcome = [&](bool push_class) {
    wtl::Outcome oc;
    if (roll(5) == 0) {
      oc.accept = true;
      return oc;
    }
    int n_targets = 1 + (roll(4) == 0 ? 1 : 0);
    for (int t = 0; t < n_targets; ++t) {
      wtl::Target tg;
      tg.state = states[static_cast<std::size_t>(roll(n_states))];
      if (push_class) tg.push_symbol = stack[static_cast<std::size_t>(roll(n_stack))];
      oc.targets.insert(tg);
    }
    return oc;
  };

  for (const auto& q : states) {
    for (std::size_t i = 0; i < letters.size(); ++i) {
      for (const auto& top : tops) {
        if (roll(2) != 0) continue;
        wtl::Key k{q, letters[i], top};
        switch (cls[i]) {
          case wtl::LetterClass::Push:
            m.delta_push[k] = make_outcome(true);
            break;
          case wtl::LetterClass::Pop:
            m.delta_pop[k] = make_outcome(false);
            break;
          case wtl::LetterClass::State:
            m.delta_state[k] = make_outcome(false);
            break;
        }
      }
    }
    for (const auto& top : tops) {
      if (roll(3) != 0) continue;
      wtl::Key k{q, wtl::kEndToken, top};
      m.delta_state[k] = make_outcome(false);
    }
  }

  auto res = wtl::load_automaton(wtl::serialize(m));
  if (!res.automaton)
    throw std::logic_error("random machine failed validation");
  return *res.automaton;
}

}  // namespace harness
