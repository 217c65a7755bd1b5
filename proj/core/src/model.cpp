#include "wtl/model.hpp"

#include <algorithm>
#include <array>
#include <ostream>
#include <sstream>

namespace wtl {

bool is_reserved_token(const std::string& tok) {
  static const std::array<const char*, 7> kReserved = {
      "_", "end", "->", "push", "pop", "none", "accept"};
  for (auto* r : kReserved)
    if (tok == r) return true;
  return tok.find("//") != std::string::npos;
}

bool Signature::contains(const std::string& letter) const {
  return push.count(letter) || pop.count(letter) || state.count(letter);
}

std::optional<LetterClass> Signature::class_of(const std::string& letter) const {
  if (push.count(letter)) return LetterClass::Push;
  if (pop.count(letter)) return LetterClass::Pop;
  if (state.count(letter)) return LetterClass::State;
  return std::nullopt;
}

std::set<std::string> Signature::all_letters() const {
  std::set<std::string> all = push;
  all.insert(pop.begin(), pop.end());
  all.insert(state.begin(), state.end());
  return all;
}

const Outcome* Automaton::lookup(const std::string& state,
                                 const std::string& letter,
                                 const std::string& top) const {
  const std::map<Key, Outcome>* table = nullptr;
  if (letter == kEndToken) {
    table = &delta_state;
  } else {
    auto cls = sig.class_of(letter);
    if (!cls) return nullptr;
    switch (*cls) {
      case LetterClass::Push: table = &delta_push; break;
      case LetterClass::Pop: table = &delta_pop; break;
      case LetterClass::State: table = &delta_state; break;
    }
  }
  auto it = table->find(Key{state, letter, top});
  return it == table->end() ? nullptr : &it->second;
}

ValidationResult validate(const RawDescription& raw) {
  ValidationResult result;
  auto bad = [&](int line, std::string msg) {
    result.violations.push_back({line, std::move(msg)});
  };

  Automaton aut;

  if (!raw.mode) {
    bad(0, "mode directive missing");
  } else {
    aut.mode = raw.mode->second == "returning" ? Mode::Returning
                                               : Mode::NonReturning;
  }

  auto collect = [&](const std::vector<std::pair<int, std::string>>& src,
                     std::set<std::string>& dest, const char* what) {
    for (auto& [line, tok] : src) {
      if (is_reserved_token(tok)) {
        bad(line, std::string("reserved token '") + tok + "' cannot name a " + what);
        continue;
      }
      dest.insert(tok);
    }
  };
  collect(raw.push_letters, aut.sig.push, "letter");
  collect(raw.pop_letters, aut.sig.pop, "letter");
  collect(raw.state_letters, aut.sig.state, "letter");
  collect(raw.stack_symbols, aut.stack_alphabet, "stack symbol");
  collect(raw.state_names, aut.states, "state");

  for (const auto& l : aut.sig.push) {
    if (aut.sig.pop.count(l) || aut.sig.state.count(l))
      bad(0, "signature sets not disjoint: letter '" + l + "'");
  }
  for (const auto& l : aut.sig.pop) {
    if (aut.sig.state.count(l))
      bad(0, "signature sets not disjoint: letter '" + l + "'");
  }

  if (!raw.initial) {
    bad(0, "initial directive missing");
  } else if (!aut.states.count(raw.initial->second)) {
    bad(raw.initial->first,
        "initial state '" + raw.initial->second + "' is not a declared state");
  } else {
    aut.initial = raw.initial->second;
  }

  for (const auto& t : raw.translucent) {
    if (!aut.states.count(t.state)) {
      bad(t.line, "translucency for undeclared state '" + t.state + "'");
      continue;
    }
    auto& set = aut.tau[t.state];
    for (const auto& l : t.letters) {
      if (!aut.sig.contains(l)) {
        bad(t.line, "translucent letter '" + l + "' is not a declared letter");
        continue;
      }
      set.insert(l);
    }
  }
  for (const auto& q : aut.states) {
    if (!aut.tau.count(q)) {
      result.warnings.push_back("state '" + q +
                                "' has no translucency line; it sees every letter");
      aut.tau[q] = {};
    }
  }

  for (const auto& t : raw.transitions) {
    bool entry_ok = true;
    if (!aut.states.count(t.state)) {
      bad(t.line, "transition from undeclared state '" + t.state + "'");
      entry_ok = false;
    }
    bool is_end = t.letter == kEndToken;
    std::optional<LetterClass> cls;
    if (!is_end) {
      cls = aut.sig.class_of(t.letter);
      if (!cls) {
        bad(t.line, "transition on undeclared letter '" + t.letter + "'");
        entry_ok = false;
      }
    }
    if (t.top != kBottomToken && !aut.stack_alphabet.count(t.top)) {
      bad(t.line, "transition on undeclared stack symbol '" + t.top + "'");
      entry_ok = false;
    }
    if (!t.accept) {
      if (!aut.states.count(t.target_state)) {
        bad(t.line, "transition to undeclared state '" + t.target_state + "'");
        entry_ok = false;
      }
      LetterClass acted = t.action == "push"  ? LetterClass::Push
                          : t.action == "pop" ? LetterClass::Pop
                                              : LetterClass::State;
      if (is_end) {
        if (acted != LetterClass::State) {
          bad(t.line, "wrong table for letter class: endmarker rules use 'none'");
          entry_ok = false;
        }
      } else if (cls && *cls != acted) {
        bad(t.line, "wrong table for letter class: letter '" + t.letter +
                        "' requires '" +
                        (*cls == LetterClass::Push  ? "push"
                         : *cls == LetterClass::Pop ? "pop"
                                                    : "none") +
                        "'");
        entry_ok = false;
      }
      if (t.action == "push" && !t.push_symbol.empty() &&
          !aut.stack_alphabet.count(t.push_symbol)) {
        bad(t.line, "push of undeclared stack symbol '" + t.push_symbol + "'");
        entry_ok = false;
      }
    }
    if (!entry_ok) continue;

    std::map<Key, Outcome>* table;
    if (is_end || (cls && *cls == LetterClass::State))
      table = &aut.delta_state;
    else if (cls && *cls == LetterClass::Push)
      table = &aut.delta_push;
    else
      table = &aut.delta_pop;
    Outcome& out = (*table)[Key{t.state, t.letter, t.top}];
    if (t.accept) {
      if (!out.targets.empty()) {
        bad(t.line, "entry mixes accept with successor targets");
        continue;
      }
      out.accept = true;
    } else {
      if (out.accept) {
        bad(t.line, "entry mixes accept with successor targets");
        continue;
      }
      out.targets.insert(Target{t.target_state, t.push_symbol});
    }
  }

  if (result.violations.empty()) result.automaton = std::move(aut);
  return result;
}

namespace {

void emit_set_line(std::ostream& os, const char* directive,
                   const std::set<std::string>& set) {
  os << directive;
  for (const auto& t : set) os << ' ' << t;
  os << '\n';
}

}  // namespace

std::string serialize(const Automaton& aut) {
  std::ostringstream os;
  os << "mode: "
     << (aut.mode == Mode::Returning ? "returning" : "non-returning") << '\n';
  emit_set_line(os, "letters.push:", aut.sig.push);
  emit_set_line(os, "letters.pop:", aut.sig.pop);
  emit_set_line(os, "letters.state:", aut.sig.state);
  emit_set_line(os, "stack:", aut.stack_alphabet);
  emit_set_line(os, "states:", aut.states);
  os << "initial: " << aut.initial << '\n';
  for (const auto& q : aut.states) {
    os << "translucent: " << q << " ->";
    auto it = aut.tau.find(q);
    if (it != aut.tau.end())
      for (const auto& l : it->second) os << ' ' << l;
    os << '\n';
  }

  struct Line {
    Key key;
    bool accept;
    Target target;
    std::string action;
  };
  std::vector<Line> lines;
  auto gather = [&](const std::map<Key, Outcome>& table, const char* action) {
    for (const auto& [key, out] : table) {
      std::string act = key.letter == kEndToken ? "none" : action;
      if (out.accept) lines.push_back({key, true, {}, act});
      for (const auto& tgt : out.targets) lines.push_back({key, false, tgt, act});
    }
  };
  gather(aut.delta_push, "push");
  gather(aut.delta_pop, "pop");
  gather(aut.delta_state, "none");
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    if (a.key != b.key) return a.key < b.key;
    if (a.accept != b.accept) return a.accept;
    return a.target < b.target;
  });
  for (const auto& l : lines) {
    os << "trans: " << l.key.state << ' ' << l.key.letter << ' ' << l.key.top
       << " -> ";
    if (l.accept) {
      os << "accept";
    } else {
      os << l.target.state << ' ' << l.action;
      if (l.action == "push") os << ' ' << l.target.push_symbol;
    }
    os << '\n';
  }
  return os.str();
}

bool is_deterministic(const Automaton& aut) {
  for (const auto* table : {&aut.delta_push, &aut.delta_pop, &aut.delta_state})
    for (const auto& [key, out] : *table)
      if (out.targets.size() > 1) return false;
  return true;
}

bool signatures_compatible(const Automaton& a, const Automaton& b) {
  return a.sig == b.sig;
}

Automaton rename_states(const Automaton& aut,
                        const std::map<std::string, std::string>& name_map) {
  auto ren = [&](const std::string& q) {
    auto it = name_map.find(q);
    return it == name_map.end() ? q : it->second;
  };
  Automaton out;
  out.mode = aut.mode;
  out.sig = aut.sig;
  out.stack_alphabet = aut.stack_alphabet;
  out.initial = ren(aut.initial);
  for (const auto& q : aut.states) out.states.insert(ren(q));
  for (const auto& [q, set] : aut.tau) out.tau[ren(q)] = set;
  auto ren_table = [&](const std::map<Key, Outcome>& src) {
    std::map<Key, Outcome> dst;
    for (const auto& [key, o] : src) {
      Outcome no;
      no.accept = o.accept;
      for (const auto& t : o.targets)
        no.targets.insert(Target{ren(t.state), t.push_symbol});
      dst[Key{ren(key.state), key.letter, key.top}] = std::move(no);
    }
    return dst;
  };
  out.delta_push = ren_table(aut.delta_push);
  out.delta_pop = ren_table(aut.delta_pop);
  out.delta_state = ren_table(aut.delta_state);
  return out;
}

}  // namespace wtl
