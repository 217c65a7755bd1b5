#include "wtl/constructions.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <sstream>
#include <vector>

#include "wtl/engine.hpp"

namespace wtl {

namespace {

std::set<std::string> tau_of(const Automaton& aut, const std::string& q) {
  auto it = aut.tau.find(q);
  return it != aut.tau.end() ? it->second : std::set<std::string>{};
}

}  // namespace

Automaton to_nonreturning(const Automaton& aut) {
  if (aut.mode != Mode::Returning)
    throw std::invalid_argument("mode conversion expects a returning machine");

  std::string suffix = "_w";
  auto taken = [&] {
    for (const auto& q : aut.states)
      if (aut.states.count(q + suffix)) return true;
    return false;
  };
  while (taken()) suffix += "_";

  Automaton out;
  out.mode = Mode::NonReturning;
  out.initial = aut.initial;
  out.sig = aut.sig;
  out.stack_alphabet = aut.stack_alphabet;
  const std::set<std::string> all_letters = aut.sig.all_letters();
  for (const auto& q : aut.states) {
    out.states.insert(q);
    out.states.insert(q + suffix);
    out.tau[q] = tau_of(aut, q);
    out.tau[q + suffix] = all_letters;
  }

  auto convert = [&](const std::map<Key, Outcome>& in,
                     std::map<Key, Outcome>& dest) {
    for (const auto& [key, oc] : in) {
      if (key.letter == kEndToken) {
        // Endmarker moves happen with the head at the left margin in both
        // modes, so they stay between original states.
        dest[key] = oc;
        continue;
      }
      Outcome moved;
      moved.accept = oc.accept;
      for (const Target& t : oc.targets)
        moved.targets.insert({t.state + suffix, t.push_symbol});
      dest[key] = moved;
    }
  };
  convert(aut.delta_push, out.delta_push);
  convert(aut.delta_pop, out.delta_pop);
  convert(aut.delta_state, out.delta_state);

  std::vector<std::string> tops(aut.stack_alphabet.begin(),
                                aut.stack_alphabet.end());
  tops.push_back(kBottomToken);
  for (const auto& q : aut.states)
    for (const auto& z : tops)
      out.delta_state[{q + suffix, kEndToken, z}] = {false, {{q, ""}}};
  return out;
}

Automaton union_compatible(const Automaton& a, const Automaton& b) {
  if (a.mode != b.mode)
    throw IncompatibleSignatures("machines disagree on head mode");
  if (!signatures_compatible(a, b))
    throw IncompatibleSignatures("letter signatures differ");
  if (tau_of(a, a.initial) != tau_of(b, b.initial))
    throw IncompatibleInitialTranslucency(
        "initial states see different letters");

  std::string suffix = "_b";
  auto taken = [&] {
    for (const auto& q : b.states)
      if (a.states.count(q + suffix)) return true;
    return false;
  };
  while (taken()) suffix += "_";
  std::map<std::string, std::string> renames;
  for (const auto& q : b.states) renames[q] = q + suffix;
  const Automaton b2 = rename_states(b, renames);
  const std::string b_init = renames.at(b.initial);

  std::string init = "u";
  for (int i = 0; a.states.count(init) || b2.states.count(init); ++i)
    init = "u" + std::to_string(i);

  Automaton out;
  out.mode = a.mode;
  out.sig = a.sig;
  out.initial = init;
  out.stack_alphabet = a.stack_alphabet;
  out.stack_alphabet.insert(b2.stack_alphabet.begin(),
                            b2.stack_alphabet.end());
  out.states = a.states;
  out.states.insert(b2.states.begin(), b2.states.end());
  out.states.insert(init);
  out.tau = a.tau;
  for (const auto& [q, set] : b2.tau) out.tau[q] = set;
  out.tau[init] = tau_of(a, a.initial);

  out.delta_push = a.delta_push;
  out.delta_pop = a.delta_pop;
  out.delta_state = a.delta_state;
  for (const auto& [key, oc] : b2.delta_push) out.delta_push[key] = oc;
  for (const auto& [key, oc] : b2.delta_pop) out.delta_pop[key] = oc;
  for (const auto& [key, oc] : b2.delta_state) out.delta_state[key] = oc;

  // The fresh state copies both initial states' moves. Where the two
  // machines offer the same first move, an accepting outcome wins over
  // successor sets.
  auto lift = [&](const std::map<Key, Outcome>& table, const std::string& from,
                  std::map<Key, Outcome>& dest) {
    for (const auto& [key, oc] : table) {
      if (key.state != from) continue;
      Outcome& merged = dest[{init, key.letter, key.top}];
      merged.accept = merged.accept || oc.accept;
      merged.targets.insert(oc.targets.begin(), oc.targets.end());
    }
  };
  lift(a.delta_push, a.initial, out.delta_push);
  lift(a.delta_pop, a.initial, out.delta_pop);
  lift(a.delta_state, a.initial, out.delta_state);
  lift(b2.delta_push, b_init, out.delta_push);
  lift(b2.delta_pop, b_init, out.delta_pop);
  lift(b2.delta_state, b_init, out.delta_state);
  for (auto* table : {&out.delta_push, &out.delta_pop, &out.delta_state})
    for (auto& [key, oc] : *table)
      if (oc.accept) oc.targets.clear();
  return out;
}

OrdinaryNPDA letter_equivalent_npda(const Automaton& aut) {
  if (aut.mode != Mode::Returning)
    throw std::invalid_argument(
        "subset simulation expects a returning machine");
  const std::size_t nq = aut.states.size();
  if (nq > 16) throw ResourceLimitError("subset space too large to enumerate");

  std::vector<std::string> qname(aut.states.begin(), aut.states.end());
  std::map<std::string, int> qid;
  for (std::size_t i = 0; i < qname.size(); ++i)
    qid[qname[i]] = static_cast<int>(i);

  // Per letter: the states the letter is invisible to.
  std::map<std::string, uint32_t> blind;
  for (const auto& l : aut.sig.all_letters()) blind[l] = 0;
  for (const auto& [q, set] : aut.tau)
    for (const auto& l : set) blind.at(l) |= uint32_t{1} << qid.at(q);

  struct Node {
    int q;
    uint32_t s;
  };
  auto node_key = [](int q, uint32_t s) {
    return (uint64_t{s} << 32) | static_cast<uint32_t>(q);
  };
  std::map<uint64_t, int> node_index;
  std::vector<Node> nodes;
  std::deque<int> queue;
  auto discover = [&](int q, uint32_t s) {
    auto [it, fresh] =
        node_index.emplace(node_key(q, s), static_cast<int>(nodes.size()));
    if (fresh) {
      nodes.push_back({q, s});
      queue.push_back(it->second);
    }
    return it->second;
  };
  discover(qid.at(aut.initial), 0);

  struct ConsumeEdge {
    int node;
    std::string letter;
    std::string top;
    bool accept;
    std::vector<std::pair<int, std::string>> to;  // (state, pushed symbol)
  };
  struct SilentEdge {
    int node;
    std::string top;
    bool accept;
    int q_to;
  };
  std::vector<ConsumeEdge> consume_edges;
  std::vector<SilentEdge> silent_edges;
  std::set<uint32_t> drains;

  while (!queue.empty()) {
    const int ni = queue.front();
    queue.pop_front();
    const Node n = nodes[ni];
    const std::string& q = qname[n.q];
    for (const auto* table :
         {&aut.delta_push, &aut.delta_pop, &aut.delta_state}) {
      for (const auto& [key, oc] : *table) {
        if (key.state != q) continue;
        if (key.letter == kEndToken) {
          // A whole-input scan found nothing visible, so every pending
          // letter must be invisible to this state from here on.
          const uint32_t s2 = n.s | (uint32_t{1} << n.q);
          if (oc.accept) {
            drains.insert(s2);
            silent_edges.push_back({ni, key.top, true, -1});
          }
          for (const Target& t : oc.targets) {
            const int p = qid.at(t.state);
            discover(p, s2);
            silent_edges.push_back({ni, key.top, false, p});
          }
        } else {
          const uint32_t mask = blind.at(key.letter);
          if ((mask >> n.q) & 1) continue;  // the state cannot see the letter
          if (n.s & ~mask) continue;  // a fully scanned state would see it
          if (oc.accept) {
            drains.insert(n.s);
            consume_edges.push_back({ni, key.letter, key.top, true, {}});
          }
          if (!oc.targets.empty()) {
            ConsumeEdge e{ni, key.letter, key.top, false, {}};
            for (const Target& t : oc.targets) {
              const int p = qid.at(t.state);
              discover(p, n.s);
              e.to.emplace_back(p, t.push_symbol);
            }
            consume_edges.push_back(std::move(e));
          }
        }
      }
    }
    if (nodes.size() > (std::size_t{nq} << nq) + 1)
      throw ResourceLimitError("subset enumeration exceeded its bound");
  }

  auto suffix_of = [&](uint32_t s) {
    std::string text;
    for (std::size_t i = 0; i < nq; ++i)
      if ((s >> i) & 1) {
        text += '.';
        text += qname[i];
      }
    return text;
  };
  std::vector<std::string> node_name(nodes.size());
  std::map<uint32_t, std::string> drain_name;
  bool readable = true;
  for (const auto& q : qname)
    if (q.find('.') != std::string::npos) readable = false;
  if (readable) {
    std::set<std::string> used;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      node_name[i] = qname[nodes[i].q] + suffix_of(nodes[i].s);
      if (!used.insert(node_name[i]).second) readable = false;
    }
    for (uint32_t s : drains) {
      drain_name[s] = "drain" + suffix_of(s);
      if (is_reserved_token(drain_name[s]) ||
          !used.insert(drain_name[s]).second)
        readable = false;
    }
  }
  if (!readable) {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      node_name[i] = "n" + std::to_string(i);
    drain_name.clear();
    int j = 0;
    for (uint32_t s : drains) drain_name[s] = "d" + std::to_string(j++);
  }

  OrdinaryNPDA out;
  out.sig = aut.sig;
  out.stack_alphabet = aut.stack_alphabet;
  out.initial = node_name[0];
  for (const auto& nm : node_name) out.states.insert(nm);
  for (const auto& [s, nm] : drain_name) {
    out.states.insert(nm);
    out.accept_at_end.insert(nm);
  }

  auto table_for = [&](const std::string& letter) -> std::map<Key, Outcome>& {
    switch (*out.sig.class_of(letter)) {
      case LetterClass::Push:
        return out.delta_push;
      case LetterClass::Pop:
        return out.delta_pop;
      case LetterClass::State:
        return out.delta_state;
    }
    return out.delta_state;
  };
  const std::string any_symbol =
      aut.stack_alphabet.empty() ? "" : *aut.stack_alphabet.begin();
  auto pushed = [&](const std::string& letter) {
    return *out.sig.class_of(letter) == LetterClass::Push ? any_symbol
                                                          : std::string();
  };

  for (const auto& e : consume_edges) {
    Outcome& oc = table_for(e.letter)[{node_name[e.node], e.letter, e.top}];
    if (e.accept) {
      oc.targets.insert({drain_name.at(nodes[e.node].s), pushed(e.letter)});
    } else {
      for (const auto& [p, sym] : e.to) {
        const int t = node_index.at(node_key(p, nodes[e.node].s));
        oc.targets.insert({node_name[t], sym});
      }
    }
  }
  for (const auto& e : silent_edges) {
    const uint32_t s2 = nodes[e.node].s | (uint32_t{1} << nodes[e.node].q);
    const std::string target =
        e.accept ? drain_name.at(s2)
                 : node_name[node_index.at(node_key(e.q_to, s2))];
    out.silent[{node_name[e.node], e.top}].insert(target);
  }

  std::vector<std::string> tops(aut.stack_alphabet.begin(),
                                aut.stack_alphabet.end());
  tops.push_back(kBottomToken);
  for (uint32_t s : drains) {
    const std::string& d = drain_name.at(s);
    for (const auto& [letter, mask] : blind) {
      if (s & ~mask) continue;  // a scanned state still sees the letter
      for (const auto& z : tops)
        table_for(letter)[{d, letter, z}].targets.insert({d, pushed(letter)});
    }
  }
  return out;
}

bool npda_accepts(const OrdinaryNPDA& npda, const Word& w) {
  struct Conf {
    std::string state;
    std::size_t pos = 0;
    std::vector<std::string> stack;  // top at the back
  };
  auto key_of = [](const Conf& c) {
    std::string k = c.state;
    k += '\x1e';
    k += std::to_string(c.pos);
    for (const auto& g : c.stack) {
      k += '\x1f';
      k += g;
    }
    return k;
  };
  std::deque<Conf> queue;
  std::set<std::string> visited;
  queue.push_back({npda.initial, 0, {}});
  visited.insert(key_of(queue.front()));
  constexpr std::size_t kBudget = 1'000'000;
  while (!queue.empty()) {
    const Conf c = queue.front();
    queue.pop_front();
    if (c.pos == w.size() && npda.accept_at_end.count(c.state)) return true;
    if (visited.size() > kBudget)
      throw ResourceLimitError("pushdown search exceeded its budget");
    const std::string top = c.stack.empty() ? kBottomToken : c.stack.back();
    auto enqueue = [&](Conf&& next) {
      if (visited.insert(key_of(next)).second) queue.push_back(std::move(next));
    };
    auto sit = npda.silent.find({c.state, top});
    if (sit != npda.silent.end())
      for (const auto& p : sit->second) enqueue({p, c.pos, c.stack});
    if (c.pos < w.size()) {
      const std::string& a = w[c.pos];
      auto cls = npda.sig.class_of(a);
      if (!cls) continue;
      const std::map<Key, Outcome>& table =
          *cls == LetterClass::Push
              ? npda.delta_push
              : (*cls == LetterClass::Pop ? npda.delta_pop
                                          : npda.delta_state);
      auto it = table.find({c.state, a, top});
      if (it == table.end()) continue;
      for (const Target& t : it->second.targets) {
        Conf next{t.state, c.pos + 1, c.stack};
        switch (*cls) {
          case LetterClass::Push:
            next.stack.push_back(t.push_symbol);
            break;
          case LetterClass::Pop:
            if (!next.stack.empty()) next.stack.pop_back();
            break;
          case LetterClass::State:
            break;
        }
        enqueue(std::move(next));
      }
    }
  }
  return false;
}

std::string serialize_npda(const OrdinaryNPDA& npda) {
  std::ostringstream os;
  auto emit_set = [&](const char* label, const std::set<std::string>& set) {
    os << label;
    for (const auto& s : set) os << ' ' << s;
    os << '\n';
  };
  emit_set("letters.push:", npda.sig.push);
  emit_set("letters.pop:", npda.sig.pop);
  emit_set("letters.state:", npda.sig.state);
  emit_set("stack:", npda.stack_alphabet);
  emit_set("states:", npda.states);
  os << "initial: " << npda.initial << '\n';

  struct Line {
    Key key;
    Target target;
    std::string action;
  };
  std::vector<Line> lines;
  auto gather = [&](const std::map<Key, Outcome>& table, const char* action) {
    for (const auto& [key, oc] : table)
      for (const auto& t : oc.targets) lines.push_back({key, t, action});
  };
  gather(npda.delta_push, "push");
  gather(npda.delta_pop, "pop");
  gather(npda.delta_state, "none");
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    if (a.key != b.key) return a.key < b.key;
    return a.target < b.target;
  });
  for (const auto& l : lines) {
    os << "trans: " << l.key.state << ' ' << l.key.letter << ' ' << l.key.top
       << " -> " << l.target.state << ' ' << l.action;
    if (l.action == "push") os << ' ' << l.target.push_symbol;
    os << '\n';
  }
  for (const auto& [key, targets] : npda.silent)
    for (const auto& p : targets)
      os << "silent: " << key.first << ' ' << key.second << " -> " << p
         << '\n';
  for (const auto& d : npda.accept_at_end) os << "drain: " << d << '\n';
  return os.str();
}

NpdaLoadResult load_npda(const std::string& text) {
  NpdaLoadResult res;
  OrdinaryNPDA n;
  bool saw_initial = false;
  int initial_line = 0;
  auto bad = [&res](int line, std::string msg) {
    res.violations.push_back({line, std::move(msg)});
  };

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  struct TransLine {
    int line;
    Key key;
    Target target;
    std::string action;
  };
  struct SilentLine {
    int line;
    std::string state, top, target;
  };
  struct DrainLine {
    int line;
    std::string state;
  };
  std::vector<TransLine> trans;
  std::vector<SilentLine> silents;
  std::vector<DrainLine> drains;

  while (std::getline(in, line)) {
    ++lineno;
    auto cut = line.find("//");
    if (cut != std::string::npos) line.resize(cut);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    const std::string& head = toks[0];

    auto into = [&](std::set<std::string>& dst) {
      for (std::size_t i = 1; i < toks.size(); ++i) dst.insert(toks[i]);
    };
    if (head == "letters.push:") {
      into(n.sig.push);
    } else if (head == "letters.pop:") {
      into(n.sig.pop);
    } else if (head == "letters.state:") {
      into(n.sig.state);
    } else if (head == "stack:") {
      into(n.stack_alphabet);
    } else if (head == "states:") {
      into(n.states);
    } else if (head == "initial:") {
      if (toks.size() != 2) {
        bad(lineno, "initial takes exactly one state");
      } else if (saw_initial) {
        bad(lineno, "duplicate initial directive");
      } else {
        n.initial = toks[1];
        saw_initial = true;
        initial_line = lineno;
      }
    } else if (head == "trans:") {
      if (toks.size() < 6 || toks[4] != "->") {
        bad(lineno, "trans needs '<state> <letter> <top> -> <state> <action>'");
        continue;
      }
      TransLine t{lineno, {toks[1], toks[2], toks[3]}, {toks[5], ""}, ""};
      if (toks.size() == 8 && toks[6] == "push") {
        t.action = "push";
        t.target.push_symbol = toks[7];
      } else if (toks.size() == 7 &&
                 (toks[6] == "pop" || toks[6] == "none")) {
        t.action = toks[6];
      } else {
        bad(lineno, "trans action must be 'push <sym>', 'pop', or 'none'");
        continue;
      }
      trans.push_back(std::move(t));
    } else if (head == "silent:") {
      if (toks.size() != 5 || toks[3] != "->") {
        bad(lineno, "silent needs '<state> <top> -> <state>'");
        continue;
      }
      silents.push_back({lineno, toks[1], toks[2], toks[4]});
    } else if (head == "drain:") {
      if (toks.size() != 2) {
        bad(lineno, "drain takes exactly one state");
        continue;
      }
      drains.push_back({lineno, toks[1]});
    } else {
      bad(lineno, "unknown directive '" + head + "'");
    }
  }

  for (const auto& s : n.states)
    if (is_reserved_token(s)) bad(0, "reserved token used as state: " + s);
  for (const auto& s : n.stack_alphabet)
    if (is_reserved_token(s)) bad(0, "reserved token used as stack symbol: " + s);
  for (const auto& a : n.sig.all_letters())
    if (is_reserved_token(a)) bad(0, "reserved token used as letter: " + a);
  for (const auto& a : n.sig.push)
    if (n.sig.pop.count(a) || n.sig.state.count(a))
      bad(0, "letter in more than one class: " + a);
  for (const auto& a : n.sig.pop)
    if (n.sig.state.count(a)) bad(0, "letter in more than one class: " + a);

  if (!saw_initial) {
    bad(0, "initial directive missing");
  } else if (!n.states.count(n.initial)) {
    bad(initial_line, "initial state not declared: " + n.initial);
  }

  auto check_top = [&](int ln, const std::string& top) {
    if (top != kBottomToken && !n.stack_alphabet.count(top))
      bad(ln, "stack top not declared: " + top);
  };
  for (const auto& t : trans) {
    if (!n.states.count(t.key.state))
      bad(t.line, "state not declared: " + t.key.state);
    if (!n.states.count(t.target.state))
      bad(t.line, "state not declared: " + t.target.state);
    check_top(t.line, t.key.top);
    auto cls = n.sig.class_of(t.key.letter);
    if (!cls) {
      bad(t.line, "letter not declared: " + t.key.letter);
      continue;
    }
    const char* want = *cls == LetterClass::Push  ? "push"
                       : *cls == LetterClass::Pop ? "pop"
                                                  : "none";
    if (t.action != want) {
      bad(t.line, "action '" + t.action + "' does not match the letter class");
      continue;
    }
    if (t.action == "push" && !n.stack_alphabet.count(t.target.push_symbol))
      bad(t.line, "push symbol not declared: " + t.target.push_symbol);
    auto& table = *cls == LetterClass::Push  ? n.delta_push
                  : *cls == LetterClass::Pop ? n.delta_pop
                                             : n.delta_state;
    table[t.key].targets.insert(t.target);
  }
  for (const auto& s : silents) {
    if (!n.states.count(s.state)) bad(s.line, "state not declared: " + s.state);
    if (!n.states.count(s.target))
      bad(s.line, "state not declared: " + s.target);
    check_top(s.line, s.top);
    n.silent[{s.state, s.top}].insert(s.target);
  }
  for (const auto& d : drains) {
    if (!n.states.count(d.state)) bad(d.line, "state not declared: " + d.state);
    n.accept_at_end.insert(d.state);
  }

  if (res.violations.empty()) res.npda = std::move(n);
  return res;
}

}  // namespace wtl
