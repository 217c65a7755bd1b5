#include "wtl/decision.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wtl/engine.hpp"
#include "wtl/langlib.hpp"

namespace wtl {

namespace {

std::string join_word(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += w[i];
  }
  return out;
}

std::string fresh_name(std::string base, const std::set<std::string>& used) {
  while (used.count(base)) base += '\'';
  return base;
}

std::set<std::string> generating_symbols(const CFG& cfg) {
  std::set<std::string> gen(cfg.terminals.begin(), cfg.terminals.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : cfg.productions) {
      if (gen.count(p.lhs)) continue;
      bool all = true;
      for (const auto& s : p.rhs)
        if (!gen.count(s)) {
          all = false;
          break;
        }
      if (all) {
        gen.insert(p.lhs);
        changed = true;
      }
    }
  }
  return gen;
}

}  // namespace

std::vector<std::string> cfg_validate(const CFG& cfg) {
  std::vector<std::string> problems;
  for (const auto& n : cfg.nonterminals)
    if (cfg.terminals.count(n))
      problems.push_back("symbol declared both terminal and nonterminal: " + n);
  if (!cfg.nonterminals.count(cfg.start))
    problems.push_back("start symbol is not a declared nonterminal: " +
                       cfg.start);
  for (const auto& p : cfg.productions) {
    if (!cfg.nonterminals.count(p.lhs))
      problems.push_back("production left side is not a declared nonterminal: " +
                         p.lhs);
    for (const auto& s : p.rhs)
      if (!cfg.nonterminals.count(s) && !cfg.terminals.count(s))
        problems.push_back("production references an undeclared symbol: " + s);
  }
  return problems;
}

CFG npda_to_cfg(const OrdinaryNPDA& npda) {
  const std::vector<std::string> states(npda.states.begin(),
                                        npda.states.end());
  std::map<std::string, int> sid;
  for (int i = 0; i < static_cast<int>(states.size()); ++i) sid[states[i]] = i;

  std::vector<std::string> tops;
  tops.push_back(kBottomToken);
  tops.insert(tops.end(), npda.stack_alphabet.begin(),
              npda.stack_alphabet.end());
  std::map<std::string, int> gid;
  for (int i = 0; i < static_cast<int>(tops.size()); ++i) gid[tops[i]] = i;

  const int n = static_cast<int>(states.size());
  const int ng = static_cast<int>(tops.size());
  if (static_cast<long long>(n) * n * ng > 4'000'000)
    throw ResourceLimitError(
        "state and stack spaces too large for the grammar build");

  // One internal move per table entry.  Popping the bottom marker through an
  // ordinary pop letter keeps it; the clearing pops added for drain states
  // remove it for real, which is what makes the stack emptiable exactly when
  // a drain has consumed the whole input.
  struct Move {
    enum Kind { Pop, Keep, Push } kind;
    int q, z, p, x;
    std::string in;  // empty for a silent move
  };
  std::vector<Move> moves;
  auto collect = [&](const std::map<Key, Outcome>& table, Move::Kind kind) {
    for (const auto& [key, oc] : table)
      for (const auto& t : oc.targets) {
        Move m;
        m.kind = kind;
        m.q = sid.at(key.state);
        m.z = gid.at(key.top);
        m.p = sid.at(t.state);
        m.x = kind == Move::Push ? gid.at(t.push_symbol) : -1;
        m.in = key.letter;
        if (kind == Move::Pop && m.z == 0) m.kind = Move::Keep;
        moves.push_back(std::move(m));
      }
  };
  collect(npda.delta_push, Move::Push);
  collect(npda.delta_pop, Move::Pop);
  collect(npda.delta_state, Move::Keep);
  for (const auto& [key, targets] : npda.silent)
    for (const auto& p : targets)
      moves.push_back(
          {Move::Keep, sid.at(key.first), gid.at(key.second), sid.at(p), -1,
           ""});
  for (const auto& d : npda.accept_at_end)
    for (int z = 0; z < ng; ++z)
      moves.push_back({Move::Pop, sid.at(d), z, sid.at(d), -1, ""});

  // gen(q, z, r): some word moves the machine from q with z on top to r with
  // z popped.  Saturated with plain passes; the move list is small for every
  // machine this build handles.
  std::vector<std::uint8_t> gen(static_cast<std::size_t>(n) * ng * n, 0);
  auto gref = [&](int q, int z, int r) -> std::uint8_t& {
    return gen[(static_cast<std::size_t>(q) * ng + z) * n + r];
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& m : moves) {
      switch (m.kind) {
        case Move::Pop:
          if (!gref(m.q, m.z, m.p)) {
            gref(m.q, m.z, m.p) = 1;
            changed = true;
          }
          break;
        case Move::Keep:
          for (int r = 0; r < n; ++r)
            if (gref(m.p, m.z, r) && !gref(m.q, m.z, r)) {
              gref(m.q, m.z, r) = 1;
              changed = true;
            }
          break;
        case Move::Push:
          for (int s = 0; s < n; ++s) {
            if (!gref(m.p, m.x, s)) continue;
            for (int r = 0; r < n; ++r)
              if (gref(s, m.z, r) && !gref(m.q, m.z, r)) {
                gref(m.q, m.z, r) = 1;
                changed = true;
              }
          }
          break;
      }
    }
  }

  std::vector<std::vector<int>> by_qz(static_cast<std::size_t>(n) * ng);
  for (int i = 0; i < static_cast<int>(moves.size()); ++i)
    by_qz[static_cast<std::size_t>(moves[i].q) * ng + moves[i].z].push_back(i);

  const int q0 = sid.at(npda.initial);
  std::vector<std::uint8_t> reach(static_cast<std::size_t>(n) * ng * n, 0);
  auto rref = [&](int q, int z, int r) -> std::uint8_t& {
    return reach[(static_cast<std::size_t>(q) * ng + z) * n + r];
  };
  std::vector<std::array<int, 3>> work;
  auto visit = [&](int q, int z, int r) {
    if (!gref(q, z, r) || rref(q, z, r)) return;
    rref(q, z, r) = 1;
    work.push_back({q, z, r});
  };
  for (int p = 0; p < n; ++p) visit(q0, 0, p);
  while (!work.empty()) {
    auto [q, z, r] = work.back();
    work.pop_back();
    for (int i : by_qz[static_cast<std::size_t>(q) * ng + z]) {
      const Move& m = moves[i];
      if (m.kind == Move::Keep) {
        if (gref(m.p, z, r)) visit(m.p, z, r);
      } else if (m.kind == Move::Push) {
        for (int s = 0; s < n; ++s)
          if (gref(m.p, m.x, s) && gref(s, z, r)) {
            visit(m.p, m.x, s);
            visit(s, z, r);
          }
      }
    }
  }

  CFG cfg;
  for (const auto& l : npda.sig.all_letters()) cfg.terminals.insert(l);
  cfg.start = fresh_name("[start]", cfg.terminals);
  cfg.nonterminals.insert(cfg.start);
  auto nt_name = [&](int q, int z, int r) {
    return "[" + states[q] + " " + tops[z] + " " + states[r] + "]";
  };
  constexpr std::size_t kProductionCap = 5'000'000;
  auto add_prod = [&](std::string lhs, std::vector<std::string> rhs) {
    if (cfg.productions.size() >= kProductionCap)
      throw ResourceLimitError("grammar too large to build");
    cfg.productions.push_back({std::move(lhs), std::move(rhs)});
  };

  for (int q = 0; q < n; ++q)
    for (int z = 0; z < ng; ++z)
      for (int r = 0; r < n; ++r)
        if (rref(q, z, r)) cfg.nonterminals.insert(nt_name(q, z, r));

  for (int p = 0; p < n; ++p)
    if (rref(q0, 0, p)) add_prod(cfg.start, {nt_name(q0, 0, p)});

  for (int q = 0; q < n; ++q)
    for (int z = 0; z < ng; ++z)
      for (int r = 0; r < n; ++r) {
        if (!rref(q, z, r)) continue;
        const std::string lhs = nt_name(q, z, r);
        for (int i : by_qz[static_cast<std::size_t>(q) * ng + z]) {
          const Move& m = moves[i];
          std::vector<std::string> prefix;
          if (!m.in.empty()) prefix.push_back(m.in);
          switch (m.kind) {
            case Move::Pop:
              if (m.p == r) add_prod(lhs, prefix);
              break;
            case Move::Keep:
              if (gref(m.p, z, r)) {
                auto rhs = prefix;
                rhs.push_back(nt_name(m.p, z, r));
                add_prod(lhs, std::move(rhs));
              }
              break;
            case Move::Push:
              for (int s = 0; s < n; ++s) {
                if (!gref(m.p, m.x, s) || !gref(s, z, r)) continue;
                auto rhs = prefix;
                rhs.push_back(nt_name(m.p, m.x, s));
                rhs.push_back(nt_name(s, z, r));
                add_prod(lhs, std::move(rhs));
              }
              break;
          }
        }
      }
  return cfg;
}

bool cfg_empty(const CFG& cfg) {
  return generating_symbols(cfg).count(cfg.start) == 0;
}

CnfGrammar to_cnf(const CFG& cfg) {
  CnfGrammar out;
  std::set<std::string> used = cfg.nonterminals;
  used.insert(cfg.terminals.begin(), cfg.terminals.end());
  std::set<std::string> nts = cfg.nonterminals;
  std::map<std::string, std::string>& origin = out.origin;
  for (const auto& nt : nts) origin[nt] = nt;

  std::vector<Production> prods = cfg.productions;
  const std::string s0 = fresh_name("[cnf start]", used);
  used.insert(s0);
  nts.insert(s0);
  origin[s0] = cfg.start;
  prods.push_back({s0, {cfg.start}});

  // Terminals inside long right-hand sides get literal wrappers.
  std::map<std::string, std::string> literal;
  std::vector<Production> literal_prods;
  for (auto& p : prods) {
    if (p.rhs.size() < 2) continue;
    for (auto& s : p.rhs) {
      if (!cfg.terminals.count(s)) continue;
      auto it = literal.find(s);
      if (it == literal.end()) {
        std::string nm = fresh_name("[lit " + s + "]", used);
        used.insert(nm);
        nts.insert(nm);
        origin[nm] = s;
        literal[s] = nm;
        literal_prods.push_back({nm, {s}});
        it = literal.find(s);
      }
      s = it->second;
    }
  }
  prods.insert(prods.end(), literal_prods.begin(), literal_prods.end());

  // Right-hand sides longer than two become chains.
  std::vector<Production> binned;
  int seq = 0;
  for (const auto& p : prods) {
    if (p.rhs.size() <= 2) {
      binned.push_back(p);
      continue;
    }
    std::string prev = p.lhs;
    const std::string& from = origin.at(p.lhs);
    for (std::size_t i = 0; i + 2 < p.rhs.size(); ++i) {
      std::string c = fresh_name("[seq " + std::to_string(seq++) + "]", used);
      used.insert(c);
      nts.insert(c);
      origin[c] = from;
      binned.push_back({prev, {p.rhs[i], c}});
      prev = std::move(c);
    }
    binned.push_back({prev, {p.rhs[p.rhs.size() - 2], p.rhs.back()}});
  }
  prods = std::move(binned);

  // Empty-word elimination.  Whether the start derives the empty word is
  // remembered on the side; the grammar itself keeps no empty productions.
  std::set<std::string> nullable;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : prods) {
      if (nullable.count(p.lhs)) continue;
      bool all = true;
      for (const auto& s : p.rhs)
        if (!nullable.count(s)) {
          all = false;
          break;
        }
      if (all) {
        nullable.insert(p.lhs);
        changed = true;
      }
    }
  }
  out.derives_epsilon = nullable.count(s0) > 0;
  std::set<std::pair<std::string, std::vector<std::string>>> seen;
  std::vector<Production> unerased;
  for (const auto& p : prods) {
    const std::size_t k = p.rhs.size();
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      std::vector<std::string> rhs;
      bool ok = true;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask & (1u << i))
          rhs.push_back(p.rhs[i]);
        else if (!nullable.count(p.rhs[i])) {
          ok = false;
          break;
        }
      }
      if (ok && seen.insert({p.lhs, rhs}).second)
        unerased.push_back({p.lhs, std::move(rhs)});
    }
  }
  prods = std::move(unerased);

  // Unit-chain elimination.
  std::map<std::string, std::set<std::string>> unit;
  for (const auto& nt : nts) unit[nt].insert(nt);
  changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : prods) {
      if (p.rhs.size() != 1 || !nts.count(p.rhs[0])) continue;
      for (const auto& b : unit[p.rhs[0]])
        if (unit[p.lhs].insert(b).second) changed = true;
    }
  }
  std::vector<Production> flat;
  seen.clear();
  for (const auto& [a, bs] : unit)
    for (const auto& b : bs)
      for (const auto& p : prods) {
        if (p.lhs != b) continue;
        if (p.rhs.size() == 1 && nts.count(p.rhs[0])) continue;
        if (seen.insert({a, p.rhs}).second) flat.push_back({a, p.rhs});
      }
  prods = std::move(flat);

  // Keep only symbols that both generate a word and are reachable from the
  // new start.
  CFG scratch{nts, cfg.terminals, s0, prods};
  std::set<std::string> gen = generating_symbols(scratch);
  std::vector<Production> kept;
  for (const auto& p : prods) {
    if (!gen.count(p.lhs)) continue;
    bool all = true;
    for (const auto& s : p.rhs)
      if (!cfg.terminals.count(s) && !gen.count(s)) {
        all = false;
        break;
      }
    if (all) kept.push_back(p);
  }
  std::set<std::string> reachable{s0};
  changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : kept) {
      if (!reachable.count(p.lhs)) continue;
      for (const auto& s : p.rhs)
        if (nts.count(s) && reachable.insert(s).second) changed = true;
    }
  }

  out.grammar.terminals = cfg.terminals;
  out.grammar.start = s0;
  out.grammar.nonterminals = {s0};
  for (const auto& p : kept) {
    if (!reachable.count(p.lhs)) continue;
    out.grammar.productions.push_back(p);
    out.grammar.nonterminals.insert(p.lhs);
    for (const auto& s : p.rhs)
      if (nts.count(s)) out.grammar.nonterminals.insert(s);
  }
  for (auto it = origin.begin(); it != origin.end();)
    it = out.grammar.nonterminals.count(it->first) ? std::next(it)
                                                   : origin.erase(it);
  return out;
}

bool cfg_finite(const CFG& cfg, std::vector<std::string>* cycle_out) {
  CnfGrammar cnf = to_cnf(cfg);
  std::map<std::string, std::set<std::string>> adj;
  for (const auto& p : cnf.grammar.productions)
    for (const auto& s : p.rhs)
      if (cnf.grammar.nonterminals.count(s)) adj[p.lhs].insert(s);

  std::map<std::string, int> color;  // 0 new, 1 on the path, 2 done
  std::vector<std::string> path;
  std::function<bool(const std::string&)> dfs = [&](const std::string& v) {
    color[v] = 1;
    path.push_back(v);
    for (const auto& w : adj[v]) {
      if (color[w] == 2) continue;
      if (color[w] == 1) {
        if (cycle_out) {
          cycle_out->clear();
          auto it = std::find(path.begin(), path.end(), w);
          for (; it != path.end(); ++it) {
            const std::string named =
                cnf.origin.count(*it) ? cnf.origin.at(*it) : *it;
            if (cycle_out->empty() || cycle_out->back() != named)
              cycle_out->push_back(named);
          }
        }
        return true;
      }
      if (dfs(w)) return true;
    }
    path.pop_back();
    color[v] = 2;
    return false;
  };
  for (const auto& nt : cnf.grammar.nonterminals)
    if (color[nt] == 0 && dfs(nt)) return false;
  return true;
}

std::optional<Word> cfg_shortest_word(const CFG& cfg) {
  struct Best {
    std::size_t len;
    Word word;
    std::string serialized;
  };
  std::map<std::string, Best> best;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : cfg.productions) {
      std::size_t len = 0;
      Word w;
      bool known = true;
      for (const auto& s : p.rhs) {
        if (cfg.terminals.count(s)) {
          ++len;
          w.push_back(s);
          continue;
        }
        auto it = best.find(s);
        if (it == best.end()) {
          known = false;
          break;
        }
        len += it->second.len;
        w.insert(w.end(), it->second.word.begin(), it->second.word.end());
      }
      if (!known) continue;
      std::string serialized = join_word(w);
      auto it = best.find(p.lhs);
      if (it == best.end() || len < it->second.len ||
          (len == it->second.len && serialized < it->second.serialized)) {
        best[p.lhs] = {len, std::move(w), std::move(serialized)};
        changed = true;
      }
    }
  }
  auto it = best.find(cfg.start);
  if (it == best.end()) return std::nullopt;
  return it->second.word;
}

std::set<Word> cfg_words_upto(const CFG& cfg, int max_len) {
  std::set<Word> none;
  if (max_len < 0) return none;
  constexpr std::size_t kWordCap = 2'000'000;
  std::map<std::string, std::set<Word>> sets;
  std::size_t total = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& p : cfg.productions) {
      std::set<Word> acc{Word{}};
      bool alive = true;
      for (const auto& s : p.rhs) {
        std::set<Word> next;
        if (cfg.terminals.count(s)) {
          for (const auto& w : acc)
            if (static_cast<int>(w.size()) + 1 <= max_len) {
              Word v = w;
              v.push_back(s);
              next.insert(std::move(v));
            }
        } else {
          auto it = sets.find(s);
          if (it == sets.end()) {
            alive = false;
            break;
          }
          for (const auto& w : acc)
            for (const auto& u : it->second) {
              if (static_cast<int>(w.size() + u.size()) > max_len) continue;
              Word v = w;
              v.insert(v.end(), u.begin(), u.end());
              next.insert(std::move(v));
            }
        }
        acc = std::move(next);
        if (acc.empty()) {
          alive = false;
          break;
        }
      }
      if (!alive) continue;
      auto& dst = sets[p.lhs];
      for (const auto& w : acc)
        if (dst.insert(w).second) {
          changed = true;
          if (++total > kWordCap)
            throw ResourceLimitError(
                "bounded grammar enumeration exceeded its cap");
        }
    }
  }
  auto it = sets.find(cfg.start);
  return it == sets.end() ? none : it->second;
}

namespace {

const char* question_name(Question q) {
  switch (q) {
    case Question::Emptiness:
      return "emptiness";
    case Question::Finiteness:
      return "finiteness";
    case Question::UniversalityBounded:
      return "universality_bounded";
    case Question::InclusionBounded:
      return "inclusion_bounded";
    case Question::EquivalenceBounded:
      return "equivalence_bounded";
  }
  return "unknown";
}

std::vector<std::string> letters_of(const Automaton& aut) {
  auto set = aut.sig.all_letters();
  return {set.begin(), set.end()};
}

std::vector<std::string> joint_letters(const Automaton& a,
                                       const Automaton& b) {
  auto set = a.sig.all_letters();
  auto other = b.sig.all_letters();
  set.insert(other.begin(), other.end());
  return {set.begin(), set.end()};
}

CFG derived_grammar(const Automaton& aut, const char* question) {
  if (aut.mode != Mode::Returning)
    throw std::invalid_argument(std::string(question) +
                                " needs a returning-mode machine");
  return npda_to_cfg(letter_equivalent_npda(aut));
}

}  // namespace

std::string DecisionReport::to_json() const {
  nlohmann::ordered_json j;
  j["question"] = question_name(question);
  if (answer)
    j["answer"] = *answer;
  else
    j["answer"] = "unknown";
  if (witness)
    j["witness"] = join_word(*witness);
  else
    j["witness"] = nullptr;
  if (bound)
    j["bound"] = *bound;
  else
    j["bound"] = nullptr;
  return j.dump(2);
}

int DecisionReport::exit_code() const {
  if (!answer) return 3;
  return *answer ? 0 : 1;
}

DecisionReport emptiness(const Automaton& aut) {
  CFG cfg = derived_grammar(aut, "the emptiness check");
  DecisionReport report{Question::Emptiness, cfg_empty(cfg), std::nullopt,
                        std::nullopt};
  if (!*report.answer) {
    auto w = cfg_shortest_word(cfg);
    if (!w) throw std::logic_error("nonempty grammar without a shortest word");
    // The simulation reads letters in consumption order, so each of its
    // words replays verbatim on the source machine.
    Engine engine(aut);
    if (!engine.accepts(*w))
      throw std::logic_error("witness failed replay on the source machine");
    report.witness = std::move(*w);
  }
  return report;
}

DecisionReport finiteness(const Automaton& aut) {
  CFG cfg = derived_grammar(aut, "the finiteness check");
  return {Question::Finiteness, cfg_finite(cfg), std::nullopt, std::nullopt};
}

bool complement_accepts(const Automaton& aut, const Word& word) {
  Engine engine(aut);
  return engine.run_deterministic(word).kind != VerdictKind::Accept;
}

DecisionReport bounded_universality(const Automaton& aut, int bound) {
  if (bound < 0) throw std::invalid_argument("bound must be nonnegative");
  DecisionReport report{Question::UniversalityBounded, std::nullopt,
                        std::nullopt, bound};
  Engine engine(aut);
  const bool det = is_deterministic(aut);
  for (const Word& w : all_words(letters_of(aut), bound)) {
    const bool rejected =
        det ? engine.run_deterministic(w).kind != VerdictKind::Accept
            : !engine.accepts(w);
    if (rejected) {
      report.answer = false;
      report.witness = w;
      break;
    }
  }
  return report;
}

DecisionReport bounded_inclusion(const Automaton& a, const Automaton& b,
                                 int bound) {
  if (bound < 0) throw std::invalid_argument("bound must be nonnegative");
  DecisionReport report{Question::InclusionBounded, std::nullopt, std::nullopt,
                        bound};
  Engine ea(a);
  Engine eb(b);
  for (const Word& w : all_words(joint_letters(a, b), bound)) {
    if (ea.accepts(w) && !eb.accepts(w)) {
      report.answer = false;
      report.witness = w;
      break;
    }
  }
  return report;
}

DecisionReport bounded_equivalence(const Automaton& a, const Automaton& b,
                                   int bound) {
  if (a.mode != b.mode)
    throw std::invalid_argument("machines disagree on head mode");
  if (bound < 0) throw std::invalid_argument("bound must be nonnegative");
  DecisionReport report{Question::EquivalenceBounded, std::nullopt,
                        std::nullopt, bound};
  Engine ea(a);
  Engine eb(b);
  for (const Word& w : all_words(joint_letters(a, b), bound)) {
    if (ea.accepts(w) != eb.accepts(w)) {
      report.answer = false;
      report.witness = w;
      break;
    }
  }
  return report;
}

}  // namespace wtl
