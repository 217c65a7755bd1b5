#include "wtl/engine.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "wtl/langlib.hpp"

namespace wtl {

Configuration initial_configuration(const Automaton& aut, const Word& w) {
  Configuration conf;
  conf.state = aut.initial;
  conf.tape = w;
  return conf;
}

std::optional<std::size_t> scan_visible(const Automaton& aut,
                                        const Configuration& conf) {
  static const std::set<std::string> kNone;
  auto it = aut.tau.find(conf.state);
  const std::set<std::string>& invisible =
      it != aut.tau.end() ? it->second : kNone;
  for (std::size_t i = conf.head; i < conf.tape.size(); ++i) {
    if (!invisible.count(conf.tape[i])) return i;
  }
  return std::nullopt;
}

StepResult step(const Automaton& aut, const Configuration& conf) {
  StepResult out;
  auto vi = scan_visible(aut, conf);
  const std::string letter = vi ? conf.tape[*vi] : kEndToken;
  const std::string top =
      conf.stack.empty() ? kBottomToken : conf.stack.front();
  const Outcome* oc = aut.lookup(conf.state, letter, top);
  if (!oc) return out;
  if (oc->accept) {
    out.accept = true;
    return out;
  }
  for (const Target& t : oc->targets) {
    Configuration next;
    next.state = t.state;
    next.tape = conf.tape;
    next.stack = conf.stack;
    if (vi) {
      next.tape.erase(next.tape.begin() + static_cast<std::ptrdiff_t>(*vi));
      next.head = aut.mode == Mode::Returning ? 0 : *vi;
      switch (*aut.sig.class_of(letter)) {
        case LetterClass::Push:
          next.stack.insert(next.stack.begin(), t.push_symbol);
          break;
        case LetterClass::Pop:
          if (!next.stack.empty()) next.stack.erase(next.stack.begin());
          break;
        case LetterClass::State:
          break;
      }
    } else {
      next.head = 0;
    }
    out.successors.push_back(std::move(next));
  }
  return out;
}

namespace {

constexpr uint32_t kMaxStates = 65535;
constexpr uint32_t kMaxLetters = 64;   // translucency sets live in one word
constexpr uint32_t kMaxStackSyms = 254;
constexpr std::size_t kMaxWordLen = 65534;

}  // namespace

struct Engine::Impl {
  Automaton aut;
  EngineLimits limits;
  bool deterministic = false;
  bool returning = true;

  std::vector<std::string> state_names;
  std::unordered_map<std::string, uint32_t> state_id;
  std::vector<std::string> letter_names;
  std::unordered_map<std::string, uint32_t> letter_id;
  std::vector<std::string> stack_names;  // index 0 is the bottom marker
  std::unordered_map<std::string, uint32_t> stack_id;
  std::vector<uint64_t> tau_mask;
  std::vector<uint8_t> cls;  // 0 push, 1 pop, 2 state-only
  uint32_t nl = 0;
  uint32_t ng = 1;

  // Outcome entries addressed through a dense (state, letter-or-end, top)
  // table; slot value 0 means the machine has no move there. Successor
  // encoding: state * ng + pushed-symbol (0 when nothing is pushed).
  struct Entry {
    bool accept = false;
    std::vector<uint32_t> targets;
  };
  std::vector<Entry> entries;
  std::vector<uint32_t> slot;

  // A configuration with everything interned. The stack keeps its top at
  // the back; tape ids at or above nl stand for letters outside the
  // machine's alphabet, which are always visible and never consumable.
  struct IConf {
    uint32_t state = 0;
    uint32_t head = 0;
    std::vector<uint8_t> tape;
    std::vector<uint8_t> stack;
  };

  struct RunCtx {
    std::vector<uint8_t> tape0;
    std::vector<std::string> ext;  // spellings of out-of-alphabet letters
  };

  struct Probe {
    std::optional<uint32_t> vi;
    uint32_t lid = 0;  // nl when the endmarker acts
    uint8_t top = 0;
    uint32_t entry = 0;
  };

  Impl(Automaton a, EngineLimits lim) : aut(std::move(a)), limits(lim) {
    deterministic = is_deterministic(aut);
    returning = aut.mode == Mode::Returning;

    if (aut.states.size() > kMaxStates)
      throw ResourceLimitError("too many states to compile");
    for (const auto& s : aut.states) {
      state_id.emplace(s, static_cast<uint32_t>(state_names.size()));
      state_names.push_back(s);
    }

    std::set<std::string> letters = aut.sig.all_letters();
    if (letters.size() > kMaxLetters)
      throw ResourceLimitError("too many letters to compile");
    for (const auto& l : letters) {
      letter_id.emplace(l, static_cast<uint32_t>(letter_names.size()));
      letter_names.push_back(l);
    }
    nl = static_cast<uint32_t>(letter_names.size());

    if (aut.stack_alphabet.size() > kMaxStackSyms)
      throw ResourceLimitError("too many stack symbols to compile");
    stack_names.push_back(kBottomToken);
    stack_id.emplace(kBottomToken, 0u);
    for (const auto& g : aut.stack_alphabet) {
      stack_id.emplace(g, static_cast<uint32_t>(stack_names.size()));
      stack_names.push_back(g);
    }
    ng = static_cast<uint32_t>(stack_names.size());

    tau_mask.assign(state_names.size(), 0);
    for (const auto& [st, set] : aut.tau) {
      uint64_t m = 0;
      for (const auto& l : set) m |= uint64_t{1} << letter_id.at(l);
      tau_mask[state_id.at(st)] = m;
    }

    cls.assign(nl, 2);
    for (const auto& l : aut.sig.push) cls[letter_id.at(l)] = 0;
    for (const auto& l : aut.sig.pop) cls[letter_id.at(l)] = 1;

    entries.emplace_back();  // index 0 stays the no-move sentinel
    slot.assign(static_cast<std::size_t>(state_names.size()) * (nl + 1) * ng,
                0);
    auto add_table = [&](const std::map<Key, Outcome>& table) {
      for (const auto& [key, oc] : table) {
        Entry e;
        e.accept = oc.accept;
        for (const Target& t : oc.targets) {
          uint32_t ps =
              t.push_symbol.empty() ? 0 : stack_id.at(t.push_symbol);
          e.targets.push_back(state_id.at(t.state) * ng + ps);
        }
        std::sort(e.targets.begin(), e.targets.end());
        uint32_t lid = key.letter == kEndToken ? nl : letter_id.at(key.letter);
        std::size_t idx = slot_index(state_id.at(key.state), lid,
                                     stack_id.at(key.top));
        slot[idx] = static_cast<uint32_t>(entries.size());
        entries.push_back(std::move(e));
      }
    };
    add_table(aut.delta_push);
    add_table(aut.delta_pop);
    add_table(aut.delta_state);
  }

  std::size_t slot_index(uint32_t st, uint32_t lid, uint32_t top) const {
    return (static_cast<std::size_t>(st) * (nl + 1) + lid) * ng + top;
  }

  RunCtx intern_word(const Word& w) const {
    if (w.size() > kMaxWordLen)
      throw ResourceLimitError("word too long to run");
    RunCtx ctx;
    ctx.tape0.reserve(w.size());
    std::unordered_map<std::string, uint32_t> extra;
    for (const auto& tok : w) {
      uint32_t id;
      auto it = letter_id.find(tok);
      if (it != letter_id.end()) {
        id = it->second;
      } else {
        auto [eit, fresh] =
            extra.emplace(tok, nl + static_cast<uint32_t>(ctx.ext.size()));
        if (fresh) ctx.ext.push_back(tok);
        id = eit->second;
      }
      if (id >= 255)
        throw ResourceLimitError("too many distinct letters in the word");
      ctx.tape0.push_back(static_cast<uint8_t>(id));
    }
    return ctx;
  }

  std::optional<uint32_t> visible(const IConf& c) const {
    uint64_t mask = tau_mask[c.state];
    for (uint32_t i = c.head; i < c.tape.size(); ++i) {
      uint8_t id = c.tape[i];
      if (id >= nl || !((mask >> id) & 1)) return i;
    }
    return std::nullopt;
  }

  Probe probe(const IConf& c) const {
    Probe p;
    p.vi = visible(c);
    p.top = c.stack.empty() ? 0 : c.stack.back();
    if (p.vi) {
      p.lid = c.tape[*p.vi];
      if (p.lid >= nl) return p;  // entry stays 0: no move on that letter
    } else {
      p.lid = nl;
    }
    p.entry = slot[slot_index(c.state, p.lid, p.top)];
    return p;
  }

  IConf apply(const IConf& c, const Probe& p, uint32_t enc) const {
    IConf n;
    n.state = enc / ng;
    n.tape = c.tape;
    n.stack = c.stack;
    if (p.vi) {
      n.tape.erase(n.tape.begin() + *p.vi);
      n.head = returning ? 0 : *p.vi;
      switch (cls[p.lid]) {
        case 0:
          n.stack.push_back(static_cast<uint8_t>(enc % ng));
          break;
        case 1:
          if (!n.stack.empty()) n.stack.pop_back();
          break;
        default:
          break;
      }
    } else {
      n.head = 0;
    }
    return n;
  }

  std::string pack(const IConf& c) const {
    std::string key;
    key.reserve(4 + c.tape.size() + 1 + c.stack.size());
    key.push_back(static_cast<char>(c.state & 0xFF));
    key.push_back(static_cast<char>(c.state >> 8));
    key.push_back(static_cast<char>(c.head & 0xFF));
    key.push_back(static_cast<char>(c.head >> 8));
    key.append(c.tape.begin(), c.tape.end());
    key.push_back('\xFF');
    key.append(c.stack.begin(), c.stack.end());
    return key;
  }

  std::string letter_name(uint32_t id, const RunCtx& ctx) const {
    return id < nl ? letter_names[id] : ctx.ext[id - nl];
  }

  Word tape_word(const std::vector<uint8_t>& tape, const RunCtx& ctx) const {
    Word w;
    w.reserve(tape.size());
    for (uint8_t id : tape) w.push_back(letter_name(id, ctx));
    return w;
  }

  std::vector<std::string> stack_word(const std::vector<uint8_t>& st) const {
    std::vector<std::string> out;
    out.reserve(st.size());
    for (auto it = st.rbegin(); it != st.rend(); ++it)
      out.push_back(stack_names[*it]);
    return out;
  }

  Step make_step(const IConf& from, const Probe& p, bool accept, uint32_t enc,
                 const IConf& after, const RunCtx& ctx) const {
    Step s;
    s.from_state = state_names[from.state];
    s.consumed = p.vi ? letter_name(p.lid, ctx) : kEndToken;
    s.stack_top_seen =
        from.stack.empty() ? kBottomToken : stack_names[from.stack.back()];
    if (!p.vi) {
      s.action = "wrap";
    } else {
      switch (cls[p.lid]) {
        case 0:
          s.action = "push";
          break;
        case 1:
          s.action = "pop";
          break;
        default:
          s.action = "none";
          break;
      }
    }
    if (accept) {
      s.to_accept = true;
      s.tape_after = tape_word(after.tape, ctx);
      s.head_after = after.head;
      s.stack_after = stack_word(after.stack);
    } else {
      if (s.action == "push") s.push_symbol = stack_names[enc % ng];
      s.to_state = state_names[enc / ng];
      s.tape_after = tape_word(after.tape, ctx);
      s.head_after = after.head;
      s.stack_after = stack_word(after.stack);
    }
    return s;
  }

  // The configuration an accepting move leaves behind: the letter is
  // consumed but the stack is never touched.
  IConf accept_after(const IConf& c, const Probe& p) const {
    IConf n = c;
    if (p.vi) {
      n.tape.erase(n.tape.begin() + *p.vi);
      n.head = returning ? 0 : *p.vi;
    } else {
      n.head = 0;
    }
    return n;
  }

  // Breadth-first search over reachable configurations. Returns a shortest
  // accepting run when one exists; with want_trace false the trace stays
  // empty and only acceptance is decided.
  std::optional<std::vector<Step>> search(const Word& w,
                                          bool want_trace) const {
    RunCtx ctx = intern_word(w);
    struct EdgeIn {
      uint32_t parent = 0;
      uint32_t enc = 0;
      Probe p;
    };
    std::vector<IConf> nodes;
    std::vector<EdgeIn> meta;
    std::unordered_set<std::string> visited;

    IConf start;
    start.state = state_id.at(aut.initial);
    start.tape = ctx.tape0;
    nodes.push_back(start);
    meta.emplace_back();
    visited.insert(pack(start));

    for (uint32_t qi = 0; qi < nodes.size(); ++qi) {
      const IConf c = nodes[qi];  // copy: nodes grows below
      Probe p = probe(c);
      if (p.entry == 0) continue;
      const Entry& e = entries[p.entry];
      if (e.accept) {
        std::vector<Step> steps;
        if (want_trace) {
          std::vector<uint32_t> path;
          for (uint32_t i = qi; i != 0; i = meta[i].parent) path.push_back(i);
          std::reverse(path.begin(), path.end());
          for (uint32_t i : path) {
            steps.push_back(make_step(nodes[meta[i].parent], meta[i].p, false,
                                      meta[i].enc, nodes[i], ctx));
          }
          steps.push_back(
              make_step(c, p, true, 0, accept_after(c, p), ctx));
        }
        return steps;
      }
      for (uint32_t enc : e.targets) {
        IConf child = apply(c, p, enc);
        std::string key = pack(child);
        if (!visited.insert(std::move(key)).second) continue;
        if (nodes.size() >= limits.max_configurations)
          throw ResourceLimitError("configuration limit exceeded");
        nodes.push_back(std::move(child));
        meta.push_back({qi, enc, p});
      }
    }
    return std::nullopt;
  }

  Verdict run(const Word& w) const {
    if (!deterministic)
      throw std::invalid_argument(
          "deterministic run requested on a nondeterministic machine");
    RunCtx ctx = intern_word(w);
    Verdict v;
    IConf c;
    c.state = state_id.at(aut.initial);
    c.tape = ctx.tape0;
    // Between consumptions only the state and head can change, so a repeated
    // (state, head) pair certifies an endless endmarker cycle.
    std::set<uint64_t> seen;
    for (;;) {
      uint64_t key = (uint64_t{c.state} << 32) | c.head;
      if (!seen.insert(key).second) {
        v.kind = VerdictKind::RejectLoop;
        return v;
      }
      Probe p = probe(c);
      if (p.entry == 0) {
        v.kind = VerdictKind::RejectUndefined;
        return v;
      }
      const Entry& e = entries[p.entry];
      if (e.accept) {
        v.trace.push_back(
            make_step(c, p, true, 0, accept_after(c, p), ctx));
        v.kind = VerdictKind::Accept;
        return v;
      }
      IConf next = apply(c, p, e.targets.front());
      v.trace.push_back(make_step(c, p, false, e.targets.front(), next, ctx));
      if (p.vi) seen.clear();
      c = std::move(next);
    }
  }
};

Engine::Engine(Automaton aut, EngineLimits limits)
    : impl_(std::make_unique<Impl>(std::move(aut), limits)) {}

Engine::~Engine() = default;
Engine::Engine(Engine&&) noexcept = default;
Engine& Engine::operator=(Engine&&) noexcept = default;

const Automaton& Engine::automaton() const { return impl_->aut; }

bool Engine::accepts(const Word& w) const {
  return impl_->search(w, false).has_value();
}

std::optional<std::vector<Step>> Engine::accepting_trace(const Word& w) const {
  return impl_->search(w, true);
}

Verdict Engine::run_deterministic(const Word& w) const {
  return impl_->run(w);
}

std::vector<Word> Engine::enumerate(int max_len) const {
  std::set<std::string> letters = impl_->aut.sig.all_letters();
  std::vector<std::string> alpha(letters.begin(), letters.end());
  std::vector<Word> out;
  for (const Word& w : all_words(alpha, max_len)) {
    if (accepts(w)) out.push_back(w);
  }
  return out;
}

bool accepts(const Automaton& aut, const Word& w) {
  return Engine(aut).accepts(w);
}

std::optional<std::vector<Step>> accepting_trace(const Automaton& aut,
                                                 const Word& w) {
  return Engine(aut).accepting_trace(w);
}

Verdict run_deterministic(const Automaton& aut, const Word& w) {
  return Engine(aut).run_deterministic(w);
}

std::vector<Word> enumerate(const Automaton& aut, int max_len) {
  return Engine(aut).enumerate(max_len);
}

std::string render_step(std::size_t index, const Step& s) {
  std::ostringstream os;
  os << index << ": " << s.from_state << " --" << s.consumed << "/"
     << s.stack_top_seen << "--> " << s.action;
  if (!s.push_symbol.empty()) os << " " << s.push_symbol;
  os << " " << (s.to_accept ? "ACCEPT" : s.to_state);
  os << " | tape=\"";
  for (std::size_t i = 0; i < s.tape_after.size(); ++i) {
    if (i) os << " ";
    if (i == s.head_after) os << "^";
    os << s.tape_after[i];
  }
  if (s.head_after >= s.tape_after.size()) {
    if (!s.tape_after.empty()) os << " ";
    os << "^";
  }
  os << "\" stack=\"";
  for (const auto& g : s.stack_after) os << g << " ";
  os << "_\"";
  return os.str();
}

std::string render_verdict(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Accept:
      return "ACCEPT";
    case VerdictKind::RejectUndefined:
      return "REJECT(undefined)";
    case VerdictKind::RejectLoop:
      return "REJECT(loop)";
  }
  return "";
}

}  // namespace wtl
