#include "wtl/valc.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "wtl/engine.hpp"

namespace wtl {

namespace {

// Decorations reserved by the encoding. Plain tokens come straight from the
// tape machine, so its tokens may not collide with these.
constexpr const char* kHash = "#";
constexpr const char* kCut = "c";
constexpr const char* kJunk = "?";

std::string primed(const std::string& t) { return t + "'"; }
std::string twice(const std::string& t) { return t + "''"; }
std::string marked(const std::string& t) { return t + "!"; }

std::vector<std::string> split_tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> toks;
  std::string tok;
  while (in >> tok) toks.push_back(tok);
  return toks;
}

void check_token_shape(const std::string& tok, std::vector<Violation>& out) {
  if (tok.find('/') != std::string::npos)
    out.push_back({0, "token '" + tok + "' may not contain '/'"});
  for (char ch : tok)
    if (std::isspace(static_cast<unsigned char>(ch)))
      out.push_back({0, "token '" + tok + "' may not contain whitespace"});
}

// Structural rules shared by the parser and by entry points that take a
// hand-assembled machine.
std::vector<Violation> lba_problems(const Lba& lba) {
  std::vector<Violation> out;
  if (lba.tape.size() < 2) {
    out.push_back({0, "the tape alphabet must start with the two endmarkers"});
    return out;
  }
  const std::string& le = lba.left_end();
  const std::string& re = lba.right_end();
  std::set<std::string> tape_set(lba.tape.begin(), lba.tape.end());
  if (tape_set.size() != lba.tape.size())
    out.push_back({0, "duplicate tape symbol"});
  for (const std::string& t : lba.tape) check_token_shape(t, out);
  for (const std::string& q : lba.states) check_token_shape(q, out);
  if (lba.states.empty()) out.push_back({0, "no states declared"});
  if (lba.initial.empty())
    out.push_back({0, "missing initial state"});
  else if (!lba.states.count(lba.initial))
    out.push_back({0, "initial state '" + lba.initial + "' is not declared"});
  for (const std::string& q : lba.states)
    if (tape_set.count(q))
      out.push_back({0, "'" + q + "' is both a state and a tape symbol"});
  for (const std::string& a : lba.input) {
    if (!tape_set.count(a))
      out.push_back({0, "input letter '" + a + "' is not a tape symbol"});
    else if (a == le || a == re)
      out.push_back({0, "input letter '" + a + "' is an endmarker"});
  }
  for (const auto& [key, mv] : lba.moves) {
    const auto& [q, t] = key;
    if (!lba.states.count(q))
      out.push_back({0, "transition from undeclared state '" + q + "'"});
    if (!lba.states.count(mv.state))
      out.push_back({0, "transition into undeclared state '" + mv.state + "'"});
    if (!tape_set.count(t))
      out.push_back({0, "transition scans undeclared symbol '" + t + "'"});
    if (!tape_set.count(mv.write))
      out.push_back({0, "transition writes undeclared symbol '" + mv.write + "'"});
    if (t == le)
      out.push_back({0, "the left endmarker is never scanned"});
    if (t == re && mv.write != re)
      out.push_back({0, "scanning the right endmarker must write it back"});
    if (t != le && t != re && (mv.write == le || mv.write == re))
      out.push_back({0, "an ordinary cell cannot be overwritten with an endmarker"});
    if (mv.dir != 'L' && mv.dir != 'R')
      out.push_back({0, "direction must be L or R"});
  }
  return out;
}

// The machine construction and the word codec suffix tokens with ', '' and
// !, and use #, c and ? as fresh tokens; the tape machine's own tokens must
// keep those markers unambiguous.
void require_encodable(const Lba& lba) {
  auto problems = lba_problems(lba);
  if (!problems.empty())
    throw std::invalid_argument("malformed tape machine: " + problems.front().message);
  auto check = [](const std::string& tok) {
    if (tok == kHash || tok == kCut || tok == kJunk)
      throw std::invalid_argument("token '" + tok + "' collides with an encoding marker");
    if (is_reserved_token(tok))
      throw std::invalid_argument("token '" + tok + "' is reserved by the machine text format");
    if (tok.find_first_of("'!,") != std::string::npos)
      throw std::invalid_argument("token '" + tok + "' cannot carry the encoding decorations");
  };
  for (const std::string& q : lba.states) check(q);
  for (const std::string& t : lba.tape) check(t);
}

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  if (a != 0 && b > kMax / a) return kMax;
  return a * b;
}

std::uint64_t step_budget(const Lba& lba, std::size_t n) {
  std::uint64_t cap = lba.states.size();
  for (std::size_t i = 0; i < n + 2; ++i) cap = mul_sat(cap, lba.tape.size() + 2);
  return mul_sat(cap, n + 3);
}

// Head position runs 0..cells.size(); the last value scans the right
// endmarker. The left endmarker is never scanned, only bumped into.
struct TapeHead {
  std::string state;
  std::size_t pos = 0;
  std::vector<std::string> cells;
};

LbaConfig render(const Lba& lba, const TapeHead& th) {
  LbaConfig cfg;
  cfg.reserve(th.cells.size() + 3);
  cfg.push_back(lba.left_end());
  for (std::size_t i = 0; i < th.pos; ++i) cfg.push_back(th.cells[i]);
  cfg.push_back(th.state);
  for (std::size_t i = th.pos; i < th.cells.size(); ++i) cfg.push_back(th.cells[i]);
  cfg.push_back(lba.right_end());
  return cfg;
}

// 1: moved. 0: no table entry, the machine halts. -1: the move would carry
// the head across an endmarker, so the run is stuck.
int advance(const Lba& lba, TapeHead& th) {
  const std::string& scanned =
      th.pos == th.cells.size() ? lba.right_end() : th.cells[th.pos];
  auto it = lba.moves.find({th.state, scanned});
  if (it == lba.moves.end()) return 0;
  const LbaMove& mv = it->second;
  if (mv.dir == 'R' && th.pos == th.cells.size()) return -1;
  if (mv.dir == 'L' && th.pos == 0) return -1;
  if (th.pos < th.cells.size()) th.cells[th.pos] = mv.write;
  th.state = mv.state;
  if (mv.dir == 'R') ++th.pos; else --th.pos;
  return 1;
}

// Position of the unique state token in a well-formed configuration, or
// nullopt when the shape is off: missing or doubled state, bad endmarkers,
// or an interior token outside the ordinary tape alphabet.
std::optional<std::size_t> state_position(const Lba& lba, const LbaConfig& cfg) {
  if (cfg.size() < 3) return std::nullopt;
  if (cfg.front() != lba.left_end() || cfg.back() != lba.right_end())
    return std::nullopt;
  std::optional<std::size_t> at;
  for (std::size_t i = 1; i + 1 < cfg.size(); ++i) {
    const std::string& t = cfg[i];
    if (lba.states.count(t)) {
      if (at) return std::nullopt;
      at = i;
    } else if (t == lba.left_end() || t == lba.right_end() ||
               std::find(lba.tape.begin(), lba.tape.end(), t) == lba.tape.end()) {
      return std::nullopt;
    }
  }
  return at;
}

std::optional<LbaConfig> successor(const Lba& lba, const LbaConfig& cfg) {
  auto at = state_position(lba, cfg);
  if (!at) return std::nullopt;
  TapeHead th;
  th.state = cfg[*at];
  th.pos = *at - 1;
  for (std::size_t i = 1; i + 1 < cfg.size(); ++i)
    if (i != *at) th.cells.push_back(cfg[i]);
  if (advance(lba, th) != 1) return std::nullopt;
  return render(lba, th);
}

// ---- complement construction ------------------------------------------

// Local difference window of one forward move: symbol left of the state,
// the state, and the scanned symbol. hi, mid, lo are what the successor
// configuration holds at the scanned, state, and left slots; a backward
// sweep over the marked copy meets them in that order.
struct Window {
  std::string x, q, y;
  std::string hi, mid, lo;
  std::string tag;
};

class InvalcBuilder {
 public:
  explicit InvalcBuilder(const Lba& lba) : L(lba) {}

  Automaton build() {
    prepare();
    guard();
    emit_shape();
    emit_count();
    emit_forward();
    emit_backward();
    emit_init();
    return std::move(M);
  }

 private:
  const Lba& L;
  Automaton M;

  std::string LE, RE;
  std::vector<std::string> tape_all;   // declared tape, endmarkers first
  std::vector<std::string> tp;         // ordinary tape symbols
  std::vector<std::string> qs;         // machine states
  std::vector<std::string> plain;      // tape + states + #
  std::vector<std::string> scan_syms;  // ordinary + right endmarker
  std::vector<std::string> markable;   // tape + states; # is never marked
  std::vector<std::string> plain_tops;
  std::vector<std::string> mark_vals;  // left endmarker + ordinary symbols
  std::set<std::string> qset, tape_set, tp_set;
  std::set<std::string> primed_tau, twice_tau;
  const std::set<std::string> no_tau;
  std::vector<Window> wins;

  std::string f_i1, f_i2, f_gap, f_open, f_pre, f_post, f_bad;
  std::string cnt_push, cnt_one, cnt_two;

  // ---- naming ----
  static std::string bit(int b) { return b ? "1" : "0"; }
  static std::string h_nm(const std::string& p, const std::string& d) {
    return "fmt:h(" + p + "|" + d + ")";
  }
  static std::string mark_nm(const std::string& p) { return "fwd:mark[" + p + "]"; }
  static std::string at_nm(const std::string& x, const std::string& q) {
    return "fwd:at[" + x + "," + q + "]";
  }
  static std::string body_nm(const Window& w) { return "fwd:body" + w.tag; }
  static std::string done_nm(const Window& w) { return "fwd:done" + w.tag; }
  static std::string grow_nm(const Window& w) { return "fwd:grow" + w.tag; }
  static std::string skip1_nm(const Window& w) { return "fwd:skip1" + w.tag; }
  static std::string skip2_nm(const Window& w) { return "fwd:skip2" + w.tag; }
  static std::string cmp_nm(const Window& w, bool second, int g, int p) {
    return (second ? "fwd:cmp2" : "fwd:cmp1") + w.tag + ":g" + bit(g) + "p" + bit(p);
  }
  static std::string cmpx_nm(const Window& w, bool second) {
    return (second ? "fwd:cmp2" : "fwd:cmp1") + w.tag + ":x";
  }
  static std::string c4_nm(int g, const std::string& y, const std::string& s) {
    return "bwd:cmp(" + bit(g) + "," + y + "," + s + ")";
  }
  static std::string c4x_nm(const std::string& sq, const std::string& q1) {
    return "bwd:x(" + sq + "," + q1 + ")";
  }

  // ---- table plumbing ----
  std::string add_state(const std::string& name, const std::set<std::string>& tau) {
    M.states.insert(name);
    M.tau[name] = tau;
    return name;
  }

  Outcome& slot(const std::string& q, const std::string& letter,
                const std::string& top, int cls) {
    auto& tbl = cls == 0 ? M.delta_push : cls == 1 ? M.delta_pop : M.delta_state;
    return tbl[Key{q, letter, top}];
  }

  static void add_target(Outcome& oc, const std::string& to, const std::string& sym) {
    if (oc.accept) throw std::logic_error("invalc builder: accept entry grew a target");
    oc.targets.insert(Target{to, sym});
  }

  static void mark_accept(Outcome& oc) {
    if (!oc.targets.empty())
      throw std::logic_error("invalc builder: target entry turned accepting");
    oc.accept = true;
  }

  void push_to(const std::string& q, const std::string& letter, const std::string& top,
               const std::string& to, const std::string& sym) {
    add_target(slot(q, letter, top, 0), to, sym);
  }
  void pop_to(const std::string& q, const std::string& letter, const std::string& top,
              const std::string& to) {
    add_target(slot(q, letter, top, 1), to, "");
  }
  void none_to(const std::string& q, const std::string& letter, const std::string& top,
               const std::string& to) {
    add_target(slot(q, letter, top, 2), to, "");
  }
  void end_to(const std::string& q, const std::string& top, const std::string& to) {
    add_target(slot(q, kEndToken, top, 2), to, "");
  }
  void acc(const std::string& q, const std::string& letter, const std::string& top) {
    const int cls = !letter.empty() && letter.back() == '\'' ? 1 : 0;
    mark_accept(slot(q, letter, top, cls));
  }
  void end_acc(const std::string& q, const std::string& top) {
    mark_accept(slot(q, kEndToken, top, 2));
  }

  bool hash_aligned(const std::string& b, const std::string& t) const {
    return (b == kHash) == (t == kHash);
  }
  std::string mem_sym(const std::string& b) const {
    return tape_set.count(b) ? b : kJunk;
  }

  // ---- setup ----
  void prepare() {
    LE = L.left_end();
    RE = L.right_end();
    tape_all = L.tape;
    tp.assign(L.tape.begin() + 2, L.tape.end());
    qs.assign(L.states.begin(), L.states.end());
    plain = tape_all;
    plain.insert(plain.end(), qs.begin(), qs.end());
    plain.push_back(kHash);
    scan_syms = tp;
    scan_syms.push_back(RE);
    markable = tape_all;
    markable.insert(markable.end(), qs.begin(), qs.end());
    plain_tops = plain;
    plain_tops.push_back(kBottomToken);
    mark_vals.push_back(LE);
    mark_vals.insert(mark_vals.end(), tp.begin(), tp.end());
    qset = L.states;
    tape_set.insert(tape_all.begin(), tape_all.end());
    tp_set.insert(tp.begin(), tp.end());
    for (const std::string& t : plain) {
      primed_tau.insert(primed(t));
      twice_tau.insert(twice(t));
    }
    for (const auto& [key, mv] : L.moves)
      for (const std::string& x : mark_vals) {
        if (mv.dir == 'L' && x == LE) continue;
        if (mv.dir == 'R' && key.second == RE) continue;
        Window w{x, key.first, key.second};
        if (mv.dir == 'R') {
          w.hi = mv.state; w.mid = mv.write; w.lo = x;
        } else {
          w.hi = mv.write; w.mid = x; w.lo = mv.state;
        }
        w.tag = "(" + w.x + "," + w.q + "," + w.y + ")";
        wins.push_back(w);
      }
    M.mode = Mode::Returning;
    M.initial = "init";
    for (const std::string& t : plain) {
      M.sig.push.insert(t);
      M.sig.pop.insert(primed(t));
      M.sig.pop.insert(twice(t));
      M.stack_alphabet.insert(t);
    }
    M.sig.state.insert(kCut);
    for (const std::string& v : markable) M.stack_alphabet.insert(marked(v));
  }

  void guard() {
    const std::size_t est =
        8 + 5 * (4 + 1 + scan_syms.size()) + 3 +
        1 + mark_vals.size() * (1 + qs.size()) + 13 * wins.size() +
        6 + 2 * (tape_all.size() + 1) * markable.size() + markable.size() * qs.size();
    if (est > 60000)
      throw ResourceLimitError("complement construction would need about " +
                               std::to_string(est) + " states; the guard allows 60000");
  }

  // ---- shape branch: the word must parse as configurations separated by
  // #, a single c, and decorated reversed configurations after it. Every
  // defect drains into fmt:bad, and every state of this branch accepts at
  // the endmarker except the two products that have seen a complete,
  // well-shaped suffix.
  void emit_shape() {
    f_i1 = add_state("fmt:w0state", no_tau);
    f_i2 = add_state("fmt:w0cells", no_tau);
    f_gap = add_state("fmt:gap", no_tau);
    f_open = add_state("fmt:open", no_tau);
    f_pre = add_state("fmt:pre", no_tau);
    f_post = add_state("fmt:post", no_tau);
    f_bad = add_state("fmt:bad", no_tau);
    const std::vector<std::string> chain = {f_i1, f_i2, f_gap, f_open,
                                            f_pre, f_post, f_bad};
    auto pre_next = [&](const std::string& st, const std::string& x) {
      if (st == f_i1) return x == L.initial ? f_i2 : f_bad;
      if (st == f_i2) {
        if (L.input.count(x)) return f_i2;
        return x == RE ? f_gap : f_bad;
      }
      if (st == f_gap) return x == kHash ? f_open : f_bad;
      if (st == f_open) return x == LE ? f_pre : f_bad;
      if (st == f_pre) {
        if (tp_set.count(x)) return f_pre;
        return qset.count(x) ? f_post : f_bad;
      }
      if (st == f_post) {
        if (tp_set.count(x)) return f_post;
        return x == RE ? f_gap : f_bad;
      }
      return f_bad;
    };
    const std::string h00 = h_nm("p0", "d0");
    for (const std::string& st : chain) {
      for (const std::string& x : plain)
        for (const std::string& t : plain_tops)
          push_to(st, x, t, pre_next(st, x), x);
      for (const std::string& t : plain_tops) {
        none_to(st, kCut, t, st == f_gap ? h00 : f_bad);
        end_acc(st, t);
      }
      for (const std::string& b : plain)
        for (const std::string& t : plain_tops) {
          pop_to(st, primed(b), t, f_bad);
          pop_to(st, twice(b), t, f_bad);
        }
    }
    // Post-c product: one component per decoration level, so any
    // interleaving of the two streams is tracked. The single-primed stream
    // must read as one reversed halting configuration then #'; the
    // double-primed stream as reversed configurations separated by #''.
    std::vector<std::string> Ps = {"p0", "p2", "p3", "p4"};
    for (const std::string& v : scan_syms) Ps.push_back("p1:" + v);
    const std::vector<std::string> Ds = {"d0", "d1", "d2", "d3", "d4"};
    auto step_p = [&](const std::string& P,
                      const std::string& x) -> std::optional<std::string> {
      if (P == "p0")
        return x == RE ? std::optional<std::string>("p1:" + x) : std::nullopt;
      if (P.rfind("p1:", 0) == 0) {
        const std::string v = P.substr(3);
        if (tp_set.count(x)) return "p1:" + x;
        if (qset.count(x))
          return L.moves.count({x, v}) ? std::nullopt
                                       : std::optional<std::string>("p2");
        return std::nullopt;
      }
      if (P == "p2") {
        if (tp_set.count(x)) return "p2";
        return x == LE ? std::optional<std::string>("p3") : std::nullopt;
      }
      if (P == "p3")
        return x == kHash ? std::optional<std::string>("p4") : std::nullopt;
      return std::nullopt;
    };
    auto step_d = [&](const std::string& D,
                      const std::string& x) -> std::optional<std::string> {
      if (D == "d0")
        return x == RE ? std::optional<std::string>("d1") : std::nullopt;
      if (D == "d1") {
        if (tp_set.count(x)) return "d1";
        return qset.count(x) ? std::optional<std::string>("d2") : std::nullopt;
      }
      if (D == "d2") {
        if (tp_set.count(x)) return "d2";
        return x == LE ? std::optional<std::string>("d3") : std::nullopt;
      }
      if (D == "d3")
        return x == kHash ? std::optional<std::string>("d4") : std::nullopt;
      return x == RE ? std::optional<std::string>("d1") : std::nullopt;
    };
    for (const std::string& P : Ps)
      for (const std::string& D : Ds) {
        const std::string st = add_state(h_nm(P, D), no_tau);
        const bool complete = P == "p4" && (D == "d0" || D == "d3");
        for (const std::string& x : plain)
          for (const std::string& t : plain_tops) push_to(st, x, t, f_bad, x);
        for (const std::string& t : plain_tops) {
          none_to(st, kCut, t, f_bad);
          if (!complete) end_acc(st, t);
        }
        for (const std::string& b : plain) {
          const auto np = step_p(P, b);
          const auto nd = step_d(D, b);
          for (const std::string& t : plain_tops) {
            pop_to(st, primed(b), t, np ? h_nm(*np, D) : f_bad);
            pop_to(st, twice(b), t, nd ? h_nm(P, *nd) : f_bad);
          }
        }
      }
  }

  // ---- count branch: push every plain token, then pop one per decorated
  // token with # kept aligned to #' and #''. Any leftover on either side
  // accepts; a clean mutual exhaustion dies.
  void emit_count() {
    cnt_push = add_state("cnt:push", no_tau);
    cnt_one = add_state("cnt:one", twice_tau);
    cnt_two = add_state("cnt:two", primed_tau);
    for (const std::string& x : plain)
      for (const std::string& t : plain_tops) push_to(cnt_push, x, t, cnt_push, x);
    for (const std::string& t : plain_tops) none_to(cnt_push, kCut, t, cnt_one);
    for (const std::string& b : plain) {
      const std::string lp = primed(b);
      acc(cnt_one, lp, kBottomToken);
      for (const std::string& t : plain) {
        if (hash_aligned(b, t)) pop_to(cnt_one, lp, t, cnt_one);
        else acc(cnt_one, lp, t);
      }
    }
    for (const std::string& t : plain_tops) end_to(cnt_one, t, cnt_two);
    for (const std::string& b : plain) {
      const std::string ld = twice(b);
      acc(cnt_two, ld, kBottomToken);
      for (const std::string& t : plain) {
        if (hash_aligned(b, t)) pop_to(cnt_two, ld, t, cnt_two);
        else acc(cnt_two, ld, t);
      }
    }
    for (const std::string& t : plain) end_acc(cnt_two, t);
  }

  // ---- one comparator: pops the marked configuration against a decorated
  // stream that should spell its successor reversed. Each pop records
  // whether the token matched the popped symbol and whether it matched the
  // successor's scanned-slot value; the verdict for a position is delivered
  // one pop later, which lets the state slot substitute the window check
  // for the generic one. Equality survives every entry and dies at the
  // block's left endmarker; any mismatch accepts.
  void emit_comparator(const Window& w, bool second) {
    const std::set<std::string>& tau = second ? primed_tau : twice_tau;
    auto deco = [&](const std::string& b) { return second ? twice(b) : primed(b); };
    auto run_nm = [&](int g, int p) { return cmp_nm(w, second, g, p); };
    const std::string xst = cmpx_nm(w, second);
    for (int g : {0, 1})
      for (int p : {0, 1}) {
        const std::string st = add_state(run_nm(g, p), tau);
        for (const std::string& b : plain) {
          const std::string lt = deco(b);
          for (const std::string& v : markable) {
            const std::string mt = marked(v);
            if (v == w.q) {
              if (p == 1 && b == w.mid) pop_to(st, lt, mt, xst);
              else acc(st, lt, mt);
            } else if (v == LE) {
              if (!(g == 1 && b == LE)) acc(st, lt, mt);
            } else {
              if (g == 0) acc(st, lt, mt);
              else pop_to(st, lt, mt, run_nm(b == v ? 1 : 0, b == w.hi ? 1 : 0));
            }
          }
        }
        for (const std::string& v : markable) end_acc(st, marked(v));
      }
    const std::string st = add_state(xst, tau);
    const std::string mt = marked(w.x);
    for (const std::string& b : plain) {
      const std::string lt = deco(b);
      if (b == w.lo) {
        if (w.x != LE) pop_to(st, lt, mt, run_nm(1, 0));
      } else {
        acc(st, lt, mt);
      }
    }
    end_acc(st, mt);
  }

  // ---- forward branch: guess a configuration among the plain ones, push
  // it marked, and compare it against the stream that claims to be its
  // successor. The guess before c is checked by skipping the decorated
  // streams down to the marked block; the guess at the last plain
  // configuration is checked against the single-primed stream directly.
  void emit_forward() {
    const std::string sc = add_state("fwd:scan", no_tau);
    for (const std::string& x : plain)
      for (const std::string& t : plain_tops) {
        push_to(sc, x, t, sc, x);
        if (x == LE) push_to(sc, x, t, mark_nm(LE), marked(LE));
      }
    for (const std::string& p : mark_vals) {
      const std::string st = add_state(mark_nm(p), no_tau);
      const std::string mt = marked(p);
      for (const std::string& t : tp) push_to(st, t, mt, mark_nm(t), marked(t));
      for (const std::string& q : qs) push_to(st, q, mt, at_nm(p, q), marked(q));
    }
    for (const std::string& p : mark_vals)
      for (const std::string& q : qs) {
        const std::string st = add_state(at_nm(p, q), no_tau);
        const std::string mt = marked(q);
        for (const std::string& y : scan_syms) {
          auto it = L.moves.find({q, y});
          const bool stuck = it == L.moves.end() ||
                             (it->second.dir == 'L' && p == LE) ||
                             (it->second.dir == 'R' && y == RE);
          if (stuck) {
            // The guessed configuration has no successor, yet the word
            // claims one follows it.
            acc(st, y, mt);
            continue;
          }
          Window key{p, q, y};
          key.tag = "(" + p + "," + q + "," + y + ")";
          if (y == RE) push_to(st, y, mt, done_nm(key), marked(RE));
          else push_to(st, y, mt, body_nm(key), marked(y));
        }
      }
    for (const Window& w : wins) emit_window(w);
  }

  void emit_window(const Window& w) {
    {
      const std::string st = add_state(body_nm(w), no_tau);
      for (const std::string& v : tp) {
        const std::string mt = marked(v);
        for (const std::string& t : tp) push_to(st, t, mt, body_nm(w), marked(t));
        push_to(st, RE, mt, done_nm(w), marked(RE));
      }
    }
    {
      const std::string st = add_state(done_nm(w), no_tau);
      push_to(st, kHash, marked(RE), grow_nm(w), kHash);
      none_to(st, kCut, marked(RE), cmp_nm(w, false, 1, 0));
    }
    {
      const std::string st = add_state(grow_nm(w), no_tau);
      for (const std::string& t : plain) {
        for (const std::string& x : plain) push_to(st, x, t, grow_nm(w), x);
        none_to(st, kCut, t, skip1_nm(w));
      }
    }
    {
      // Single-primed stream pops the plain tokens above the marked block.
      const std::string st = add_state(skip1_nm(w), twice_tau);
      for (const std::string& b : plain) {
        const std::string lp = primed(b);
        for (const std::string& t : plain) {
          if (hash_aligned(b, t)) pop_to(st, lp, t, skip1_nm(w));
          else acc(st, lp, t);
        }
        for (const std::string& v : markable) acc(st, lp, marked(v));
      }
      for (const std::string& t : plain) end_to(st, t, skip2_nm(w));
      for (const std::string& v : markable) end_to(st, marked(v), skip2_nm(w));
    }
    {
      // Double-primed stream continues; reaching the marked block top
      // forks into the comparator with the first token's verdicts.
      const std::string st = add_state(skip2_nm(w), primed_tau);
      for (const std::string& b : plain) {
        const std::string ld = twice(b);
        for (const std::string& t : plain) {
          if (hash_aligned(b, t)) pop_to(st, ld, t, skip2_nm(w));
          else acc(st, ld, t);
        }
        pop_to(st, ld, marked(RE),
               cmp_nm(w, true, b == RE ? 1 : 0, b == w.hi ? 1 : 0));
      }
      for (const std::string& t : plain) end_acc(st, t);
      end_acc(st, marked(RE));
    }
    emit_comparator(w, false);
    emit_comparator(w, true);
  }

  // ---- backward branch: guess a plain configuration after the first #,
  // push it marked, and compare it against the double-primed stream that
  // should spell its predecessor reversed. The window is read off the
  // stream instead of the marked copy: at the stream's state token the
  // last two pops supply the scanned symbol and the successor's scanned
  // slot, and the move table decides what the remaining slots must hold.
  void emit_backward() {
    const std::string s0 = add_state("bwd:scan0", no_tau);
    const std::string s1 = add_state("bwd:scan1", no_tau);
    const std::string mk = add_state("bwd:mark", no_tau);
    const std::string gap = add_state("bwd:gap", no_tau);
    const std::string gr = add_state("bwd:grow", no_tau);
    const std::string sk = add_state("bwd:skip", primed_tau);
    for (const std::string& x : plain)
      for (const std::string& t : plain_tops) {
        push_to(s0, x, t, x == kHash ? s1 : s0, x);
        push_to(s1, x, t, s1, x);
        if (x == LE) push_to(s1, x, t, mk, marked(LE));
      }
    for (const std::string& v : markable) {
      const std::string mt = marked(v);
      for (const std::string& t : tp) push_to(mk, t, mt, mk, marked(t));
      for (const std::string& q : qs) push_to(mk, q, mt, mk, marked(q));
      push_to(mk, RE, mt, gap, marked(RE));
    }
    push_to(gap, kHash, marked(RE), gr, kHash);
    none_to(gap, kCut, marked(RE), sk);
    for (const std::string& t : plain) {
      for (const std::string& x : plain) push_to(gr, x, t, gr, x);
      none_to(gr, kCut, t, sk);
    }
    for (const std::string& b : plain) {
      const std::string ld = twice(b);
      for (const std::string& t : plain) {
        if (hash_aligned(b, t)) pop_to(sk, ld, t, sk);
        else acc(sk, ld, t);
      }
      if (qset.count(b)) acc(sk, ld, marked(RE));
      else pop_to(sk, ld, marked(RE), c4_nm(b == RE ? 1 : 0, mem_sym(b), RE));
    }
    for (const std::string& t : plain) end_acc(sk, t);
    end_acc(sk, marked(RE));
    // Comparator product: pending verdict of the previous pop, the
    // previous stream token when it was a tape symbol, and the previous
    // marked symbol.
    std::vector<std::string> ymem(tape_all.begin(), tape_all.end());
    ymem.push_back(kJunk);
    for (int g : {0, 1})
      for (const std::string& y : ymem)
        for (const std::string& s : markable) {
          const std::string st = add_state(c4_nm(g, y, s), primed_tau);
          const bool sealed = g == 1 && y == LE && s == LE;
          for (const std::string& b : plain) {
            const std::string ld = twice(b);
            if (qset.count(b)) {
              for (const std::string& v : markable) {
                const std::string mt = marked(v);
                if (y == kJunk) { acc(st, ld, mt); continue; }
                auto it = L.moves.find({b, y});
                if (it == L.moves.end()) { acc(st, ld, mt); continue; }
                const LbaMove& mv = it->second;
                if (mv.dir == 'R') {
                  if (y == RE || s != mv.state || v != mv.write) acc(st, ld, mt);
                  else pop_to(st, ld, mt, c4_nm(1, kJunk, v));
                } else {
                  if (s != mv.write) acc(st, ld, mt);
                  else pop_to(st, ld, mt, c4x_nm(v, mv.state));
                }
              }
            } else {
              for (const std::string& v : markable) {
                const std::string mt = marked(v);
                if (g == 0) acc(st, ld, mt);
                else pop_to(st, ld, mt, c4_nm(b == v ? 1 : 0, mem_sym(b), v));
              }
            }
            if (!sealed) {
              for (const std::string& t : plain) acc(st, ld, t);
              acc(st, ld, kBottomToken);
            }
          }
          for (const std::string& v : markable) end_acc(st, marked(v));
          if (!sealed) {
            for (const std::string& t : plain) end_acc(st, t);
            end_acc(st, kBottomToken);
          }
        }
    // Deferred slot after a left-moving state token: the stream must next
    // deliver the symbol the marked copy held, while the marked copy holds
    // the state the move entered.
    for (const std::string& sq : markable)
      for (const std::string& q1 : qs) {
        const std::string st = add_state(c4x_nm(sq, q1), primed_tau);
        for (const std::string& b : plain) {
          const std::string ld = twice(b);
          for (const std::string& v : markable) {
            const std::string mt = marked(v);
            if (b != LE && b == sq && v == q1)
              pop_to(st, ld, mt, c4_nm(1, mem_sym(b), v));
            else acc(st, ld, mt);
          }
          for (const std::string& t : plain) acc(st, ld, t);
          acc(st, ld, kBottomToken);
        }
        for (const std::string& v : markable) end_acc(st, marked(v));
        for (const std::string& t : plain) end_acc(st, t);
        end_acc(st, kBottomToken);
      }
  }

  // ---- initial fan-out: the first consumed letter picks a branch. Only
  // the empty word accepts here.
  void emit_init() {
    const std::string in = add_state("init", no_tau);
    const std::string B = kBottomToken;
    for (const std::string& x : plain) {
      push_to(in, x, B, x == LE ? f_i1 : f_bad, x);
      push_to(in, x, B, cnt_push, x);
      push_to(in, x, B, "fwd:scan", x);
      if (x == LE) push_to(in, x, B, mark_nm(LE), marked(LE));
      push_to(in, x, B, x == kHash ? "bwd:scan1" : "bwd:scan0", x);
    }
    none_to(in, kCut, B, f_bad);
    none_to(in, kCut, B, cnt_one);
    for (const std::string& b : plain) {
      pop_to(in, primed(b), B, f_bad);
      pop_to(in, twice(b), B, f_bad);
    }
    end_acc(in, B);
  }
};

}  // namespace

// ---- text format -------------------------------------------------------

LbaLoadResult load_lba(const std::string& text) {
  LbaLoadResult result;
  Lba lba;
  auto& errs = result.violations;
  auto bad = [&](int ln, std::string msg) { errs.push_back({ln, std::move(msg)}); };
  bool saw_initial = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find("//"); pos != std::string::npos) line.erase(pos);
    const auto toks = split_tokens(line);
    if (toks.empty()) continue;
    const std::string& head = toks[0];
    const std::vector<std::string> rest(toks.begin() + 1, toks.end());
    if (head == "lba.states:") {
      lba.states.insert(rest.begin(), rest.end());
    } else if (head == "lba.initial:") {
      if (saw_initial) bad(lineno, "initial state declared twice");
      if (rest.size() != 1) {
        bad(lineno, "expected exactly one initial state");
        continue;
      }
      lba.initial = rest[0];
      saw_initial = true;
    } else if (head == "lba.tape:") {
      lba.tape.insert(lba.tape.end(), rest.begin(), rest.end());
    } else if (head == "lba.input:") {
      lba.input.insert(rest.begin(), rest.end());
    } else if (head == "lba.trans:") {
      if (rest.size() != 6 || rest[2] != "->") {
        bad(lineno, "transition must read: state symbol -> state symbol L|R");
        continue;
      }
      const auto key = std::make_pair(rest[0], rest[1]);
      if (lba.moves.count(key)) {
        bad(lineno, "duplicate transition for state '" + rest[0] +
                        "' scanning '" + rest[1] + "'");
        continue;
      }
      lba.moves[key] = LbaMove{rest[3], rest[4], rest[5].size() == 1 ? rest[5][0] : '?'};
      if (rest[5] != "L" && rest[5] != "R") bad(lineno, "direction must be L or R");
    } else {
      bad(lineno, "unknown directive '" + head + "'");
    }
  }
  if (!saw_initial) bad(0, "missing lba.initial:");
  for (auto& v : lba_problems(lba)) errs.push_back(v);
  if (errs.empty()) result.lba = std::move(lba);
  return result;
}

std::string serialize_lba(const Lba& lba) {
  std::ostringstream out;
  out << "lba.states:";
  for (const std::string& q : lba.states) out << ' ' << q;
  out << "\nlba.initial: " << lba.initial << "\nlba.tape:";
  for (const std::string& t : lba.tape) out << ' ' << t;
  out << "\nlba.input:";
  for (const std::string& a : lba.input) out << ' ' << a;
  out << '\n';
  for (const auto& [key, mv] : lba.moves)
    out << "lba.trans: " << key.first << ' ' << key.second << " -> " << mv.state
        << ' ' << mv.write << ' ' << mv.dir << '\n';
  return out.str();
}

// ---- simulation --------------------------------------------------------

LbaRun lba_run(const Lba& lba, const Word& input) {
  for (const std::string& a : input)
    if (!lba.input.count(a))
      throw std::invalid_argument("'" + a + "' is not an input letter of the machine");
  TapeHead th{lba.initial, 0, input};
  LbaRun run;
  run.outcome = LbaOutcome::Exceeded;
  run.trace.push_back(render(lba, th));
  std::set<LbaConfig> seen(run.trace.begin(), run.trace.end());
  const std::uint64_t cap = step_budget(lba, input.size());
  for (std::uint64_t steps = 0; steps < cap; ++steps) {
    const int r = advance(lba, th);
    if (r == 0) {
      run.outcome = LbaOutcome::Accepted;
      return run;
    }
    if (r < 0) {
      run.outcome = LbaOutcome::Rejected;
      return run;
    }
    LbaConfig cfg = render(lba, th);
    if (!seen.insert(cfg).second) {
      run.outcome = LbaOutcome::Rejected;
      return run;
    }
    run.trace.push_back(std::move(cfg));
  }
  return run;
}

// ---- encoding ----------------------------------------------------------

std::optional<Word> valc_generate(const Lba& lba, const Word& input) {
  require_encodable(lba);
  const LbaRun run = lba_run(lba, input);
  if (run.outcome != LbaOutcome::Accepted) return std::nullopt;
  const std::size_t moves = run.trace.size() - 1;
  if (moves % 2 == 0) return std::nullopt;
  const std::size_t m = (moves - 1) / 2;
  Word out;
  for (std::size_t i = 0; i <= 2 * m; i += 2) {
    if (i > 0) out.emplace_back(kHash);
    out.insert(out.end(), run.trace[i].begin(), run.trace[i].end());
  }
  out.emplace_back(kCut);
  const LbaConfig& last = run.trace[2 * m + 1];
  for (auto it = last.rbegin(); it != last.rend(); ++it) out.push_back(primed(*it));
  out.push_back(primed(kHash));
  for (std::size_t j = 0; j < m; ++j) {
    if (j > 0) out.push_back(twice(kHash));
    const LbaConfig& cfg = run.trace[2 * (m - j) - 1];
    for (auto it = cfg.rbegin(); it != cfg.rend(); ++it) out.push_back(twice(*it));
  }
  return out;
}

bool in_valcp(const Lba& lba, const Word& word) {
  require_encodable(lba);
  std::set<std::string> plain_set(lba.tape.begin(), lba.tape.end());
  plain_set.insert(lba.states.begin(), lba.states.end());
  plain_set.insert(kHash);

  std::vector<std::string> pre, single, dbl;
  std::size_t cuts = 0;
  for (const std::string& tok : word) {
    if (tok == kCut) {
      ++cuts;
      continue;
    }
    std::string base = tok;
    int depth = 0;
    if (base.size() >= 2 && base.compare(base.size() - 2, 2, "''") == 0) {
      base.erase(base.size() - 2);
      depth = 2;
    } else if (!base.empty() && base.back() == '\'') {
      base.pop_back();
      depth = 1;
    }
    if (!plain_set.count(base)) return false;
    if (depth == 0) {
      if (cuts > 0) return false;
      pre.push_back(base);
    } else {
      if (cuts == 0) return false;
      (depth == 1 ? single : dbl).push_back(base);
    }
  }
  if (cuts != 1) return false;

  auto split_configs = [](const std::vector<std::string>& toks,
                          std::vector<LbaConfig>& out) {
    LbaConfig cur;
    for (const std::string& t : toks) {
      if (t == kHash) {
        if (cur.empty()) return false;
        out.push_back(std::move(cur));
        cur.clear();
      } else {
        cur.push_back(t);
      }
    }
    if (cur.empty()) return false;
    out.push_back(std::move(cur));
    return true;
  };

  std::vector<LbaConfig> evens;
  if (!split_configs(pre, evens)) return false;
  for (const LbaConfig& cfg : evens)
    if (!state_position(lba, cfg)) return false;
  const LbaConfig& w0 = evens.front();
  if (w0[1] != lba.initial) return false;
  for (std::size_t i = 2; i + 1 < w0.size(); ++i)
    if (!lba.input.count(w0[i])) return false;

  // Single-primed half: one reversed halting configuration, then #.
  if (single.empty() || single.back() != kHash) return false;
  if (std::count(single.begin(), single.end(), std::string(kHash)) != 1) return false;
  const LbaConfig wlast(single.rbegin() + 1, single.rend());
  const auto at = state_position(lba, wlast);
  if (!at) return false;
  if (lba.moves.count({wlast[*at], wlast[*at + 1]})) return false;

  // Double-primed half: the missing chain links, last first, reversed.
  std::vector<LbaConfig> odds_rev;
  if (!dbl.empty() && !split_configs(dbl, odds_rev)) return false;
  const std::size_t m = evens.size() - 1;
  if (odds_rev.size() != m) return false;

  std::vector<LbaConfig> chain(2 * m + 2);
  for (std::size_t i = 0; i <= m; ++i) chain[2 * i] = evens[i];
  chain[2 * m + 1] = wlast;
  for (std::size_t j = 0; j < m; ++j)
    chain[2 * (m - j) - 1] = LbaConfig(odds_rev[j].rbegin(), odds_rev[j].rend());
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const auto nxt = successor(lba, chain[i]);
    if (!nxt || *nxt != chain[i + 1]) return false;
  }
  return true;
}

Automaton build_invalc(const Lba& lba) {
  require_encodable(lba);
  InvalcBuilder builder(lba);
  return builder.build();
}

// ---- mutation ----------------------------------------------------------

Word mutate_valid(const Word& word, std::uint64_t seed) {
  if (word.empty()) throw std::invalid_argument("cannot mutate an empty word");
  std::mt19937_64 rng(seed);
  std::vector<std::string> uni(word.begin(), word.end());
  std::sort(uni.begin(), uni.end());
  uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
  auto pick = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  for (int tries = 0; tries < 256; ++tries) {
    Word w = word;
    switch (rng() % 4) {
      case 0: {
        if (uni.size() < 2) break;
        const std::size_t i = pick(w.size());
        const std::string& r = uni[pick(uni.size())];
        if (r != w[i]) w[i] = r;
        break;
      }
      case 1:
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(pick(w.size())));
        break;
      case 2: {
        if (w.size() < 2) break;
        const std::size_t i = pick(w.size() - 1);
        std::swap(w[i], w[i + 1]);
        break;
      }
      default: {
        std::string& t = w[pick(w.size())];
        if (t == kCut) break;
        if (t.size() >= 2 && t.compare(t.size() - 2, 2, "''") == 0) t.pop_back();
        else t += '\'';
        break;
      }
    }
    if (w != word) return w;
  }
  Word w = word;
  w.erase(w.begin());
  return w;
}

// ---- fixture -----------------------------------------------------------

const std::string& toy_lba_text() {
  // Parity of the leading a-run decides how the b is confirmed; anything
  // after the b, or a missing b, walks left into the front wall. Accepting
  // runs on a^j b take j+3 moves for even j and j+2 for odd j, always odd.
  static const std::string text = R"(lba.states: g h pe po qe qo rL
lba.initial: qe
lba.tape: |> <| a b
lba.input: a b

lba.trans: qe a -> qo a R
lba.trans: qo a -> qe a R
lba.trans: qe b -> pe b R
lba.trans: qo b -> po b R
lba.trans: qe <| -> rL <| L
lba.trans: qo <| -> rL <| L
lba.trans: pe <| -> g <| L
lba.trans: po <| -> h <| L
lba.trans: pe a -> rL a L
lba.trans: pe b -> rL b L
lba.trans: po a -> rL a L
lba.trans: po b -> rL b L
lba.trans: g b -> h b R
lba.trans: rL a -> rL a L
lba.trans: rL b -> rL b L
)";
  return text;
}

}  // namespace wtl
