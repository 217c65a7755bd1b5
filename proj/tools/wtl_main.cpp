// Command-line workbench. One executable exposes machine validation and
// execution, the decision procedures, the machine-to-machine constructions,
// the reference oracles, and the computation-word gadget.
//
// Exit codes: 0 accept / true / equivalent, 1 reject / false / different,
// 2 usage, format, or resource-guard failures, 3 Unknown decision outcomes.
// Word tokens follow a literal "--" so letters like # and $ survive the
// shell; --chars instead splits each argument into one-character tokens.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "wtl/constructions.hpp"
#include "wtl/decision.hpp"
#include "wtl/engine.hpp"
#include "wtl/format.hpp"
#include "wtl/langlib.hpp"
#include "wtl/model.hpp"
#include "wtl/valc.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 1729;

std::string join(const wtl::Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += w[i];
  }
  return out;
}

wtl::Word to_word(const std::vector<std::string>& toks, bool chars) {
  if (!chars) return toks;
  wtl::Word out;
  for (const auto& t : toks)
    for (char c : t) out.emplace_back(1, c);
  return out;
}

[[noreturn]] void fail(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  std::exit(2);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void print_violations(std::ostream& os, const std::string& path,
                      const std::vector<wtl::Violation>& vs) {
  for (const auto& v : vs) {
    os << path;
    if (v.line > 0) os << ":" << v.line;
    os << ": " << v.message << "\n";
  }
}

wtl::Automaton load_machine(const std::string& path) {
  auto res = wtl::load_automaton(slurp(path));
  if (!res.automaton) {
    print_violations(std::cerr, path, res.violations);
    std::exit(2);
  }
  return *std::move(res.automaton);
}

wtl::Lba load_lba_file(const std::string& path) {
  auto res = wtl::load_lba(slurp(path));
  if (!res.lba) {
    print_violations(std::cerr, path, res.violations);
    std::exit(2);
  }
  return *std::move(res.lba);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) fail("cannot write " + path);
}

int cmd_validate(const std::string& path) {
  auto text = slurp(path);
  auto res = wtl::load_automaton(text);
  if (res.automaton) {
    for (const auto& w : res.warnings) std::cout << "warning: " << w << "\n";
    const auto& a = *res.automaton;
    std::cout << "ok: "
              << (a.mode == wtl::Mode::Returning ? "returning" : "non-returning")
              << " machine, " << a.states.size() << " states, "
              << a.sig.all_letters().size() << " letters, "
              << a.stack_alphabet.size() << " stack symbols\n";
    return 0;
  }
  auto nres = wtl::load_npda(text);
  if (nres.npda) {
    std::cout << "ok: pushdown simulation, " << nres.npda->states.size()
              << " states, " << nres.npda->accept_at_end.size()
              << " drain states\n";
    return 0;
  }
  bool npda_shaped = text.find("silent:") != std::string::npos ||
                     text.find("drain:") != std::string::npos;
  print_violations(std::cout, path,
                   npda_shaped ? nres.violations : res.violations);
  return 2;
}

int cmd_run(const std::string& path, const wtl::Word& word) {
  bool ok = wtl::accepts(load_machine(path), word);
  std::cout << (ok ? "accept" : "reject") << "\n";
  return ok ? 0 : 1;
}

int cmd_trace(const std::string& path, const wtl::Word& word) {
  auto aut = load_machine(path);
  if (wtl::is_deterministic(aut)) {
    auto v = wtl::run_deterministic(aut, word);
    for (std::size_t i = 0; i < v.trace.size(); ++i)
      std::cout << wtl::render_step(i + 1, v.trace[i]) << "\n";
    std::cout << wtl::render_verdict(v.kind) << "\n";
    return v.kind == wtl::VerdictKind::Accept ? 0 : 1;
  }
  auto tr = wtl::accepting_trace(aut, word);
  if (!tr) {
    std::cout << "no accepting run\n";
    return 1;
  }
  for (std::size_t i = 0; i < tr->size(); ++i)
    std::cout << wtl::render_step(i + 1, (*tr)[i]) << "\n";
  std::cout << "ACCEPT\n";
  return 0;
}

int cmd_enumerate(const std::string& path, int max_len) {
  for (const auto& w : wtl::enumerate(load_machine(path), max_len))
    std::cout << join(w) << "\n";
  return 0;
}

int finish_report(const wtl::DecisionReport& r, bool json,
                  const std::string& text_first) {
  if (json) {
    std::cout << r.to_json() << "\n";
  } else {
    std::cout << text_first << "\n";
    if (r.witness) std::cout << "witness: " << join(*r.witness) << "\n";
    if (r.bound) std::cout << "bound: " << *r.bound << "\n";
  }
  return r.exit_code();
}

int cmd_decide(const std::string& path, bool emptiness_q, bool json) {
  auto aut = load_machine(path);
  auto r = emptiness_q ? wtl::emptiness(aut) : wtl::finiteness(aut);
  std::string first = !r.answer ? "unknown"
                      : emptiness_q ? (*r.answer ? "empty" : "nonempty")
                                    : (*r.answer ? "finite" : "infinite");
  return finish_report(r, json, first);
}

int cmd_universality(const std::string& path, int bound, bool json) {
  auto r = wtl::bounded_universality(load_machine(path), bound);
  std::string first =
      !r.answer ? "unknown" : (*r.answer ? "universal" : "not universal");
  return finish_report(r, json, first);
}

int cmd_compare(const std::string& p1, const std::string& p2, int max_len,
                long long sample, int sample_len, std::uint64_t seed,
                bool json) {
  auto a = load_machine(p1);
  auto b = load_machine(p2);
  wtl::Engine ea(a), eb(b);

  std::set<std::string> letters = a.sig.all_letters();
  for (const auto& l : b.sig.all_letters()) letters.insert(l);
  std::vector<std::string> alpha(letters.begin(), letters.end());

  std::optional<wtl::Word> diff;
  bool left_accepts = false;
  for (const auto& w : wtl::all_words(alpha, max_len)) {
    bool x = ea.accepts(w), y = eb.accepts(w);
    if (x != y) {
      diff = w;
      left_accepts = x;
      break;
    }
  }
  if (sample_len < 0) sample_len = max_len;
  if (!diff && sample > 0 && !alpha.empty()) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> len(0, sample_len);
    std::uniform_int_distribution<std::size_t> pick(0, alpha.size() - 1);
    for (long long k = 0; k < sample && !diff; ++k) {
      wtl::Word w;
      int n = len(rng);
      for (int i = 0; i < n; ++i) w.push_back(alpha[pick(rng)]);
      bool x = ea.accepts(w), y = eb.accepts(w);
      if (x != y) {
        diff = w;
        left_accepts = x;
      }
    }
  }

  wtl::DecisionReport r;
  r.question = wtl::Question::EquivalenceBounded;
  r.bound = max_len;
  r.answer = !diff.has_value();
  if (diff) r.witness = *diff;
  if (json) {
    std::cout << r.to_json() << "\n";
    return r.exit_code();
  }
  if (!diff) {
    std::cout << "equivalent up to " << max_len << "\n";
    if (sample > 0)
      std::cout << "sampled " << sample << " words up to length " << sample_len
                << ": no disagreement\n";
    return 0;
  }
  std::cout << "differ on: " << join(*diff) << "\n";
  std::cout << (left_accepts ? p1 + " accepts, " + p2 + " rejects"
                             : p1 + " rejects, " + p2 + " accepts")
            << "\n";
  return 1;
}

int cmd_construct(const std::string& kind, const std::string& p1,
                  const std::string& p2, const std::string& out) {
  std::string text;
  std::size_t states = 0;
  if (kind == "nonreturning") {
    auto m = wtl::to_nonreturning(load_machine(p1));
    states = m.states.size();
    text = wtl::serialize(m);
  } else if (kind == "npda") {
    auto n = wtl::letter_equivalent_npda(load_machine(p1));
    states = n.states.size();
    text = wtl::serialize_npda(n);
  } else {
    auto m = wtl::union_compatible(load_machine(p1), load_machine(p2));
    states = m.states.size();
    text = wtl::serialize(m);
  }
  write_file(out, text);
  std::cout << "wrote " << out << " (" << states << " states)\n";
  return 0;
}

int cmd_oracle(const std::string& name, const wtl::Word& word) {
  if (!wtl::is_oracle_name(name)) {
    std::cerr << "unknown oracle: " << name << "\nknown:";
    for (const auto& n : wtl::oracle_names()) std::cerr << " " << n;
    std::cerr << "\n";
    return 2;
  }
  std::vector<std::string> warnings;
  bool ok = wtl::oracle_accepts(name, word, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  std::cout << (ok ? "accept" : "reject") << "\n";
  return ok ? 0 : 1;
}

int cmd_parikh(const std::string& target, int max_len) {
  std::vector<std::string> alpha;
  std::function<bool(const wtl::Word&)> member;
  if (target.rfind("oracle:", 0) == 0) {
    std::string name = target.substr(7);
    if (!wtl::is_oracle_name(name)) fail("unknown oracle: " + name);
    auto set = wtl::oracle_alphabet(name);
    alpha.assign(set.begin(), set.end());
    member = [name](const wtl::Word& w) { return wtl::oracle_accepts(name, w); };
  } else {
    auto aut = load_machine(target);
    auto set = aut.sig.all_letters();
    alpha.assign(set.begin(), set.end());
    auto eng = std::make_shared<wtl::Engine>(std::move(aut));
    member = [eng](const wtl::Word& w) { return eng->accepts(w); };
  }
  auto counts = wtl::parikh_upto(member, alpha, max_len);
  std::cout << "alphabet: " << join(alpha) << "\n";
  std::vector<std::vector<int>> rows(counts.begin(), counts.end());
  std::sort(rows.begin(), rows.end(),
            [](const std::vector<int>& x, const std::vector<int>& y) {
              int sx = std::accumulate(x.begin(), x.end(), 0);
              int sy = std::accumulate(y.begin(), y.end(), 0);
              if (sx != sy) return sx < sy;
              return x < y;
            });
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) std::cout << ' ';
      std::cout << row[i];
    }
    std::cout << "\n";
  }
  return 0;
}

int cmd_fixtures_list() {
  for (const auto& n : wtl::fixture_names()) std::cout << n << "\n";
  std::cout << "toy_lba\n";
  return 0;
}

int cmd_fixtures_emit(const std::string& name, const std::string& out) {
  const std::string* text = nullptr;
  if (name == "toy_lba") {
    text = &wtl::toy_lba_text();
  } else if (wtl::is_fixture_name(name)) {
    text = &wtl::fixture_text(name);
  } else {
    std::cerr << "unknown fixture: " << name << "\nknown:";
    for (const auto& n : wtl::fixture_names()) std::cerr << " " << n;
    std::cerr << " toy_lba\n";
    return 2;
  }
  if (out.empty()) {
    std::cout << *text;
  } else {
    write_file(out, *text);
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_valc_build(const std::string& lba_path, const std::string& out) {
  auto lba = load_lba_file(lba_path);
  auto m = wtl::build_invalc(lba);
  write_file(out, wtl::serialize(m));
  std::cout << "wrote " << out << " (" << m.states.size() << " states)\n";
  return 0;
}

int cmd_valc_gen(const std::string& lba_path, const wtl::Word& input) {
  auto lba = load_lba_file(lba_path);
  auto w = wtl::valc_generate(lba, input);
  if (!w) {
    std::cout << "no encodable accepting run\n";
    return 1;
  }
  std::cout << join(*w) << "\n";
  return 0;
}

int cmd_valc_check(const std::string& lba_path, const wtl::Word& word) {
  bool ok = wtl::in_valcp(load_lba_file(lba_path), word);
  std::cout << (ok ? "member" : "non-member") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> pre;
  std::vector<std::string> word_raw;
  bool after_sep = false;
  pre.push_back(argc > 0 ? argv[0] : "wtl");
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (!after_sep && arg == "--") {
      after_sep = true;
      continue;
    }
    (after_sep ? word_raw : pre).push_back(std::move(arg));
  }

  CLI::App app{"workbench for pushdown machines with translucent letters"};
  app.require_subcommand(1);

  int rc = 0;
  bool chars = false;
  bool json = false;
  std::string file_a, file_b, out_path, name, target;
  int max_len = 0;
  int bound = 0;
  long long sample = 0;
  int sample_len = -1;
  std::uint64_t seed = kDefaultSeed;

  auto word = [&] { return to_word(word_raw, chars); };

  {
    auto* sc = app.add_subcommand("validate",
                                  "check a machine or pushdown description");
    sc->add_option("file", file_a, "description file")->required();
    sc->callback([&] { rc = cmd_validate(file_a); });
  }
  {
    auto* sc = app.add_subcommand("run", "run a word; exit 0 accept, 1 reject");
    sc->add_option("file", file_a, "machine file")->required();
    sc->add_flag("--chars", chars, "split word arguments into characters");
    sc->callback([&] { rc = cmd_run(file_a, word()); });
  }
  {
    auto* sc = app.add_subcommand("trace", "print a run of a word");
    sc->add_option("file", file_a, "machine file")->required();
    sc->add_flag("--chars", chars, "split word arguments into characters");
    sc->callback([&] { rc = cmd_trace(file_a, word()); });
  }
  {
    auto* sc = app.add_subcommand("enumerate", "list accepted words by length");
    sc->add_option("file", file_a, "machine file")->required();
    sc->add_option("--max-len", max_len, "maximum word length")->required();
    sc->callback([&] { rc = cmd_enumerate(file_a, max_len); });
  }
  {
    auto* sc = app.add_subcommand("decide", "emptiness or finiteness");
    sc->require_subcommand(1);
    auto* em = sc->add_subcommand("emptiness", "is the language empty");
    em->add_option("file", file_a, "machine file")->required();
    em->add_flag("--json", json, "print the report as JSON");
    em->callback([&] { rc = cmd_decide(file_a, true, json); });
    auto* fi = sc->add_subcommand("finiteness", "is the language finite");
    fi->add_option("file", file_a, "machine file")->required();
    fi->add_flag("--json", json, "print the report as JSON");
    fi->callback([&] { rc = cmd_decide(file_a, false, json); });
  }
  {
    auto* sc = app.add_subcommand("universality",
                                  "search for a rejected word up to a bound");
    sc->add_option("file", file_a, "machine file")->required();
    sc->add_option("--bound", bound, "maximum word length")->required();
    sc->add_flag("--json", json, "print the report as JSON");
    sc->callback([&] { rc = cmd_universality(file_a, bound, json); });
  }
  {
    auto* sc = app.add_subcommand("compare",
                                  "bounded language comparison of two machines");
    sc->add_option("file1", file_a, "first machine")->required();
    sc->add_option("file2", file_b, "second machine")->required();
    sc->add_option("--max-len", max_len, "exhaustive length bound")->required();
    sc->add_option("--sample", sample, "extra random words to try");
    sc->add_option("--sample-len", sample_len,
                   "length bound for sampled words (default --max-len)");
    sc->add_option("--seed", seed, "random seed");
    sc->add_flag("--json", json, "print the report as JSON");
    sc->callback([&] {
      rc = cmd_compare(file_a, file_b, max_len, sample, sample_len, seed, json);
    });
  }
  {
    auto* sc = app.add_subcommand("construct", "derive a machine from others");
    sc->require_subcommand(1);
    auto* nr = sc->add_subcommand("nonreturning",
                                  "same language without head returns");
    nr->add_option("file", file_a, "machine file")->required();
    nr->add_option("-o,--output", out_path, "output file")->required();
    nr->callback([&] { rc = cmd_construct("nonreturning", file_a, "", out_path); });
    auto* np = sc->add_subcommand("npda",
                                  "letter-equivalent ordinary pushdown");
    np->add_option("file", file_a, "machine file")->required();
    np->add_option("-o,--output", out_path, "output file")->required();
    np->callback([&] { rc = cmd_construct("npda", file_a, "", out_path); });
    auto* un = sc->add_subcommand("union", "union of two compatible machines");
    un->add_option("file1", file_a, "first machine")->required();
    un->add_option("file2", file_b, "second machine")->required();
    un->add_option("-o,--output", out_path, "output file")->required();
    un->callback([&] { rc = cmd_construct("union", file_a, file_b, out_path); });
  }
  {
    auto* sc = app.add_subcommand("oracle", "reference language membership");
    sc->add_option("name", name, "oracle name")->required();
    sc->add_flag("--chars", chars, "split word arguments into characters");
    sc->callback([&] { rc = cmd_oracle(name, word()); });
  }
  {
    auto* sc = app.add_subcommand("parikh",
                                  "letter-count vectors of accepted words");
    sc->add_option("target", target, "machine file or oracle:NAME")->required();
    sc->add_option("--max-len", max_len, "maximum word length")->required();
    sc->callback([&] { rc = cmd_parikh(target, max_len); });
  }
  {
    auto* sc = app.add_subcommand("fixtures", "built-in machine catalog");
    sc->require_subcommand(1);
    auto* li = sc->add_subcommand("list", "list fixture names");
    li->callback([&] { rc = cmd_fixtures_list(); });
    auto* em = sc->add_subcommand("emit", "write a fixture's text");
    em->add_option("name", name, "fixture name")->required();
    em->add_option("-o,--output", out_path, "output file (default stdout)");
    em->callback([&] { rc = cmd_fixtures_emit(name, out_path); });
  }
  {
    auto* sc = app.add_subcommand("valc", "computation-word gadget");
    sc->require_subcommand(1);
    auto* bu = sc->add_subcommand(
        "build", "machine accepting the complement of the encoding language");
    bu->add_option("lba", file_a, "tape machine file")->required();
    bu->add_option("-o,--output", out_path, "output file")->required();
    bu->callback([&] { rc = cmd_valc_build(file_a, out_path); });
    auto* ge = sc->add_subcommand("gen", "encode an accepting run as a word");
    ge->add_option("lba", file_a, "tape machine file")->required();
    ge->add_flag("--chars", chars, "split word arguments into characters");
    ge->callback([&] { rc = cmd_valc_gen(file_a, word()); });
    auto* ch = sc->add_subcommand("check", "membership in the encoding language");
    ch->add_option("lba", file_a, "tape machine file")->required();
    ch->add_flag("--chars", chars, "split word arguments into characters");
    ch->callback([&] { rc = cmd_valc_check(file_a, word()); });
  }

  std::vector<char*> cargv;
  cargv.reserve(pre.size());
  for (auto& s : pre) cargv.push_back(s.data());

  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const wtl::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
