#include "wtl/format.hpp"

#include <sstream>

namespace wtl {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

ParseResult parse_description(const std::string& text) {
  RawDescription raw;
  std::vector<Violation> violations;

  auto bad = [&](int line, std::string msg) {
    violations.push_back({line, std::move(msg)});
  };

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find("//"); pos != std::string::npos)
      line.erase(pos);
    std::vector<std::string> toks = tokenize(line);
    if (toks.empty()) continue;

    const std::string& head = toks[0];
    auto rest = [&](std::size_t from) {
      return std::vector<std::string>(toks.begin() + from, toks.end());
    };

    if (head == "mode:") {
      if (toks.size() != 2 ||
          (toks[1] != "returning" && toks[1] != "non-returning")) {
        bad(lineno, "mode must be 'returning' or 'non-returning'");
        continue;
      }
      if (raw.mode) {
        bad(lineno, "duplicate mode directive");
        continue;
      }
      raw.mode = {lineno, toks[1]};
    } else if (head == "letters.push:" || head == "letters.pop:" ||
               head == "letters.state:" || head == "stack:" ||
               head == "states:") {
      auto* dest = head == "letters.push:"    ? &raw.push_letters
                   : head == "letters.pop:"  ? &raw.pop_letters
                   : head == "letters.state:" ? &raw.state_letters
                   : head == "stack:"         ? &raw.stack_symbols
                                              : &raw.state_names;
      for (auto& t : rest(1)) dest->push_back({lineno, t});
    } else if (head == "initial:") {
      if (toks.size() != 2) {
        bad(lineno, "initial takes exactly one state name");
        continue;
      }
      if (raw.initial) {
        bad(lineno, "duplicate initial directive");
        continue;
      }
      raw.initial = {lineno, toks[1]};
    } else if (head == "translucent:") {
      if (toks.size() < 3 || toks[2] != "->") {
        bad(lineno, "translucent line must read: translucent: <state> -> [letters]");
        continue;
      }
      RawTranslucency t;
      t.line = lineno;
      t.state = toks[1];
      t.letters = rest(3);
      raw.translucent.push_back(std::move(t));
    } else if (head == "trans:") {
      if (toks.size() < 5 || toks[4] != "->") {
        bad(lineno, "trans line must read: trans: <state> <letter> <top> -> <outcome>");
        continue;
      }
      RawTransition t;
      t.line = lineno;
      t.state = toks[1];
      t.letter = toks[2];
      t.top = toks[3];
      std::vector<std::string> out = rest(5);
      if (out.size() == 1 && out[0] == "accept") {
        t.accept = true;
      } else if (out.size() == 3 && out[1] == "push") {
        t.target_state = out[0];
        t.action = "push";
        t.push_symbol = out[2];
      } else if (out.size() == 2 && (out[1] == "pop" || out[1] == "none")) {
        t.target_state = out[0];
        t.action = out[1];
      } else {
        bad(lineno,
            "outcome must be 'accept', '<state> push <symbol>', '<state> pop', or '<state> none'");
        continue;
      }
      raw.transitions.push_back(std::move(t));
    } else {
      bad(lineno, "unknown directive '" + head + "'");
    }
  }

  ParseResult result;
  result.violations = std::move(violations);
  if (result.violations.empty()) result.raw = std::move(raw);
  return result;
}

ValidationResult load_automaton(const std::string& text) {
  ParseResult parsed = parse_description(text);
  if (!parsed.raw) {
    ValidationResult r;
    r.violations = std::move(parsed.violations);
    return r;
  }
  return validate(*parsed.raw);
}

}  // namespace wtl
