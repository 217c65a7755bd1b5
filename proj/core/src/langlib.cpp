#include "wtl/langlib.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>

namespace wtl {

namespace {

int count_letter(const Word& w, const std::string& letter) {
  int n = 0;
  for (const auto& t : w)
    if (t == letter) ++n;
  return n;
}

Word project(const Word& w, const std::set<std::string>& keep) {
  Word out;
  for (const auto& t : w)
    if (keep.count(t)) out.push_back(t);
  return out;
}

// Sizes of the maximal b-runs between # letters. Empty projection gives zero
// blocks; an empty run anywhere (leading, trailing, or doubled #) is
// malformed and gives nullopt.
std::optional<std::vector<int>> hash_blocks(const Word& proj) {
  std::vector<int> blocks;
  if (proj.empty()) return blocks;
  int run = 0;
  for (const auto& t : proj) {
    if (t == "#") {
      if (run == 0) return std::nullopt;
      blocks.push_back(run);
      run = 0;
    } else {
      ++run;
    }
  }
  if (run == 0) return std::nullopt;
  blocks.push_back(run);
  return blocks;
}

bool rep_member(const Word& w) {
  int n = count_letter(w, "a");
  if (n < 1) return false;
  auto blocks = hash_blocks(project(w, {"b", "#"}));
  if (!blocks || blocks->empty()) return false;
  return std::all_of(blocks->begin(), blocks->end(),
                     [&](int b) { return b == n; });
}

bool mismatch_member(const Word& w) {
  int n = count_letter(w, "a");
  if (n < 1) return false;
  auto blocks = hash_blocks(project(w, {"b", "#"}));
  if (!blocks || blocks->empty()) return false;
  return std::any_of(blocks->begin(), blocks->end(),
                     [&](int b) { return b != n; });
}

bool two_block_member(const Word& w, bool first_matches) {
  int n = count_letter(w, "a");
  if (n < 1) return false;
  auto blocks = hash_blocks(project(w, {"b", "#"}));
  if (!blocks || blocks->size() != 2) return false;
  return (*blocks)[first_matches ? 0 : 1] == n;
}

// Class of a letter in the paired-copy alphabet: 0 plain, 1 single mark,
// 2 double mark.
int mark_level(const std::string& t) {
  if (t == "a" || t == "b") return 0;
  if (t == "a1" || t == "b1") return 1;
  return 2;
}

std::string marked(const std::string& plain, int level) {
  return plain + (level == 1 ? "1" : "2");
}

// Splits into the three mark-level segments when the word has shape
// plain+ single+ double+; nullopt otherwise.
std::optional<std::array<Word, 3>> mark_segments(const Word& w) {
  std::array<Word, 3> seg;
  int level = 0;
  for (const auto& t : w) {
    int l = mark_level(t);
    if (l < level) return std::nullopt;
    level = l;
    seg[l].push_back(t);
  }
  if (seg[0].empty() || seg[1].empty() || seg[2].empty()) return std::nullopt;
  return seg;
}

bool pair_l1_member(const Word& w) {
  auto seg = mark_segments(w);
  if (!seg) return false;
  const Word& plain = (*seg)[0];
  const Word& dbl = (*seg)[2];
  if (plain.size() != dbl.size()) return false;
  for (std::size_t i = 0; i < plain.size(); ++i)
    if (dbl[i] != marked(plain[plain.size() - 1 - i], 2)) return false;
  return true;
}

bool pair_l2_member(const Word& w) {
  auto seg = mark_segments(w);
  if (!seg) return false;
  const Word& plain = (*seg)[0];
  const Word& single = (*seg)[1];
  if (plain.size() != single.size()) return false;
  for (std::size_t i = 0; i < plain.size(); ++i)
    if (single[i] != marked(plain[plain.size() - 1 - i], 1)) return false;
  return true;
}

bool nsl_member(const Word& w) {
  for (int k = 0;; ++k) {
    Word cand = nsl_word(k);
    if (cand.size() > w.size()) return false;
    if (cand.size() == w.size()) return cand == w;
  }
}

bool abc_member(const Word& w) {
  std::size_t i = 0;
  std::size_t na = 0, nb = 0, nc = 0;
  while (i < w.size() && w[i] == "a") ++i, ++na;
  while (i < w.size() && w[i] == "b") ++i, ++nb;
  while (i < w.size() && w[i] == "c") ++i, ++nc;
  return i == w.size() && na == nb && nb == nc;
}

bool counts_member(const Word& w) {
  return count_letter(w, "a") == count_letter(w, "b") &&
         count_letter(w, "b") == count_letter(w, "c");
}

bool astar_member(const Word& w) {
  int level = 0;
  for (const auto& t : w) {
    int l = t == "a" ? 0 : t == "b" ? 1 : 2;
    if (l < level) return false;
    level = l;
  }
  return true;
}

struct OracleEntry {
  std::set<std::string> alphabet;
  bool (*member)(const Word&);
};

const std::vector<std::pair<std::string, OracleEntry>>& oracle_table() {
  static const std::vector<std::pair<std::string, OracleEntry>> table = {
      {"l_rep", {{"a", "b", "#"}, rep_member}},
      {"co_l_rep",
       {{"a", "b", "#"}, [](const Word& w) { return !rep_member(w); }}},
      {"l_mismatch", {{"a", "b", "#"}, mismatch_member}},
      {"l1_sec3",
       {{"a", "b", "#"}, [](const Word& w) { return two_block_member(w, true); }}},
      {"l2_sec3",
       {{"a", "b", "#"},
        [](const Word& w) { return two_block_member(w, false); }}},
      {"l_union_sec3",
       {{"a", "b", "#"},
        [](const Word& w) {
          return two_block_member(w, true) || two_block_member(w, false);
        }}},
      {"l1_exa22", {{"a", "b", "a1", "b1", "a2", "b2"}, pair_l1_member}},
      {"l2_exa22", {{"a", "b", "a1", "b1", "a2", "b2"}, pair_l2_member}},
      {"l_union_exa22",
       {{"a", "b", "a1", "b1", "a2", "b2"},
        [](const Word& w) { return pair_l1_member(w) || pair_l2_member(w); }}},
      {"l_nsl", {{"a", "$", "#", "c"}, nsl_member}},
      {"l_abc", {{"a", "b", "c"}, abc_member}},
      {"l_counts_abc", {{"a", "b", "c"}, counts_member}},
      {"reg_astar", {{"a", "b", "c"}, astar_member}},
  };
  return table;
}

const OracleEntry& find_oracle(const std::string& name) {
  for (const auto& [n, e] : oracle_table())
    if (n == name) return e;
  throw std::out_of_range("unknown oracle '" + name + "'");
}

}  // namespace

std::vector<std::string> oracle_names() {
  std::vector<std::string> names;
  for (const auto& [n, e] : oracle_table()) names.push_back(n);
  return names;
}

bool is_oracle_name(const std::string& name) {
  for (const auto& [n, e] : oracle_table())
    if (n == name) return true;
  return false;
}

std::set<std::string> oracle_alphabet(const std::string& name) {
  if (!is_oracle_name(name)) return {};
  return find_oracle(name).alphabet;
}

bool oracle_accepts(const std::string& name, const Word& w,
                    std::vector<std::string>* warnings) {
  const OracleEntry& e = find_oracle(name);
  for (const auto& t : w) {
    if (!e.alphabet.count(t)) {
      if (warnings)
        warnings->push_back("letter '" + t + "' outside the oracle alphabet");
      return false;
    }
  }
  return e.member(w);
}

Word nsl_word(int k) {
  Word w;
  if (k <= 0) {
    w.push_back("a");
    return w;
  }
  for (int i = 1; i <= k; ++i) {
    for (int j = 0; j < 2 * i - 1; ++j) w.push_back("a");
    w.push_back("$");
    if (i < k)
      for (int j = 0; j < i; ++j) w.push_back("#");
    else
      for (int j = 0; j < k; ++j) w.push_back("c");
  }
  for (int j = 0; j < 2 * k + 1; ++j) w.push_back("a");
  return w;
}

std::vector<std::size_t> nsl_lengths(int max_k) {
  std::vector<std::size_t> lengths;
  for (int k = 0; k <= max_k; ++k) lengths.push_back(nsl_word(k).size());
  return lengths;
}

std::vector<std::size_t> nsl_length_probe(int max_len) {
  std::vector<std::size_t> lengths;
  for (int k = 0;; ++k) {
    std::size_t len = nsl_word(k).size();
    if (len > static_cast<std::size_t>(std::max(max_len, 0))) break;
    lengths.push_back(len);
  }
  return lengths;
}

std::vector<Word> all_words(const std::vector<std::string>& alphabet,
                            int max_len) {
  std::vector<Word> out;
  out.push_back({});
  std::size_t level_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (const auto& letter : alphabet) {
        Word w = out[i];
        w.push_back(letter);
        out.push_back(std::move(w));
      }
    level_begin = level_end;
  }
  return out;
}

std::set<std::vector<int>> parikh_upto(
    const std::function<bool(const Word&)>& member,
    const std::vector<std::string>& alphabet, int max_len) {
  std::set<std::vector<int>> image;
  for (const auto& w : all_words(alphabet, max_len)) {
    if (!member(w)) continue;
    std::vector<int> counts(alphabet.size(), 0);
    for (const auto& t : w)
      for (std::size_t i = 0; i < alphabet.size(); ++i)
        if (t == alphabet[i]) ++counts[i];
    image.insert(std::move(counts));
  }
  return image;
}

}  // namespace wtl
