#pragma once

// Reference languages decided by direct word inspection, a catalog of
// ready-made machine descriptions, and word-set utilities. The oracles are
// the ground truth the machine implementations are tested against.

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "wtl/model.hpp"

namespace wtl {

// ---- oracles ----------------------------------------------------------

// Names accepted by oracle_accepts, in catalog order.
std::vector<std::string> oracle_names();

bool is_oracle_name(const std::string& name);

// Alphabet the named oracle ranges over. Unknown name: empty set.
std::set<std::string> oracle_alphabet(const std::string& name);

// Membership test. A word containing a letter outside the oracle's alphabet
// is never a member; when that happens a note is appended to *warnings.
// Unknown oracle names throw std::out_of_range.
bool oracle_accepts(const std::string& name, const Word& w,
                    std::vector<std::string>* warnings = nullptr);

// ---- machine catalog --------------------------------------------------

std::vector<std::string> fixture_names();

bool is_fixture_name(const std::string& name);

// Canonical machine text. Unknown names throw std::out_of_range.
const std::string& fixture_text(const std::string& name);

// ---- the strictly growing gap family ----------------------------------

// k-th member word; k >= 0.
Word nsl_word(int k);

// Lengths of members 0..max_k inclusive.
std::vector<std::size_t> nsl_lengths(int max_k);

// Sorted lengths of every member word no longer than max_len. Member
// lengths grow quadratically, so consecutive gaps grow without bound.
std::vector<std::size_t> nsl_length_probe(int max_len);

// ---- word utilities ---------------------------------------------------

// Every word over the alphabet with length <= max_len, shortest first,
// lexicographic within a length (alphabet order as given).
std::vector<Word> all_words(const std::vector<std::string>& alphabet,
                            int max_len);

// Letter-count vectors (indexed like the given alphabet) of every word of
// length <= max_len the predicate admits. Words are drawn over the alphabet.
std::set<std::vector<int>> parikh_upto(
    const std::function<bool(const Word&)>& member,
    const std::vector<std::string>& alphabet, int max_len);

}  // namespace wtl
