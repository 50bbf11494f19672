#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "chlink/error.hpp"

namespace chlink {

// Letters are 1-based generator indices, one byte each, as in Monomial.
// A word is Lyndon when it is strictly smaller than every proper cyclic
// rotation, equivalently strictly smaller than every proper suffix.
inline bool is_lyndon(const std::string& w) {
  if (w.empty()) return false;
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w.compare(i, std::string::npos, w) <= 0) return false;
  return true;
}

// Right standard factorization w = u.v of a Lyndon word of length >= 2:
// v is the longest proper suffix that is Lyndon (equivalently the
// lexicographically least proper suffix); then u is Lyndon and u < v.
inline std::pair<std::string, std::string> standard_factorization(
    const std::string& w) {
  if (w.size() < 2)
    throw Error("standard factorization needs length at least 2");
  std::size_t best = 1;
  for (std::size_t i = 2; i < w.size(); ++i)
    if (w.compare(i, std::string::npos, w, best, std::string::npos) < 0)
      best = i;
  return {w.substr(0, best), w.substr(best)};
}

struct LyndonWord {
  std::string letters;

  int degree() const { return static_cast<int>(letters.size()); }

  friend bool operator==(const LyndonWord&, const LyndonWord&) = default;
};

inline bool operator<(const LyndonWord& a, const LyndonWord& b) {
  if (a.letters.size() != b.letters.size())
    return a.letters.size() < b.letters.size();
  return a.letters < b.letters;
}

// All Lyndon words over 1..n of degree 1..max_degree via Duval's algorithm,
// re-sorted into the canonical degree-then-lex order.
inline std::vector<LyndonWord> lyndon_basis(int n, int max_degree) {
  if (n < 1) throw IndexOutOfRange("generator count must be at least 1");
  if (max_degree < 1) throw Error("degree must be at least 1");
  std::vector<LyndonWord> words;
  std::string w(1, '\1');
  for (;;) {
    words.push_back(LyndonWord{w});
    // Extend w periodically to the maximum length, then increment the last
    // letter that is not yet n, dropping everything after it.
    std::string t;
    t.reserve(max_degree);
    for (int i = 0; i < max_degree; ++i) t += w[i % w.size()];
    while (!t.empty() && t.back() == static_cast<char>(n)) t.pop_back();
    if (t.empty()) break;
    ++t.back();
    w = std::move(t);
  }
  std::sort(words.begin(), words.end());
  return words;
}

// "[x1,[x1,x2]]" from the standard factorization; a single letter renders
// without brackets as "x1".
inline std::string bracketed_text(const std::string& word) {
  if (word.size() == 1) return "x" + std::to_string(static_cast<int>(word[0]));
  auto [u, v] = standard_factorization(word);
  return "[" + bracketed_text(u) + "," + bracketed_text(v) + "]";
}

}  // namespace chlink
