#pragma once

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "chlink/error.hpp"
#include "chlink/lieseries.hpp"
#include "chlink/ncseries.hpp"

namespace chlink {

// Freely reduced word in the free group on x1..xn.  Letters are signed
// generator indices: +i for xi, -i for its inverse.
class GroupWord {
 public:
  explicit GroupWord(int n) : n_(n) {
    if (n < 1) throw IndexOutOfRange("generator count must be at least 1");
  }

  static GroupWord identity(int n) { return GroupWord(n); }

  static GroupWord generator(int n, int i, int sign = 1) {
    GroupWord w(n);
    w.check_letter(i);
    w.letters_.push_back(sign < 0 ? -i : i);
    return w;
  }

  // Reduces arbitrary letters; rejects indices outside 1..n.
  static GroupWord from_letters(int n, const std::vector<int>& raw) {
    GroupWord w(n);
    for (int letter : raw) w.push(letter);
    return w;
  }

  int n() const { return n_; }
  const std::vector<int>& letters() const { return letters_; }
  int size() const { return static_cast<int>(letters_.size()); }
  bool is_identity() const { return letters_.empty(); }

  int exponent_sum(int i) const {
    check_letter(i);
    int e = 0;
    for (int letter : letters_) {
      if (letter == i) ++e;
      if (letter == -i) --e;
    }
    return e;
  }

  friend bool operator==(const GroupWord&, const GroupWord&) = default;

  // Appends one letter with free cancellation.
  void push(int letter) {
    check_letter(std::abs(letter));
    if (letter == 0) throw IndexOutOfRange("letter index must be nonzero");
    if (!letters_.empty() && letters_.back() == -letter)
      letters_.pop_back();
    else
      letters_.push_back(letter);
  }

 private:
  void check_letter(int i) const {
    if (i < 1 || i > n_)
      throw IndexOutOfRange("generator index " + std::to_string(i) +
                            " outside 1.." + std::to_string(n_));
  }

  int n_;
  std::vector<int> letters_;
};

inline void check_context(const GroupWord& a, const GroupWord& b) {
  if (a.n() != b.n())
    throw MismatchedContext("group words over different generator counts: " +
                            std::to_string(a.n()) + " vs " +
                            std::to_string(b.n()));
}

inline GroupWord word_reduce(int n, const std::vector<int>& raw) {
  return GroupWord::from_letters(n, raw);
}

inline GroupWord word_invert(const GroupWord& w) {
  GroupWord out(w.n());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
    out.push(-*it);
  return out;
}

inline GroupWord word_concat(const GroupWord& a, const GroupWord& b) {
  check_context(a, b);
  GroupWord out = a;
  for (int letter : b.letters()) out.push(letter);
  return out;
}

// u v u^-1 v^-1.
inline GroupWord word_commutator(const GroupWord& u, const GroupWord& v) {
  return word_concat(word_concat(u, v),
                     word_concat(word_invert(u), word_invert(v)));
}

// Letters in reverse order, signs kept: the image under the anti-automorphism
// that reads words backward.
inline GroupWord word_reverse(const GroupWord& w) {
  GroupWord out(w.n());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
    out.push(*it);
  return out;
}

inline GroupWord word_power(const GroupWord& w, int k) {
  GroupWord out(w.n());
  GroupWord base = k < 0 ? word_invert(w) : w;
  for (int j = 0; j < std::abs(k); ++j) out = word_concat(out, base);
  return out;
}

// Magnus expansion: the multiplicative extension of xi -> 1 + Xi into the
// truncated free associative algebra; inverses map to geometric series.
inline NcSeries magnus_expand(const GroupWord& w, int trunc) {
  NcSeries result = NcSeries::one(w.n(), trunc);
  for (int letter : w.letters()) {
    const int i = std::abs(letter);
    NcSeries factor = NcSeries::one(w.n(), trunc);
    if (letter > 0) {
      factor = nc_add(factor, NcSeries::generator(w.n(), trunc, i));
    } else {
      // (1 + Xi)^-1 = 1 - Xi + Xi^2 - ...
      std::vector<NcSeries::Term> terms;
      Monomial m = Monomial::unit();
      for (int d = 1; d <= trunc; ++d) {
        m = m.concat(Monomial::generator(i));
        terms.emplace_back(m, Rational(d % 2 ? -1 : 1));
      }
      factor = nc_add(factor, NcSeries::make(w.n(), trunc, std::move(terms)));
    }
    result = nc_mul(result, factor);
  }
  return result;
}

// exp(sign * Xi) truncated.
inline NcSeries exp_generator(int n, int trunc, int i, int sign) {
  std::vector<NcSeries::Term> terms;
  Monomial m = Monomial::unit();
  Rational c(1);
  terms.emplace_back(m, c);
  for (int d = 1; d <= trunc; ++d) {
    m = m.concat(Monomial::generator(i));
    c /= d;
    if (sign < 0 && d % 2) {
      terms.emplace_back(m, Rational(-c));
    } else {
      terms.emplace_back(m, c);
    }
  }
  return NcSeries::make(n, trunc, std::move(terms));
}

// Product of exp(+-Xi) over the letters of w: the Campbell-Hausdorff
// (exponential) expansion of the word, before taking log.
inline NcSeries exp_expand(const GroupWord& w, int trunc) {
  NcSeries result = NcSeries::one(w.n(), trunc);
  for (int letter : w.letters())
    result = nc_mul(result,
                    exp_generator(w.n(), trunc, std::abs(letter),
                                  letter > 0 ? 1 : -1));
  return result;
}

// rho: the Campbell-Hausdorff expansion of a word, i.e. the Lie series with
// exp(rho(w)) = product of exp(+-Xi).  This lands in the free Lie algebra;
// a NotALieElement escaping from here would be a defect, not an input error.
inline LieSeries ch_expand(const GroupWord& w, int trunc) {
  return assoc_to_lie(nc_log(exp_expand(w, trunc)));
}

// Whitespace-separated tokens "xK" / "xK'"; "1" (or nothing) is the identity.
inline GroupWord parse_group_word(const std::string& text, int n) {
  std::istringstream in(text);
  std::string tok;
  std::vector<int> letters;
  while (in >> tok) {
    if (tok == "1" && letters.empty()) continue;
    bool inverse = false;
    std::string body = tok;
    if (body.size() >= 2 && body.back() == '\'') {
      inverse = true;
      body.pop_back();
    }
    if (body.size() < 2 || body[0] != 'x' ||
        body.find_first_not_of("0123456789", 1) != std::string::npos)
      throw SyntaxError("bad word token '" + tok + "'");
    const int i = std::atoi(body.c_str() + 1);
    if (i < 1 || i > n)
      throw IndexOutOfRange("generator index " + std::to_string(i) +
                            " outside 1.." + std::to_string(n) + " in token '" +
                            tok + "'");
    letters.push_back(inverse ? -i : i);
  }
  return GroupWord::from_letters(n, letters);
}

// Largest generator index mentioned, for contexts where n is not declared.
inline int max_generator_index(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  int n = 1;
  while (in >> tok) {
    std::string body = tok;
    if (body.size() >= 2 && body.back() == '\'') body.pop_back();
    if (body.size() >= 2 && body[0] == 'x' &&
        body.find_first_not_of("0123456789", 1) == std::string::npos)
      n = std::max(n, std::atoi(body.c_str() + 1));
  }
  return n;
}

inline std::string to_text(const GroupWord& w) {
  if (w.is_identity()) return "1";
  std::string out;
  for (int letter : w.letters()) {
    if (!out.empty()) out += ' ';
    out += 'x' + std::to_string(std::abs(letter));
    if (letter < 0) out += '\'';
  }
  return out;
}

}  // namespace chlink
