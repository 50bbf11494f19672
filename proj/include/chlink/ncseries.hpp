#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "chlink/error.hpp"
#include "chlink/rational.hpp"

namespace chlink {

// Word in the generators X1..Xn, stored as one byte per letter (1-based
// generator index).  The empty word is the unit monomial.
struct Monomial {
  std::string letters;

  static Monomial unit() { return Monomial{}; }
  static Monomial generator(int i) {
    return Monomial{std::string(1, static_cast<char>(i))};
  }

  int degree() const { return static_cast<int>(letters.size()); }

  Monomial concat(const Monomial& other) const {
    return Monomial{letters + other.letters};
  }

  // "1" for the unit, otherwise "X1.X2.X1".
  std::string text() const {
    if (letters.empty()) return "1";
    std::string out;
    for (char c : letters) {
      if (!out.empty()) out += '.';
      out += 'X' + std::to_string(static_cast<int>(c));
    }
    return out;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Canonical order everywhere: degree first, then lexicographic.
inline bool deg_lex_less(const Monomial& a, const Monomial& b) {
  if (a.letters.size() != b.letters.size())
    return a.letters.size() < b.letters.size();
  return a.letters < b.letters;
}

inline bool operator<(const Monomial& a, const Monomial& b) {
  return deg_lex_less(a, b);
}

// Element of the free associative Q-algebra on n generators, truncated at
// total degree `trunc`.  Terms are kept sorted in deg-lex order with no zero
// coefficients and no monomial above the truncation degree.
class NcSeries {
 public:
  using Term = std::pair<Monomial, Rational>;

  NcSeries(int n, int trunc) : n_(n), trunc_(trunc) {
    if (n < 1) throw IndexOutOfRange("generator count must be at least 1");
    if (trunc < 0) throw Error("truncation order must be non-negative");
  }

  static NcSeries zero(int n, int trunc) { return NcSeries(n, trunc); }

  static NcSeries one(int n, int trunc) {
    NcSeries s(n, trunc);
    if (trunc >= 0) s.terms_.emplace_back(Monomial::unit(), 1);
    return s;
  }

  static NcSeries generator(int n, int trunc, int i) {
    NcSeries s(n, trunc);
    s.check_index(i);
    if (trunc >= 1) s.terms_.emplace_back(Monomial::generator(i), 1);
    return s;
  }

  // Canonicalizes arbitrary (monomial, coefficient) pairs: sorts, merges
  // duplicates, drops zeros.  Rejects letters outside 1..n and degrees above
  // the truncation order.
  static NcSeries make(int n, int trunc, std::vector<Term> raw) {
    NcSeries s(n, trunc);
    for (const auto& t : raw) {
      if (t.first.degree() > trunc)
        throw Error("monomial degree exceeds truncation order");
      for (char ch : t.first.letters)
        if (ch < 1 || static_cast<int>(ch) > n)
          throw IndexOutOfRange("monomial letter outside 1..n");
    }
    s.terms_ = std::move(raw);
    s.normalize();
    return s;
  }

  int n() const { return n_; }
  int trunc() const { return trunc_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(const Monomial& m) const {
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), m,
        [](const Term& t, const Monomial& key) { return t.first < key; });
    if (it != terms_.end() && it->first == m) return it->second;
    return Rational(0);
  }

  Rational constant_term() const { return coeff(Monomial::unit()); }

  // Terms of exact degree d, in a series with the same context.
  NcSeries homogeneous_part(int d) const {
    NcSeries out(n_, trunc_);
    for (const auto& t : terms_)
      if (t.first.degree() == d) out.terms_.push_back(t);
    return out;
  }

  NcSeries truncated(int new_trunc) const {
    if (new_trunc < 0) throw Error("truncation order must be non-negative");
    NcSeries out(n_, new_trunc);
    for (const auto& t : terms_)
      if (t.first.degree() <= new_trunc) out.terms_.push_back(t);
    return out;
  }

  int min_degree() const {  // trunc+1 when the series is zero
    return terms_.empty() ? trunc_ + 1 : terms_.front().first.degree();
  }

  friend bool operator==(const NcSeries&, const NcSeries&) = default;

 private:
  void check_index(int i) const {
    if (i < 1 || i > n_)
      throw IndexOutOfRange("generator index " + std::to_string(i) +
                            " outside 1.." + std::to_string(n_));
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms_.size();) {
      Monomial m = terms_[i].first;
      Rational c = terms_[i].second;
      for (++i; i < terms_.size() && terms_[i].first == m; ++i)
        c += terms_[i].second;
      if (c != 0) terms_[out++] = {std::move(m), std::move(c)};
    }
    terms_.resize(out);
  }

  int n_;
  int trunc_;
  std::vector<Term> terms_;

  friend NcSeries nc_add(const NcSeries&, const NcSeries&);
  friend NcSeries nc_scale(const Rational&, const NcSeries&);
  friend NcSeries nc_mul(const NcSeries&, const NcSeries&);
};

inline void check_context(const NcSeries& a, const NcSeries& b) {
  if (a.n() != b.n() || a.trunc() != b.trunc())
    throw MismatchedContext(
        "series contexts differ: (" + std::to_string(a.n()) + "," +
        std::to_string(a.trunc()) + ") vs (" + std::to_string(b.n()) + "," +
        std::to_string(b.trunc()) + ")");
}

inline NcSeries nc_add(const NcSeries& a, const NcSeries& b) {
  check_context(a, b);
  NcSeries out(a.n(), a.trunc());
  out.terms_.reserve(a.terms_.size() + b.terms_.size());
  auto ia = a.terms_.begin(), ib = b.terms_.begin();
  while (ia != a.terms_.end() && ib != b.terms_.end()) {
    if (ia->first == ib->first) {
      Rational c = ia->second + ib->second;
      if (c != 0) out.terms_.emplace_back(ia->first, std::move(c));
      ++ia, ++ib;
    } else if (ia->first < ib->first) {
      out.terms_.push_back(*ia++);
    } else {
      out.terms_.push_back(*ib++);
    }
  }
  out.terms_.insert(out.terms_.end(), ia, a.terms_.end());
  out.terms_.insert(out.terms_.end(), ib, b.terms_.end());
  return out;
}

inline NcSeries nc_scale(const Rational& c, const NcSeries& a) {
  NcSeries out(a.n(), a.trunc());
  if (c == 0) return out;
  out.terms_.reserve(a.terms_.size());
  for (const auto& t : a.terms_) out.terms_.emplace_back(t.first, c * t.second);
  return out;
}

// Concatenation product, dropping every monomial above the truncation degree.
inline NcSeries nc_mul(const NcSeries& a, const NcSeries& b) {
  check_context(a, b);
  const int trunc = a.trunc();
  std::vector<NcSeries::Term> scratch;
  scratch.reserve(a.terms_.size() * 2);
  for (const auto& [ma, ca] : a.terms_) {
    const int budget = trunc - ma.degree();
    for (const auto& [mb, cb] : b.terms_) {
      if (mb.degree() > budget) break;  // b is sorted by degree
      scratch.emplace_back(ma.concat(mb), ca * cb);
    }
  }
  return NcSeries::make(a.n(), trunc, std::move(scratch));
}

inline NcSeries nc_sub(const NcSeries& a, const NcSeries& b) {
  return nc_add(a, nc_scale(Rational(-1), b));
}

inline NcSeries operator+(const NcSeries& a, const NcSeries& b) {
  return nc_add(a, b);
}
inline NcSeries operator-(const NcSeries& a, const NcSeries& b) {
  return nc_sub(a, b);
}
inline NcSeries operator-(const NcSeries& a) {
  return nc_scale(Rational(-1), a);
}
inline NcSeries operator*(const NcSeries& a, const NcSeries& b) {
  return nc_mul(a, b);
}
inline NcSeries operator*(const Rational& c, const NcSeries& a) {
  return nc_scale(c, a);
}

// exp(a) = sum a^k / k!, defined when the constant term vanishes.
inline NcSeries nc_exp(const NcSeries& a) {
  if (a.constant_term() != 0)
    throw NonzeroConstantTerm("exp requires a vanishing constant term");
  NcSeries result = NcSeries::one(a.n(), a.trunc());
  NcSeries term = result;
  for (int k = 1; k <= a.trunc() && !term.is_zero(); ++k) {
    term = nc_scale(make_rational(1, k), nc_mul(term, a));
    result = nc_add(result, term);
  }
  return result;
}

// log(a) = sum (-1)^(k+1) (a-1)^k / k, defined when the constant term is 1.
inline NcSeries nc_log(const NcSeries& a) {
  if (a.constant_term() != 1)
    throw ConstantTermNotOne("log requires constant term exactly 1");
  NcSeries u = nc_sub(a, NcSeries::one(a.n(), a.trunc()));
  NcSeries result = NcSeries::zero(a.n(), a.trunc());
  NcSeries power = NcSeries::one(a.n(), a.trunc());
  for (int k = 1; k <= a.trunc(); ++k) {
    power = nc_mul(power, u);
    if (power.is_zero()) break;
    result = nc_add(result, nc_scale(make_rational(k % 2 ? 1 : -1, k), power));
  }
  return result;
}

// Two-sided inverse via the geometric series, defined when the constant term
// is 1.
inline NcSeries nc_inverse(const NcSeries& a) {
  if (a.constant_term() != 1)
    throw ConstantTermNotOne("inverse requires constant term exactly 1");
  NcSeries u = nc_sub(a, NcSeries::one(a.n(), a.trunc()));
  NcSeries result = NcSeries::one(a.n(), a.trunc());
  NcSeries power = NcSeries::one(a.n(), a.trunc());
  for (int k = 1; k <= a.trunc(); ++k) {
    power = nc_mul(power, u);
    if (power.is_zero()) break;
    result = nc_add(result, k % 2 ? -power : power);
  }
  return result;
}

// "0", or deg-lex ordered terms joined with +/- separators:
// "1 + 1 * X1 + 1/2 * X1.X1".  The unit monomial prints as the bare
// coefficient.
inline std::string to_text(const NcSeries& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : s.terms()) {
    Rational abs = c < 0 ? Rational(-c) : c;
    if (out.empty()) {
      out += c < 0 ? "-" : "";
      out += rational_text(abs);
    } else {
      out += c < 0 ? " - " : " + ";
      out += rational_text(abs);
    }
    if (m.degree() > 0) out += " * " + m.text();
  }
  return out;
}

}  // namespace chlink
