#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "chlink/error.hpp"
#include "chlink/lyndon.hpp"
#include "chlink/ncseries.hpp"
#include "chlink/rational.hpp"

namespace chlink {

namespace detail {

// Homogeneous polynomials as lex-sorted (word, coefficient) vectors; used for
// the Lyndon bracket expansions, which carry no (n, trunc) context of their
// own.
using Poly = std::vector<std::pair<std::string, Rational>>;

inline Poly poly_normalize(Poly p) {
  std::sort(p.begin(), p.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < p.size();) {
    std::string w = p[i].first;
    Rational c = p[i].second;
    for (++i; i < p.size() && p[i].first == w; ++i) c += p[i].second;
    if (c != 0) p[out++] = {std::move(w), std::move(c)};
  }
  p.resize(out);
  return p;
}

inline Poly poly_commutator(const Poly& a, const Poly& b) {
  Poly scratch;
  scratch.reserve(2 * a.size() * b.size());
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      Rational c = ca * cb;
      scratch.emplace_back(wa + wb, c);
      scratch.emplace_back(wb + wa, -c);
    }
  return poly_normalize(std::move(scratch));
}

// Expansion of the standard bracketing of a Lyndon word into monomials.
// The leading (lex-least) monomial is the word itself with coefficient 1,
// which makes assoc_to_lie a triangular back-substitution.
inline std::shared_ptr<const Poly> lyndon_expansion(const std::string& word) {
  static std::map<std::string, std::shared_ptr<const Poly>> cache;
  static std::mutex mutex;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(word);
    if (it != cache.end()) return it->second;
  }
  std::shared_ptr<const Poly> result;
  if (word.size() == 1) {
    result = std::make_shared<Poly>(Poly{{word, Rational(1)}});
  } else {
    auto [u, v] = standard_factorization(word);
    result = std::make_shared<Poly>(
        poly_commutator(*lyndon_expansion(u), *lyndon_expansion(v)));
  }
  std::lock_guard<std::mutex> lock(mutex);
  return cache.emplace(word, std::move(result)).first->second;
}

}  // namespace detail

// Element of the free Lie algebra on n generators truncated at degree
// `trunc`, written in the Lyndon basis.  Terms are deg-lex sorted with no
// zero coefficients.
class LieSeries {
 public:
  using Term = std::pair<LyndonWord, Rational>;

  LieSeries(int n, int trunc) : n_(n), trunc_(trunc) {
    if (n < 1) throw IndexOutOfRange("generator count must be at least 1");
    if (trunc < 0) throw Error("truncation order must be non-negative");
  }

  static LieSeries zero(int n, int trunc) { return LieSeries(n, trunc); }

  static LieSeries generator(int n, int trunc, int i) {
    LieSeries s(n, trunc);
    if (i < 1 || i > n)
      throw IndexOutOfRange("generator index " + std::to_string(i) +
                            " outside 1.." + std::to_string(n));
    if (trunc >= 1)
      s.terms_.emplace_back(LyndonWord{std::string(1, static_cast<char>(i))},
                            1);
    return s;
  }

  static LieSeries make(int n, int trunc, std::vector<Term> raw) {
    LieSeries s(n, trunc);
    for (const auto& t : raw) {
      if (!is_lyndon(t.first.letters))
        throw Error("basis word is not a Lyndon word");
      if (t.first.degree() > trunc)
        throw Error("basis word degree exceeds truncation order");
      for (char ch : t.first.letters)
        if (ch < 1 || static_cast<int>(ch) > n)
          throw IndexOutOfRange("basis word letter outside 1..n");
    }
    s.terms_ = std::move(raw);
    std::sort(s.terms_.begin(), s.terms_.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < s.terms_.size();) {
      LyndonWord w = s.terms_[i].first;
      Rational c = s.terms_[i].second;
      for (++i; i < s.terms_.size() && s.terms_[i].first == w; ++i)
        c += s.terms_[i].second;
      if (c != 0) s.terms_[out++] = {std::move(w), std::move(c)};
    }
    s.terms_.resize(out);
    return s;
  }

  int n() const { return n_; }
  int trunc() const { return trunc_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(const LyndonWord& w) const {
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), w,
        [](const Term& t, const LyndonWord& key) { return t.first < key; });
    if (it != terms_.end() && it->first == w) return it->second;
    return Rational(0);
  }

  LieSeries homogeneous_part(int d) const {
    LieSeries out(n_, trunc_);
    for (const auto& t : terms_)
      if (t.first.degree() == d) out.terms_.push_back(t);
    return out;
  }

  LieSeries truncated(int new_trunc) const {
    if (new_trunc < 0) throw Error("truncation order must be non-negative");
    LieSeries out(n_, new_trunc);
    for (const auto& t : terms_)
      if (t.first.degree() <= new_trunc) out.terms_.push_back(t);
    return out;
  }

  int min_degree() const {
    return terms_.empty() ? trunc_ + 1 : terms_.front().first.degree();
  }

  friend bool operator==(const LieSeries&, const LieSeries&) = default;

 private:
  int n_;
  int trunc_;
  std::vector<Term> terms_;

  friend LieSeries lie_add(const LieSeries&, const LieSeries&);
  friend LieSeries lie_scale(const Rational&, const LieSeries&);
};

inline void check_context(const LieSeries& a, const LieSeries& b) {
  if (a.n() != b.n() || a.trunc() != b.trunc())
    throw MismatchedContext(
        "series contexts differ: (" + std::to_string(a.n()) + "," +
        std::to_string(a.trunc()) + ") vs (" + std::to_string(b.n()) + "," +
        std::to_string(b.trunc()) + ")");
}

inline LieSeries lie_add(const LieSeries& a, const LieSeries& b) {
  check_context(a, b);
  LieSeries out(a.n(), a.trunc());
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

inline LieSeries lie_scale(const Rational& c, const LieSeries& a) {
  LieSeries out(a.n(), a.trunc());
  if (c == 0) return out;
  out.terms_.reserve(a.terms_.size());
  for (const auto& t : a.terms_) out.terms_.emplace_back(t.first, c * t.second);
  return out;
}

inline LieSeries operator+(const LieSeries& a, const LieSeries& b) {
  return lie_add(a, b);
}
inline LieSeries operator-(const LieSeries& a) {
  return lie_scale(Rational(-1), a);
}
inline LieSeries operator-(const LieSeries& a, const LieSeries& b) {
  return lie_add(a, lie_scale(Rational(-1), b));
}
inline LieSeries operator*(const Rational& c, const LieSeries& a) {
  return lie_scale(c, a);
}

// Expands each Lyndon basis word through its standard bracketing into the
// associative envelope.
inline NcSeries lie_to_assoc(const LieSeries& l) {
  std::vector<NcSeries::Term> scratch;
  for (const auto& [w, c] : l.terms()) {
    const auto expansion = detail::lyndon_expansion(w.letters);
    for (const auto& [mono, mc] : *expansion)
      scratch.emplace_back(Monomial{mono}, c * mc);
  }
  return NcSeries::make(l.n(), l.trunc(), std::move(scratch));
}

// Dynkin map: X_{i1}..X_{ik} -> [..[[X_{i1},X_{i2}],X_{i3}]..,X_{ik}], the
// left-normed bracketing, expanded in the associative algebra.  A series p of
// homogeneous degree d is a Lie element iff dynkin(p) = d*p.
inline NcSeries dynkin(const NcSeries& p) {
  if (p.constant_term() != 0)
    throw NonzeroConstantTerm("dynkin requires a vanishing constant term");
  std::vector<NcSeries::Term> scratch;
  for (const auto& [m, c] : p.terms()) {
    detail::Poly cur{{m.letters.substr(0, 1), Rational(1)}};
    for (std::size_t t = 1; t < m.letters.size(); ++t) {
      const std::string letter = m.letters.substr(t, 1);
      cur = detail::poly_commutator(cur, {{letter, Rational(1)}});
    }
    for (const auto& [mono, mc] : cur)
      scratch.emplace_back(Monomial{mono}, c * mc);
  }
  return NcSeries::make(p.n(), p.trunc(), std::move(scratch));
}

// Inverse of lie_to_assoc on primitive series: per degree, first guard with
// the Dynkin-Specht-Wever criterion, then peel Lyndon leading monomials by
// triangular back-substitution.
inline LieSeries assoc_to_lie(const NcSeries& p) {
  if (p.constant_term() != 0)
    throw NotALieElement("nonzero constant term");
  std::vector<LieSeries::Term> result;
  for (int d = 1; d <= p.trunc(); ++d) {
    NcSeries part = p.homogeneous_part(d);
    if (part.is_zero()) continue;
    if (dynkin(part) != nc_scale(Rational(d), part))
      throw NotALieElement("degree " + std::to_string(d) +
                           " part fails the Dynkin-Specht-Wever criterion");
    detail::Poly residual;
    residual.reserve(part.terms().size());
    for (const auto& [m, c] : part.terms())
      residual.emplace_back(m.letters, c);
    while (!residual.empty()) {
      const std::string word = residual.front().first;
      const Rational c = residual.front().second;
      if (!is_lyndon(word))
        throw NotALieElement("residual leading monomial is not Lyndon");
      result.emplace_back(LyndonWord{word}, c);
      const auto expansion = detail::lyndon_expansion(word);
      detail::Poly scratch = std::move(residual);
      for (const auto& [mono, mc] : *expansion)
        scratch.emplace_back(mono, -c * mc);
      residual = detail::poly_normalize(std::move(scratch));
    }
  }
  return LieSeries::make(p.n(), p.trunc(), std::move(result));
}

// Lie bracket computed through the associative envelope.
inline LieSeries bracket(const LieSeries& a, const LieSeries& b) {
  check_context(a, b);
  NcSeries ea = lie_to_assoc(a), eb = lie_to_assoc(b);
  return assoc_to_lie(nc_sub(nc_mul(ea, eb), nc_mul(eb, ea)));
}

// Baker-Campbell-Hausdorff product log(exp(a) exp(b)), computed in the
// truncated associative envelope and pulled back to the Lyndon basis.
inline LieSeries bch(const LieSeries& a, const LieSeries& b) {
  check_context(a, b);
  return assoc_to_lie(
      nc_log(nc_mul(nc_exp(lie_to_assoc(a)), nc_exp(lie_to_assoc(b)))));
}

// "0", or terms like "1/2 * [x1,x2]" joined with +/- separators, deg-lex
// ordered; degree-1 basis words render bare as "x1".
inline std::string to_text(const LieSeries& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [w, c] : s.terms()) {
    Rational abs = c < 0 ? Rational(-c) : c;
    if (out.empty()) {
      out += c < 0 ? "-" : "";
      out += rational_text(abs);
    } else {
      out += c < 0 ? " - " : " + ";
      out += rational_text(abs);
    }
    out += " * " + bracketed_text(w.letters);
  }
  return out;
}

}  // namespace chlink
