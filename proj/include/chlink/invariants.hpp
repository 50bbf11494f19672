#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chlink/error.hpp"
#include "chlink/groupword.hpp"
#include "chlink/lieseries.hpp"
#include "chlink/ncseries.hpp"
#include "chlink/stringlink.hpp"

namespace chlink {

// The derivation attached to a longitude system at truncation s:
// parts[i-1] = [rho(li), Xi], supported in degrees 2..s.
struct Derivation {
  int n = 0;
  int trunc = 0;
  std::vector<LieSeries> parts;

  bool is_zero() const {
    for (const LieSeries& p : parts)
      if (!p.is_zero()) return false;
    return true;
  }

  friend bool operator==(const Derivation&, const Derivation&) = default;
};

inline Derivation derivation(const LongitudeSystem& sys, int s) {
  if (s < 2) throw Error("derivation needs truncation order at least 2");
  Derivation d;
  d.n = sys.n;
  d.trunc = s;
  d.parts.reserve(sys.n);
  for (int i = 1; i <= sys.n; ++i) {
    LieSeries part = bracket(ch_expand(sys.longs[i - 1], s),
                             LieSeries::generator(sys.n, s, i));
    if (!part.is_zero() && part.min_degree() < 2)
      throw std::logic_error("derivation part has a term below degree 2");
    d.parts.push_back(std::move(part));
  }
  return d;
}

inline Derivation derivation_add(const Derivation& a, const Derivation& b) {
  if (a.n != b.n || a.trunc != b.trunc)
    throw MismatchedContext("derivation contexts differ");
  Derivation out;
  out.n = a.n;
  out.trunc = a.trunc;
  for (int i = 0; i < a.n; ++i)
    out.parts.push_back(lie_add(a.parts[i], b.parts[i]));
  return out;
}

inline Derivation derivation_scale(const Rational& c, const Derivation& a) {
  Derivation out;
  out.n = a.n;
  out.trunc = a.trunc;
  for (const LieSeries& p : a.parts) out.parts.push_back(lie_scale(c, p));
  return out;
}

// First non-vanishing homogeneous layer of the derivation: the degree d and
// the n degree-d parts (trunc d).  degree == 0 marks the zero invariant.
struct FirstOrderInvariant {
  int degree = 0;
  std::vector<LieSeries> parts;

  bool is_zero() const { return degree == 0; }

  friend bool operator==(const FirstOrderInvariant&,
                         const FirstOrderInvariant&) = default;
};

inline FirstOrderInvariant scale(const Rational& c,
                                 const FirstOrderInvariant& f) {
  FirstOrderInvariant out;
  out.degree = f.degree;
  for (const LieSeries& p : f.parts) out.parts.push_back(lie_scale(c, p));
  return out;
}

inline FirstOrderInvariant ch_first_nonvanishing(const LongitudeSystem& sys,
                                                 int s_max) {
  if (s_max < 2) throw Error("ch_first_nonvanishing needs s_max at least 2");
  const Derivation d = derivation(sys, s_max);
  for (int deg = 2; deg <= s_max; ++deg) {
    bool nonzero = false;
    for (const LieSeries& p : d.parts)
      if (!p.homogeneous_part(deg).is_zero()) nonzero = true;
    if (!nonzero) continue;
    FirstOrderInvariant f;
    f.degree = deg;
    for (const LieSeries& p : d.parts)
      f.parts.push_back(p.homogeneous_part(deg).truncated(deg));
    return f;
  }
  return FirstOrderInvariant{};
}

// One first-order Milnor number: value = coefficient of X_{i1}..X_{id} in
// the Magnus expansion of longitude j, reported as index (i1,..,id,j).
struct MuValue {
  std::vector<int> index;
  Integer value;

  friend bool operator==(const MuValue&, const MuValue&) = default;
};

// All nonzero Milnor numbers at the first non-vanishing total degree, ordered
// by longitude then deg-lex monomial.  Empty when every longitude expands to
// 1 through degree s_max.  First-order values are integers; a fractional
// coefficient here would be a defect.
inline std::vector<MuValue> mu_first_nonvanishing(const LongitudeSystem& sys,
                                                  int s_max) {
  if (s_max < 1) throw Error("mu_first_nonvanishing needs s_max at least 1");
  std::vector<NcSeries> expansions;
  expansions.reserve(sys.n);
  int d = s_max + 1;
  for (const GroupWord& l : sys.longs) {
    NcSeries e = magnus_expand(l, s_max);
    e = nc_sub(e, NcSeries::one(sys.n, s_max));
    if (!e.is_zero()) d = std::min(d, e.min_degree());
    expansions.push_back(std::move(e));
  }
  std::vector<MuValue> out;
  if (d > s_max) return out;
  for (int j = 1; j <= sys.n; ++j) {
    for (const auto& [m, c] : expansions[j - 1].terms()) {
      if (m.degree() != d) continue;
      if (c.get_den() != 1)
        throw std::logic_error("first non-vanishing Magnus coefficient is "
                               "not an integer");
      MuValue v;
      for (char ch : m.letters) v.index.push_back(static_cast<int>(ch));
      v.index.push_back(j);
      v.value = c.get_num();
      out.push_back(std::move(v));
    }
  }
  return out;
}

enum class InvertVerdict { Distinct, Inconclusive };

struct InvertReport {
  InvertVerdict verdict = InvertVerdict::Inconclusive;
  FirstOrderInvariant forward;
  FirstOrderInvariant reversed;
};

// Compares the first-order invariant of a word with that of its reverse.
// DISTINCT is sound (at the first non-vanishing order the invariant has no
// indeterminacy); INCONCLUSIVE never claims invertibility.
inline InvertReport detect_noninvertible(const StringLinkWord& w, int s_max) {
  if (w.has_doubles())
    throw HasDoublePoints("invertibility check needs a non-singular word");
  const LongitudeSystem sys = longitudes(w);
  InvertReport report;
  report.forward = ch_first_nonvanishing(sys, s_max);
  report.reversed = ch_first_nonvanishing(reverse_system(sys), s_max);
  const bool differ = !(report.forward == report.reversed);
  report.verdict =
      differ ? InvertVerdict::Distinct : InvertVerdict::Inconclusive;
  return report;
}

// The ring endomorphism Phi of the truncated algebra attached to a
// non-singular word: Xi -> log E(phi(xi)), extended multiplicatively to
// monomials.
struct PhiEndomorphism {
  int n = 0;
  int trunc = 0;
  std::vector<NcSeries> images;

  NcSeries apply(const Monomial& m) const {
    NcSeries out = NcSeries::one(n, trunc);
    for (char ch : m.letters)
      out = nc_mul(out, images[static_cast<int>(ch) - 1]);
    return out;
  }

  NcSeries apply(const NcSeries& p) const {
    NcSeries out = NcSeries::zero(n, trunc);
    for (const auto& [m, c] : p.terms())
      out = nc_add(out, nc_scale(c, apply(m)));
    return out;
  }
};

// Phi is induced by the Artin automorphism through the exponential
// expansion: Phi(Xi) = log E(phi(xi)).  Since phi(xi) = w xi w^-1 for a
// conjugator w, this is the conjugation log E(w) exp(Xi) E(w)^-1, computed
// here directly from the automorphism image (independent of any choice of
// conjugator representative).
inline PhiEndomorphism phi_endomorphism(const StringLinkWord& w, int s) {
  const std::vector<GroupWord> images = artin_automorphism(w);
  PhiEndomorphism phi;
  phi.n = w.strands();
  phi.trunc = s;
  phi.images.reserve(images.size());
  for (const GroupWord& img : images)
    phi.images.push_back(nc_log(exp_expand(img, s)));
  return phi;
}

struct VanishingCounterexample {
  std::string where;   // offending monomial or component
  std::string series;  // text form of the nonzero alternating sum
};

struct VanishingReport {
  std::string check;
  int s = 0;
  int k = 0;
  bool pass = false;
  std::optional<VanishingCounterexample> counterexample;
};

namespace detail {

struct PhiSweep {
  const std::vector<PhiEndomorphism>& phis;
  const std::vector<int>& epsilons;
  int n;
  int s;
  std::optional<VanishingCounterexample> failure;

  bool check(const Monomial& m, const std::vector<NcSeries>& products) {
    NcSeries sum = NcSeries::zero(n, s);
    for (std::size_t j = 0; j < products.size(); ++j)
      sum = nc_add(sum, nc_scale(Rational(epsilons[j]), products[j]));
    if (sum.is_zero()) return true;
    failure = VanishingCounterexample{m.text(), to_text(sum)};
    return false;
  }

  // Preorder walk of the monomial tree, extending per-resolution products of
  // generator images one letter at a time.
  bool walk(Monomial& m, const std::vector<NcSeries>& products) {
    if (!check(m, products)) return false;
    if (m.degree() == s) return true;
    for (int g = 1; g <= n; ++g) {
      m.letters.push_back(static_cast<char>(g));
      std::vector<NcSeries> next;
      next.reserve(products.size());
      for (std::size_t j = 0; j < products.size(); ++j)
        next.push_back(nc_mul(products[j], phis[j].images[g - 1]));
      if (!walk(m, next)) return false;
      m.letters.pop_back();
    }
    return true;
  }
};

}  // namespace detail

// Sum of epsilon_j Phi_j over all resolutions, evaluated on every monomial of
// degree <= s.  Guaranteed to pass when k >= s; smaller k may genuinely fail.
inline VanishingReport vanishing_check_phi(const StringLinkWord& w, int s) {
  if (s < 1) throw Error("vanishing check needs s at least 1");
  const int k = w.double_count();
  if (k == 0)
    throw NoDoublePoints("vanishing check needs at least one double point");
  VanishingReport report{"phi", s, k, false, std::nullopt};

  std::vector<PhiEndomorphism> phis;
  std::vector<int> epsilons;
  for (const auto& [res, word] : resolutions(w)) {
    phis.push_back(phi_endomorphism(word, s));
    epsilons.push_back(res.epsilon);
  }
  detail::PhiSweep sweep{phis, epsilons, w.strands(), s, std::nullopt};
  Monomial m = Monomial::unit();
  std::vector<NcSeries> ones(phis.size(), NcSeries::one(w.strands(), s));
  report.pass = sweep.walk(m, ones);
  report.counterexample = std::move(sweep.failure);
  return report;
}

// Sum of epsilon_j times the longitude derivation over all resolutions.
// The degree-2..s space is empty at s = 1, so that case passes trivially.
inline VanishingReport vanishing_check_bracket(const StringLinkWord& w,
                                               int s) {
  if (s < 1) throw Error("vanishing check needs s at least 1");
  const int k = w.double_count();
  if (k == 0)
    throw NoDoublePoints("vanishing check needs at least one double point");
  VanishingReport report{"bracket", s, k, false, std::nullopt};
  if (s == 1) {
    report.pass = true;
    return report;
  }
  Derivation sum;
  bool first = true;
  for (const auto& [res, word] : resolutions(w)) {
    Derivation d = derivation_scale(Rational(res.epsilon),
                                    derivation(longitudes(word), s));
    sum = first ? std::move(d) : derivation_add(sum, d);
    first = false;
  }
  report.pass = sum.is_zero();
  if (!report.pass) {
    for (int i = 0; i < sum.n; ++i)
      if (!sum.parts[i].is_zero()) {
        report.counterexample = VanishingCounterexample{
            "component " + std::to_string(i + 1), to_text(sum.parts[i])};
        break;
      }
  }
  return report;
}

// Weight of the underlying chord arrangement: the degree-s layer of the
// alternating derivation sum of a word with exactly s-1 double points.
// Every layer below degree s must cancel; that is checked, not assumed.
inline std::vector<LieSeries> chord_weight(const StringLinkWord& w, int s) {
  if (s < 1) throw Error("chord weight needs s at least 1");
  const int k = w.double_count();
  if (k != s - 1)
    throw WrongDoubleCount("chord weight at order " + std::to_string(s) +
                           " needs exactly " + std::to_string(s - 1) +
                           " double points, got " + std::to_string(k));
  if (s == 1)
    return std::vector<LieSeries>(w.strands(), LieSeries::zero(w.strands(), 1));
  Derivation sum;
  bool first = true;
  for (const auto& [res, word] : resolutions(w)) {
    Derivation d = derivation_scale(Rational(res.epsilon),
                                    derivation(longitudes(word), s));
    sum = first ? std::move(d) : derivation_add(sum, d);
    first = false;
  }
  for (int deg = 2; deg < s; ++deg)
    for (const LieSeries& p : sum.parts)
      if (!p.homogeneous_part(deg).is_zero())
        throw std::logic_error(
            "chord weight: alternating sum has a term below degree " +
            std::to_string(s));
  std::vector<LieSeries> out;
  out.reserve(sum.parts.size());
  for (const LieSeries& p : sum.parts)
    out.push_back(p.homogeneous_part(s));
  return out;
}

}  // namespace chlink
