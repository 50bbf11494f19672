#pragma once

#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "chlink/error.hpp"
#include "chlink/groupword.hpp"

namespace chlink {

enum class TokenKind { Positive, Negative, Double };

struct Token {
  int position;  // 1..m-1, the pair of adjacent strand positions it acts on
  TokenKind kind;

  friend bool operator==(const Token&, const Token&) = default;
};

// Word presentation of an (optionally singular) string link on m strands.
// Crossing tokens sj / sj' act like braid generators and transpose the two
// strand positions; a double token tj is a clasp-type self-intersection of
// the two strands, which returns them to their own positions (its
// resolutions are the same-sign crossing pairs sj sj and sj' sj').  Purity
// therefore constrains the crossing tokens alone: their transpositions must
// compose to the identity permutation.
class StringLinkWord {
 public:
  StringLinkWord(int strands, std::vector<Token> tokens)
      : strands_(strands), tokens_(std::move(tokens)) {
    if (strands_ < 1) throw SyntaxError("strand count must be at least 1");
    for (const Token& t : tokens_)
      if (t.position < 1 || t.position >= strands_)
        throw PositionOutOfRange(
            "position " + std::to_string(t.position) + " outside 1.." +
            std::to_string(strands_ - 1) + " on " + std::to_string(strands_) +
            " strands");
    std::vector<int> pos(strands_);
    std::iota(pos.begin(), pos.end(), 0);
    for (const Token& t : tokens_)
      if (t.kind != TokenKind::Double)
        std::swap(pos[t.position - 1], pos[t.position]);
    for (int p = 0; p < strands_; ++p)
      if (pos[p] != p)
        throw NotPure("crossing permutation is not the identity");
  }

  int strands() const { return strands_; }
  const std::vector<Token>& tokens() const { return tokens_; }

  int double_count() const {
    int k = 0;
    for (const Token& t : tokens_)
      if (t.kind == TokenKind::Double) ++k;
    return k;
  }
  bool has_doubles() const { return double_count() > 0; }

  friend bool operator==(const StringLinkWord&, const StringLinkWord&) =
      default;

 private:
  int strands_;
  std::vector<Token> tokens_;
};

// One way of resolving every double point: signs[t] is the sign given to the
// t-th double token (in word order), epsilon = (-1)^(number of negatives).
struct Resolution {
  std::vector<int> signs;
  int epsilon;
};

// All 2^k resolutions, k = number of double tokens, in the fixed order where
// the first double token's sign alternates fastest.  Each double resolves to
// a same-sign crossing pair.
inline std::vector<std::pair<Resolution, StringLinkWord>> resolutions(
    const StringLinkWord& w) {
  const int k = w.double_count();
  std::vector<std::pair<Resolution, StringLinkWord>> out;
  out.reserve(std::size_t{1} << k);
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Resolution r;
    r.signs.reserve(k);
    int negatives = 0;
    std::vector<Token> tokens;
    tokens.reserve(w.tokens().size() + k);
    int t = 0;
    for (const Token& tok : w.tokens()) {
      if (tok.kind != TokenKind::Double) {
        tokens.push_back(tok);
        continue;
      }
      const int sign = (mask >> t) & 1 ? -1 : 1;
      r.signs.push_back(sign);
      if (sign < 0) ++negatives;
      const TokenKind kind =
          sign > 0 ? TokenKind::Positive : TokenKind::Negative;
      tokens.push_back(Token{tok.position, kind});
      tokens.push_back(Token{tok.position, kind});
      ++t;
    }
    r.epsilon = negatives % 2 ? -1 : 1;
    out.emplace_back(std::move(r), StringLinkWord(w.strands(), std::move(tokens)));
  }
  return out;
}

namespace detail {

// Image of one signed letter under the elementary Artin automorphism of a
// single crossing.  Positive crossing at position j:
//   xj -> xj x(j+1) xj^-1,   x(j+1) -> xj,   others fixed.
inline void apply_crossing_letter(const Token& t, int letter, GroupWord* out) {
  const int j = t.position, a = j, b = j + 1;
  const int i = letter > 0 ? letter : -letter;
  if (t.kind == TokenKind::Positive) {
    if (i == a) {
      if (letter > 0) {
        out->push(a), out->push(b), out->push(-a);
      } else {
        out->push(a), out->push(-b), out->push(-a);
      }
    } else if (i == b) {
      out->push(letter > 0 ? a : -a);
    } else {
      out->push(letter);
    }
  } else {
    if (i == a) {
      out->push(letter > 0 ? b : -b);
    } else if (i == b) {
      if (letter > 0) {
        out->push(-b), out->push(a), out->push(b);
      } else {
        out->push(-b), out->push(-a), out->push(b);
      }
    } else {
      out->push(letter);
    }
  }
}

inline GroupWord apply_crossing(const Token& t, const GroupWord& w) {
  GroupWord out(w.n());
  for (int letter : w.letters()) apply_crossing_letter(t, letter, &out);
  return out;
}

}  // namespace detail

// Images of the free generators under the Artin automorphism of a
// non-singular word.  Tokens act left to right: the word "a b" induces
// phi_b o phi_a.
inline std::vector<GroupWord> artin_automorphism(const StringLinkWord& w) {
  if (w.has_doubles())
    throw HasDoublePoints("Artin automorphism needs a non-singular word");
  const int n = w.strands();
  std::vector<GroupWord> images;
  images.reserve(n);
  for (int i = 1; i <= n; ++i) images.push_back(GroupWord::generator(n, i));
  for (const Token& t : w.tokens())
    for (GroupWord& img : images) img = detail::apply_crossing(t, img);
  return images;
}

struct LongitudeSystem {
  int n = 0;
  std::vector<GroupWord> longs;
  std::vector<std::vector<long long>> linking;

  friend bool operator==(const LongitudeSystem&, const LongitudeSystem&) =
      default;
};

// Longitude system of a pure non-singular word.  phi(xi) reduces to
// wi xi wi^-1 with xi exactly in the middle; the longitude is wi * xi^-e
// where e is the xi-exponent of wi.  Right multiplication keeps li a genuine
// conjugator of xi (conjugators differ exactly by right xi-powers) while
// zeroing the framing, so li is the parallel pushoff of strand i as a based
// free-group loop.  The linking matrix counts signed crossings between
// distinct strands (each crossing contributes once, two per full twist).
inline LongitudeSystem longitudes(const StringLinkWord& w) {
  const int n = w.strands();
  LongitudeSystem sys;
  sys.n = n;
  sys.linking.assign(n, std::vector<long long>(n, 0));

  std::vector<int> pos(n);
  std::iota(pos.begin(), pos.end(), 0);
  for (const Token& t : w.tokens()) {
    if (t.kind == TokenKind::Double)
      throw HasDoublePoints("longitudes need a non-singular word");
    const int a = pos[t.position - 1], b = pos[t.position];
    const int sign = t.kind == TokenKind::Positive ? 1 : -1;
    sys.linking[a][b] += sign;
    sys.linking[b][a] += sign;
    std::swap(pos[t.position - 1], pos[t.position]);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (sys.linking[i][j] % 2 != 0)
        throw std::logic_error("odd crossing count between pure strands");
      sys.linking[i][j] /= 2;
    }

  const std::vector<GroupWord> images = artin_automorphism(w);
  for (int i = 1; i <= n; ++i) {
    const GroupWord& u = images[i - 1];
    if (u.size() % 2 != 1 || u.letters()[u.size() / 2] != i)
      throw std::logic_error("Artin image is not a conjugate of its generator");
    GroupWord conj(n);
    for (int p = 0; p < u.size() / 2; ++p) conj.push(u.letters()[p]);
    const int e = conj.exponent_sum(i);
    GroupWord li = word_concat(conj, word_power(GroupWord::generator(n, i), -e));
    if (li.exponent_sum(i) != 0)
      throw std::logic_error("longitude framing normalization failed");
    if (!(word_concat(word_concat(li, GroupWord::generator(n, i)),
                      word_invert(li)) == u))
      throw std::logic_error("longitude does not conjugate its meridian");
    for (int j = 1; j <= n; ++j)
      if (j != i && li.exponent_sum(j) != sys.linking[i - 1][j - 1])
        throw std::logic_error(
            "longitude exponent sum disagrees with the linking matrix");
    sys.longs.push_back(std::move(li));
  }
  return sys;
}

// Longitude system of the everywhere-reversed link: each longitude read
// backward, linking unchanged.
inline LongitudeSystem reverse_system(const LongitudeSystem& sys) {
  LongitudeSystem out;
  out.n = sys.n;
  out.linking = sys.linking;
  out.longs.reserve(sys.longs.size());
  for (const GroupWord& l : sys.longs) out.longs.push_back(word_reverse(l));
  return out;
}

inline StringLinkWord link_concat(const StringLinkWord& a,
                                  const StringLinkWord& b) {
  if (a.strands() != b.strands())
    throw MismatchedContext("strand counts differ: " +
                            std::to_string(a.strands()) + " vs " +
                            std::to_string(b.strands()));
  std::vector<Token> tokens = a.tokens();
  tokens.insert(tokens.end(), b.tokens().begin(), b.tokens().end());
  return StringLinkWord(a.strands(), std::move(tokens));
}

// Inverse string link: tokens reversed, crossing signs flipped, doubles kept.
inline StringLinkWord link_inverse(const StringLinkWord& w) {
  std::vector<Token> tokens;
  tokens.reserve(w.tokens().size());
  for (auto it = w.tokens().rbegin(); it != w.tokens().rend(); ++it) {
    Token t = *it;
    if (t.kind == TokenKind::Positive)
      t.kind = TokenKind::Negative;
    else if (t.kind == TokenKind::Negative)
      t.kind = TokenKind::Positive;
    tokens.push_back(t);
  }
  return StringLinkWord(w.strands(), std::move(tokens));
}

// File grammar: optional '#' comments and blank lines, a "strands <m>"
// header, then at most one line of whitespace-separated tokens
// s<digits>, s<digits>', t<digits>.
inline StringLinkWord parse_word(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> significant;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    significant.push_back(line);
  }
  if (significant.empty())
    throw SyntaxError("missing 'strands <m>' header line");
  if (significant.size() > 2)
    throw SyntaxError("expected a single token line after the header");

  std::istringstream header(significant[0]);
  std::string keyword;
  long m = 0;
  if (!(header >> keyword >> m) || keyword != "strands" || m < 1 ||
      (header >> keyword))
    throw SyntaxError("bad header line '" + significant[0] +
                      "', expected 'strands <m>'");

  std::vector<Token> tokens;
  if (significant.size() == 2) {
    std::istringstream body(significant[1]);
    std::string tok;
    while (body >> tok) {
      std::string t = tok;
      bool prime = false;
      if (t.size() >= 2 && t.back() == '\'') {
        prime = true;
        t.pop_back();
      }
      if (t.size() < 2 || (t[0] != 's' && t[0] != 't') ||
          t.find_first_not_of("0123456789", 1) != std::string::npos)
        throw SyntaxError("bad token '" + tok + "'");
      if (t[0] == 't' && prime)
        throw SyntaxError("bad token '" + tok + "': double points take no sign");
      const int position = std::atoi(t.c_str() + 1);
      TokenKind kind = t[0] == 't'   ? TokenKind::Double
                       : prime       ? TokenKind::Negative
                                     : TokenKind::Positive;
      tokens.push_back(Token{position, kind});
    }
  }
  return StringLinkWord(static_cast<int>(m), std::move(tokens));
}

// Canonical file form; parse(to_text(w)) == w.
inline std::string to_text(const StringLinkWord& w) {
  std::string out = "strands " + std::to_string(w.strands()) + "\n";
  std::string body;
  for (const Token& t : w.tokens()) {
    if (!body.empty()) body += ' ';
    body += t.kind == TokenKind::Double ? 't' : 's';
    body += std::to_string(t.position);
    if (t.kind == TokenKind::Negative) body += '\'';
  }
  out += body + "\n";
  return out;
}

}  // namespace chlink
