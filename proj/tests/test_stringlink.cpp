#include "chlink/stringlink.hpp"

#include <numeric>
#include <random>
#include <vector>

#include "gtest/gtest.h"

using namespace chlink;

namespace {

// Substitute the images of an automorphism into a word: x_i -> images[i-1].
GroupWord substitute(const std::vector<GroupWord>& images, const GroupWord& w) {
  GroupWord out(w.n());
  for (int letter : w.letters()) {
    const GroupWord& img = images[static_cast<std::size_t>(std::abs(letter)) - 1];
    out = word_concat(out, letter > 0 ? img : word_invert(img));
  }
  return out;
}

bool tokens_pure(int m, const std::vector<Token>& toks) {
  std::vector<int> pos(m);
  std::iota(pos.begin(), pos.end(), 0);
  for (const Token& t : toks)
    if (t.kind != TokenKind::Double)
      std::swap(pos[t.position - 1], pos[t.position]);
  for (int p = 0; p < m; ++p)
    if (pos[p] != p) return false;
  return true;
}

StringLinkWord random_pure_word(std::mt19937_64& rng, int m, int max_len,
                                bool allow_doubles) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> pos(1, m - 1);
  std::uniform_int_distribution<int> kind(0, allow_doubles ? 2 : 1);
  for (;;) {
    std::vector<Token> toks;
    const int L = len(rng);
    for (int i = 0; i < L; ++i) {
      const int k = kind(rng);
      toks.push_back(Token{pos(rng), k == 0   ? TokenKind::Positive
                                     : k == 1 ? TokenKind::Negative
                                              : TokenKind::Double});
    }
    if (tokens_pure(m, toks)) return StringLinkWord(m, std::move(toks));
  }
}

StringLinkWord from_tokens(int m, const std::string& body) {
  return parse_word("strands " + std::to_string(m) + "\n" + body + "\n");
}

}  // namespace

TEST(StringLinkWord, PurityGuard) {
  EXPECT_THROW(from_tokens(2, "s1"), NotPure);
  EXPECT_THROW(from_tokens(3, "s1 s2"), NotPure);
  EXPECT_NO_THROW(from_tokens(2, "s1 s1'"));
  // double points do not move strands, so a lone t1 is pure
  EXPECT_NO_THROW(from_tokens(2, "t1"));
}

TEST(StringLinkWord, ParseErrors) {
  EXPECT_THROW(parse_word(""), SyntaxError);
  EXPECT_THROW(parse_word("strands\ns1 s1\n"), SyntaxError);
  EXPECT_THROW(parse_word("strands 2 extra\ns1 s1\n"), SyntaxError);
  EXPECT_THROW(parse_word("strands 2\ns1 s1\ns1 s1\n"), SyntaxError);
  EXPECT_THROW(from_tokens(2, "t1'"), SyntaxError);
  EXPECT_THROW(from_tokens(2, "u1"), SyntaxError);
  EXPECT_THROW(from_tokens(2, "s"), SyntaxError);
  EXPECT_THROW(from_tokens(2, "s2 s2"), PositionOutOfRange);
  EXPECT_THROW(from_tokens(1, "s1 s1"), PositionOutOfRange);
}

TEST(StringLinkWord, ParsePrintRoundTrip) {
  const std::string canonical = "strands 3\ns1 s2' t2 s1 s2' s1 s2'\n";
  // parsing tolerates comments and ragged whitespace
  const StringLinkWord w = parse_word(
      "# a three strand example\n\nstrands 3\n  s1   s2' t2 s1 s2' s1 s2'\n");
  EXPECT_EQ(to_text(w), canonical);
  EXPECT_EQ(parse_word(to_text(w)), w);
  const StringLinkWord empty = parse_word("strands 4\n");
  EXPECT_EQ(to_text(empty), "strands 4\n\n");
  EXPECT_EQ(parse_word(to_text(empty)), empty);
}

TEST(StringLinkWord, Resolutions) {
  const StringLinkWord w = from_tokens(2, "t1 s1 s1' t1 t1");
  EXPECT_EQ(w.double_count(), 3);
  const auto res = resolutions(w);
  ASSERT_EQ(res.size(), 8u);
  int epsilon_sum = 0;
  for (const auto& [r, resolved] : res) {
    ASSERT_EQ(r.signs.size(), 3u);
    EXPECT_FALSE(resolved.has_doubles());
    // each double point becomes a same-sign clasp, adding one token
    EXPECT_EQ(resolved.tokens().size(), w.tokens().size() + 3u);
    int expected_eps = 1;
    for (int s : r.signs)
      if (s < 0) expected_eps = -expected_eps;
    EXPECT_EQ(r.epsilon, expected_eps);
    epsilon_sum += r.epsilon;
  }
  EXPECT_EQ(epsilon_sum, 0);
}

TEST(StringLinkWord, ResolutionOfPositiveDouble) {
  const auto res = resolutions(from_tokens(2, "t1"));
  ASSERT_EQ(res.size(), 2u);
  EXPECT_EQ(res[0].first.epsilon, 1);
  EXPECT_EQ(res[0].second, from_tokens(2, "s1 s1"));
  EXPECT_EQ(res[1].first.epsilon, -1);
  EXPECT_EQ(res[1].second, from_tokens(2, "s1' s1'"));
}

TEST(Artin, ElementaryImages) {
  const auto images = artin_automorphism(from_tokens(2, "s1 s1'"));
  EXPECT_EQ(images[0], GroupWord::generator(2, 1));
  EXPECT_EQ(images[1], GroupWord::generator(2, 2));
  const auto hopf = artin_automorphism(from_tokens(2, "s1 s1"));
  EXPECT_EQ(hopf[0], GroupWord::from_letters(2, {1, 2, 1, -2, -1}));
  EXPECT_EQ(hopf[1], GroupWord::from_letters(2, {1, 2, -1}));
}

TEST(Artin, SingularWordsAreRejected) {
  EXPECT_THROW(artin_automorphism(from_tokens(2, "t1")), HasDoublePoints);
  EXPECT_THROW(longitudes(from_tokens(2, "t1")), HasDoublePoints);
}

TEST(Artin, BraidRelations) {
  // braid relation on three strands: the two sides induce one automorphism
  const auto a = artin_automorphism(from_tokens(3, "s1 s2 s1 s2' s1' s2'"));
  for (std::size_t i = 0; i < a.size(); ++i)
    EXPECT_TRUE(a[i] == GroupWord::generator(3, static_cast<int>(i) + 1));
  // far commutation on four strands
  const auto b = artin_automorphism(from_tokens(4, "s1 s3 s1' s3'"));
  for (std::size_t i = 0; i < b.size(); ++i)
    EXPECT_TRUE(b[i] == GroupWord::generator(4, static_cast<int>(i) + 1));
}

TEST(Artin, FixesTheProductOfGenerators) {
  std::mt19937_64 rng(401);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 2 + trial % 3;
    const StringLinkWord w = random_pure_word(rng, m, 6, false);
    const auto images = artin_automorphism(w);
    std::vector<int> all(m);
    std::iota(all.begin(), all.end(), 1);
    const GroupWord product = GroupWord::from_letters(m, all);
    ASSERT_EQ(substitute(images, product), product);
  }
}

TEST(Artin, ActsLeftToRight) {
  std::mt19937_64 rng(402);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 2 + trial % 3;
    const StringLinkWord u = random_pure_word(rng, m, 5, false);
    const StringLinkWord v = random_pure_word(rng, m, 5, false);
    const auto iu = artin_automorphism(u);
    const auto iv = artin_automorphism(v);
    const auto iuv = artin_automorphism(link_concat(u, v));
    for (int i = 0; i < m; ++i)
      ASSERT_EQ(iuv[i], substitute(iv, iu[i]));
  }
}

TEST(Longitudes, HopfGolden) {
  const LongitudeSystem sys = longitudes(from_tokens(2, "s1 s1"));
  EXPECT_EQ(sys.n, 2);
  EXPECT_EQ(to_text(sys.longs[0]), "x1 x2 x1'");
  EXPECT_EQ(to_text(sys.longs[1]), "x1");
  const std::vector<std::vector<long long>> lk = {{0, 1}, {1, 0}};
  EXPECT_EQ(sys.linking, lk);
}

TEST(Longitudes, AntiHopfGolden) {
  const LongitudeSystem sys = longitudes(from_tokens(2, "s1' s1'"));
  EXPECT_EQ(to_text(sys.longs[0]), "x2'");
  EXPECT_EQ(to_text(sys.longs[1]), "x2' x1' x2");
  const std::vector<std::vector<long long>> lk = {{0, -1}, {-1, 0}};
  EXPECT_EQ(sys.linking, lk);
}

TEST(Longitudes, BorromeanGolden) {
  const LongitudeSystem sys =
      longitudes(from_tokens(3, "s1 s2' s1 s2' s1 s2'"));
  EXPECT_EQ(to_text(sys.longs[1]), "x1 x3 x1' x3'");
  for (const auto& row : sys.linking)
    for (long long v : row) EXPECT_EQ(v, 0);
}

TEST(Longitudes, DefiningProperties) {
  std::mt19937_64 rng(403);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 2 + trial % 3;
    const StringLinkWord w = random_pure_word(rng, m, 6, false);
    const LongitudeSystem sys = longitudes(w);
    const auto images = artin_automorphism(w);
    for (int i = 1; i <= m; ++i) {
      const GroupWord& l = sys.longs[i - 1];
      // zero framing
      ASSERT_EQ(l.exponent_sum(i), 0);
      // the longitude conjugates its meridian to the Artin image
      const GroupWord conj = word_concat(
          word_concat(l, GroupWord::generator(m, i)), word_invert(l));
      ASSERT_EQ(conj, images[i - 1]);
      // off-diagonal exponent sums read off the linking matrix
      for (int j = 1; j <= m; ++j)
        if (j != i) ASSERT_EQ(l.exponent_sum(j), sys.linking[i - 1][j - 1]);
    }
    // linking matrix is symmetric with zero diagonal
    for (int i = 0; i < m; ++i) {
      ASSERT_EQ(sys.linking[i][i], 0);
      for (int j = 0; j < m; ++j)
        ASSERT_EQ(sys.linking[i][j], sys.linking[j][i]);
    }
  }
}

TEST(Longitudes, ConcatAdditiveOnLinking) {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 2 + trial % 2;
    const StringLinkWord u = random_pure_word(rng, m, 5, false);
    const StringLinkWord v = random_pure_word(rng, m, 5, false);
    const auto lu = longitudes(u).linking;
    const auto lv = longitudes(v).linking;
    const auto luv = longitudes(link_concat(u, v)).linking;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        ASSERT_EQ(luv[i][j], lu[i][j] + lv[i][j]);
  }
}

TEST(Longitudes, InverseCancels) {
  std::mt19937_64 rng(405);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 2 + trial % 2;
    const StringLinkWord w = random_pure_word(rng, m, 6, false);
    const StringLinkWord unit = link_concat(w, link_inverse(w));
    const auto images = artin_automorphism(unit);
    for (int i = 1; i <= m; ++i)
      ASSERT_EQ(images[i - 1], GroupWord::generator(m, i));
    const LongitudeSystem sys = longitudes(unit);
    for (int i = 0; i < m; ++i) ASSERT_TRUE(sys.longs[i].is_identity());
  }
}

TEST(Longitudes, ReverseSystem) {
  const LongitudeSystem sys = longitudes(from_tokens(2, "s1 s1"));
  const LongitudeSystem rev = reverse_system(sys);
  EXPECT_EQ(to_text(rev.longs[0]), "x1' x2 x1");
  EXPECT_EQ(to_text(rev.longs[1]), "x1");
  EXPECT_EQ(rev.linking, sys.linking);
}

TEST(Longitudes, ConcatMismatchThrows) {
  EXPECT_THROW(
      link_concat(from_tokens(2, "s1 s1"), from_tokens(3, "s1 s1")),
      MismatchedContext);
}
