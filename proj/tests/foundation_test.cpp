#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "flw/foundation.hpp"
#include "flw/oracle.hpp"

using namespace flw;

namespace {

Word random_word(std::mt19937& rng, const std::u32string& letters, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  Word w;
  for (std::size_t n = len(rng); n > 0; --n) w.push_back(letters[pick(rng)]);
  return w;
}

}  // namespace

TEST(Parikh, Counts) {
  Alphabet ab{"a", "b"};
  EXPECT_EQ(parikh(U"abb", ab), (Vec{1, 2}));
  EXPECT_EQ(parikh(U"", ab), (Vec{0, 0}));
  // abb + bab bab + abb abb abb: one a per block, six blocks
  Word w = U"abbbabbababbabbabb";
  std::int64_t a = 0, b = 0;
  for (char32_t c : w) (c == U'a' ? a : b)++;
  EXPECT_EQ(parikh(w, ab), (Vec{a, b}));
  EXPECT_EQ(parikh(w, ab), (Vec{6, 12}));
}

TEST(Parikh, RejectsForeignSymbol) {
  Alphabet ab{"a", "b"};
  EXPECT_THROW(parikh(U"abc", ab), Error);
}

TEST(Parikh, AdditiveOnRandomPairs) {
  Alphabet abc{"a", "b", "c"};
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    Word u = random_word(rng, U"abc", 12), v = random_word(rng, U"abc", 12);
    EXPECT_EQ(parikh(u + v, abc), add(parikh(u, abc), parikh(v, abc)));
  }
}

TEST(CommEquivalent, Examples) {
  EXPECT_TRUE(comm_equivalent(U"ab", U"ba"));
  EXPECT_FALSE(comm_equivalent(U"ab", U"abb"));
  EXPECT_TRUE(comm_equivalent(U"abbbab", U"bbabab"));
}

TEST(CommEquivalent, IsEquivalenceRelation) {
  std::mt19937 rng(11);
  std::vector<Word> sample;
  for (int i = 0; i < 40; ++i) sample.push_back(random_word(rng, U"ab", 4));
  for (const auto& u : sample) {
    EXPECT_TRUE(comm_equivalent(u, u));
    for (const auto& v : sample) {
      EXPECT_EQ(comm_equivalent(u, v), comm_equivalent(v, u));
      for (const auto& w : sample) {
        if (comm_equivalent(u, v) && comm_equivalent(v, w)) {
          EXPECT_TRUE(comm_equivalent(u, w));
        }
      }
    }
  }
}

TEST(Decompositions, Examples) {
  EXPECT_EQ(decompositions(U"aabb", {U"a", U"b"}), (std::set<Vec>{{2, 2}}));
  EXPECT_EQ(decompositions(U"aa", {U"a", U"a"}), (std::set<Vec>{{0, 2}, {1, 1}, {2, 0}}));
  EXPECT_TRUE(decompositions(U"ab", {U"b", U"a"}).empty());
  EXPECT_EQ(decompositions(U"", {U"ab"}), (std::set<Vec>{{0}}));
  EXPECT_THROW(decompositions(U"a", {U""}), Error);
}

// Every returned tuple rebuilds w, and every tuple that rebuilds w is returned.
TEST(Decompositions, ExhaustiveReconstruction) {
  std::vector<std::vector<Word>> tuples = {{U"a", U"b"}, {U"ab", U"b"}, {U"a", U"a"}, {U"ab", U"ba", U"a"}, {U"aba", U"ab"}};
  for (const auto& blocks : tuples) {
    std::set<Word> seen;
    // all words over {a,b} up to length 12 in layers
    std::vector<Word> layer{U""};
    for (std::size_t len = 0; len <= 12; ++len) {
      for (const auto& w : layer) {
        auto decs = decompositions(w, blocks);
        for (const auto& t : decs) {
          Word rebuilt;
          for (std::size_t i = 0; i < t.size(); ++i) rebuilt += power(blocks[i], t[i]);
          EXPECT_EQ(rebuilt, w);
        }
      }
      std::vector<Word> next;
      for (const auto& w : layer) {
        next.push_back(w + U"a");
        next.push_back(w + U"b");
      }
      layer.swap(next);
    }
    // completeness: generate tuples and check they are found
    std::function<void(std::size_t, Vec&, std::size_t)> gen = [&](std::size_t i, Vec& t, std::size_t len) {
      if (i == blocks.size()) {
        Word w;
        for (std::size_t j = 0; j < t.size(); ++j) w += power(blocks[j], t[j]);
        EXPECT_TRUE(decompositions(w, blocks).count(t));
        return;
      }
      for (std::int64_t e = 0; len + e * blocks[i].size() <= 12; ++e) {
        t[i] = e;
        gen(i + 1, t, len + e * blocks[i].size());
      }
      t[i] = 0;
    };
    Vec t(blocks.size(), 0);
    gen(0, t, 0);
  }
}

TEST(Symbols, MultiCharacterNamesRoundTrip) {
  Symbol x = sym("X_{1,2}");
  EXPECT_EQ(name_of(x), "X_{1,2}");
  EXPECT_EQ(sym("X_{1,2}"), x);
  EXPECT_NE(x, sym("X_{1,3}"));
  EXPECT_EQ(sym("a"), U'a');
  EXPECT_THROW(sym(""), Error);
  EXPECT_THROW(Alphabet({sym("a"), sym("a")}), Error);
}

TEST(Symbols, ShortlexOrder) {
  std::vector<Word> ws = {U"b", U"ab", U"", U"a", U"ba"};
  sort_shortlex(ws);
  EXPECT_EQ(ws, (std::vector<Word>{U"", U"a", U"b", U"ab", U"ba"}));
}

TEST(Enumerate, Examples) {
  EXPECT_EQ(enumerate(FiniteSpec{{U"ab", U"b"}}, 1).words, (std::vector<Word>{U"b"}));
  auto diag = BoundedSpec::ginsburg({U"a", U"b"}, fx::diagonal());
  EXPECT_EQ(enumerate(diag, 4).words, (std::vector<Word>{U"", U"ab", U"aabb"}));
  EXPECT_EQ(enumerate(fx::xsx_grammar(), 3).words, (std::vector<Word>{U"a#a", U"b#b"}));
}

TEST(Enumerate, BoundedAgreesWithBruteForceMembership) {
  auto spec = fx::l3_spec();
  std::vector<Word> brute, layer{U""};
  for (std::size_t len = 0; len <= 12; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      if (induced_member(spec, w)) brute.push_back(w);
      next.push_back(w + U"a");
      next.push_back(w + U"b");
    }
    layer.swap(next);
  }
  sort_shortlex(brute);
  EXPECT_EQ(enumerate(spec, 12).words, brute);
}

TEST(Enumerate, SpecKindsAgree) {
  auto q = fx::diagonal();
  auto bounded = enumerate(BoundedSpec::ginsburg({U"a", U"b"}, q), 10);
  auto machine = enumerate(from_semilinear(q, Alphabet{"a", "b"}), 10);
  auto system = enumerate(semilinear_to_etol(q, fx::syms({"a", "b"})), 10);
  EXPECT_TRUE(machine.complete);
  // the machine accepts every word whose Parikh vector lies in q
  std::vector<Word> by_parikh, layer{U""};
  for (std::size_t len = 0; len <= 10; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      if (member(q, parikh(w, Alphabet{"a", "b"}))) by_parikh.push_back(w);
      next.push_back(w + U"a");
      next.push_back(w + U"b");
    }
    layer.swap(next);
  }
  sort_shortlex(by_parikh);
  EXPECT_EQ(machine.words, by_parikh);
  EXPECT_EQ(system.words, bounded.words);
  EXPECT_EQ(enumerate(RegexSpec::parse("a*b"), 3).words, (std::vector<Word>{U"b", U"ab", U"aab"}));
}

TEST(Enumerate, MonotoneInLength) {
  std::vector<LanguageSpec> specs = {fx::xsx_grammar(), fx::wsw_reduced(), fx::l3_spec(), RegexSpec::parse("(ab|b)*")};
  for (const auto& s : specs) {
    auto big = enumerate(s, 10).words;
    for (std::size_t n = 0; n < 10; ++n) {
      auto small = enumerate(s, n).words;
      ASSERT_LE(small.size(), big.size());
      EXPECT_TRUE(std::equal(small.begin(), small.end(), big.begin()));
    }
  }
}
