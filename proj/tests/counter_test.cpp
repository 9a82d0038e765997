#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "flw/counter.hpp"

using namespace flw;

namespace {

std::vector<Word> all_words(const std::vector<Symbol>& letters, std::size_t n) {
  std::vector<Word> out{U""}, layer{U""};
  for (std::size_t len = 1; len <= n; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (Symbol c : letters) next.push_back(w + c);
    }
    out.insert(out.end(), next.begin(), next.end());
    layer.swap(next);
  }
  return out;
}

bool acc(const CounterMachine& m, const Word& w) {
  Verdict v = accepts(m, w);
  EXPECT_NE(v, Verdict::budget_exhausted) << to_string(w);
  return v == Verdict::accept;
}

}  // namespace

TEST(FromSemilinear, Examples) {
  Alphabet ab{"a", "b"};
  auto m = from_semilinear(fx::diagonal(), ab);
  EXPECT_TRUE(acc(m, U"ab"));
  EXPECT_FALSE(acc(m, U"aab"));
  EXPECT_TRUE(acc(m, U""));
  EXPECT_FALSE(is_deterministic(m));

  auto run = from_semilinear({LinearSet({1, 1}, {{1, 0}})}, ab);
  for (Word w : {U"ab", U"aab", U"ba"}) EXPECT_TRUE(acc(run, w));
  for (Word w : {U"b", U"abb"}) EXPECT_FALSE(acc(run, w));

  auto zero = from_semilinear({LinearSet({0, 0}, {})}, ab);
  for (const auto& w : all_words({U'a', U'b'}, 5)) EXPECT_EQ(acc(zero, w), w.empty());
}

TEST(FromSemilinear, SoundAndCompleteToLengthEight) {
  for (const auto& f : fx::semilinear_fixtures()) {
    auto alpha = fx::letter_alphabet(f.letters);
    auto m = from_semilinear(f.q, alpha);
    for (const auto& w : all_words(alpha.symbols(), f.letters.size() == 3 ? 6 : 8)) {
      ASSERT_EQ(acc(m, w), member(f.q, parikh(w, alpha))) << f.name << " " << to_string(w);
    }
  }
}

TEST(Accepts, LambdaWordWithAcceptingInitial) {
  CounterMachine m;
  m.alphabet = Alphabet{"a"};
  m.initial = m.add_state("q");
  m.accepting = {m.initial};
  m.add(m.initial, CounterInput::end_marker(), "", m.initial, {});
  EXPECT_EQ(accepts(m, U""), Verdict::accept);
  EXPECT_EQ(accepts(m, U"a"), Verdict::reject);
}

TEST(Accepts, ReversalBoundIsEnforced) {
  // one counter: up on a, down on b; reversal bound 1 forbids abab
  CounterMachine m;
  m.counters = 1;
  m.reversal_bound = 1;
  m.alphabet = Alphabet{"a", "b"};
  int q = m.add_state("q");
  int f = m.add_state("f");
  m.initial = q;
  m.accepting = {f};
  m.add(q, CounterInput::of(U'a'), "*", q, {1});
  m.add(q, CounterInput::of(U'b'), "1", q, {-1});
  m.add(q, CounterInput::end_marker(), "0", f, {0});
  EXPECT_EQ(accepts(m, U"aabb"), Verdict::accept);
  EXPECT_EQ(accepts(m, U"abab"), Verdict::reject);
  m.reversal_bound = 3;
  EXPECT_EQ(accepts(m, U"abab"), Verdict::accept);
}

TEST(Accepts, BudgetExhaustionIsReported) {
  // lambda loop that increments forever before the end-marker
  CounterMachine m;
  m.counters = 1;
  m.reversal_bound = 1;
  m.alphabet = Alphabet{"a"};
  int q = m.add_state("q");
  m.initial = q;
  m.add(q, CounterInput::eps(), "*", q, {1});
  EXPECT_EQ(accepts(m, U"a"), Verdict::budget_exhausted);
}

TEST(Validate, RejectsDecrementOnZero) {
  CounterMachine m;
  m.counters = 1;
  m.alphabet = Alphabet{"a"};
  int q = m.add_state("q");
  m.add(q, CounterInput::eps(), "*", q, {-1});
  EXPECT_THROW(m.validate(), Error);
}

TEST(IsDeterministic, Examples) {
  CounterMachine m;
  m.counters = 1;
  m.alphabet = Alphabet{"a"};
  int q = m.add_state("q");
  int p = m.add_state("p");
  m.add(q, CounterInput::of(U'a'), "*", p, {0});
  EXPECT_TRUE(is_deterministic(m));
  m.add(q, CounterInput::eps(), "0", q, {1});
  EXPECT_FALSE(is_deterministic(m));
  CounterMachine split = m;
  split.transitions.pop_back();
  split.transitions[0].pattern = "1";
  split.add(q, CounterInput::eps(), "0", q, {1});
  EXPECT_TRUE(is_deterministic(split));
}

TEST(DcmForBounded, Diagonal) {
  auto spec = BoundedSpec::ginsburg({U"a", U"b"}, fx::diagonal());
  auto cert = find_echelon_certificate(*spec.q1);
  ASSERT_TRUE(cert);
  auto m = dcm_for_bounded(spec, *cert);
  EXPECT_TRUE(is_deterministic(m));
  EXPECT_TRUE(acc(m, U"aabb"));
  EXPECT_FALSE(acc(m, U"aab"));
  EXPECT_FALSE(acc(m, U"ba"));
}

TEST(DcmForBounded, EvenBlocks) {
  auto spec = BoundedSpec::ginsburg({U"a"}, {LinearSet({0}, {{2}})});
  auto m = dcm_for_bounded(spec, *find_echelon_certificate(*spec.q1));
  EXPECT_TRUE(is_deterministic(m));
  for (std::size_t n = 0; n < 12; ++n) EXPECT_EQ(acc(m, Word(n, U'a')), n % 2 == 0);
}

TEST(DcmForBounded, AgreesWithSpecOnFixtures) {
  for (const auto& f : fx::semilinear_fixtures()) {
    auto words = fx::letter_words(f.letters);
    auto spec = BoundedSpec::ginsburg(words, f.q);
    auto cert = find_echelon_certificate(f.q);
    ASSERT_TRUE(cert) << f.name;
    auto m = dcm_for_bounded(spec, *cert);
    EXPECT_TRUE(is_deterministic(m)) << f.name;
    for (const auto& w : all_words(m.alphabet.symbols(), f.letters.size() == 3 ? 7 : 10)) {
      ASSERT_EQ(acc(m, w), induced_member(spec, w)) << f.name << " " << to_string(w);
    }
  }
}

TEST(DcmForBounded, Errors) {
  auto spec = BoundedSpec::ginsburg({U"ab", U"b"}, fx::diagonal());
  EXPECT_THROW(dcm_for_bounded(spec, EchelonCertificate{{{0}}, {{0}}}), Error);
  // periods (1,1),(1,0): no order puts zeros after the pivots of both
  SemilinearSet q{LinearSet({0, 0}, {{1, 1}, {1, 0}})};
  auto spec2 = BoundedSpec::ginsburg({U"a", U"b"}, q);
  EXPECT_THROW(dcm_for_bounded(spec2, EchelonCertificate{{{0, 1}}, {{0, 0}}}), Error);
}

TEST(CountAcceptedWords, BalancedWords) {
  // counts a's and b's on two counters, then drains both together
  CounterMachine m;
  m.counters = 2;
  m.reversal_bound = 1;
  m.alphabet = Alphabet{"a", "b"};
  int r = m.add_state("read");
  int d = m.add_state("drain");
  int f = m.add_state("accept");
  m.initial = r;
  m.accepting = {f};
  m.add(r, CounterInput::of(U'a'), "**", r, {1, 0});
  m.add(r, CounterInput::of(U'b'), "**", r, {0, 1});
  m.add(r, CounterInput::end_marker(), "**", d, {0, 0});
  m.add(d, CounterInput::eps(), "11", d, {-1, -1});
  m.add(d, CounterInput::eps(), "00", f, {0, 0});
  ASSERT_TRUE(is_deterministic(m));
  auto counts = count_accepted_words(m, 10);
  for (std::size_t n = 0; n <= 10; ++n) {
    std::size_t brute = 0;
    for (const auto& w : all_words({U'a', U'b'}, n)) {
      if (w.size() == n && acc(m, w)) ++brute;
    }
    EXPECT_EQ(counts[n], BigInt(brute)) << n;
  }
}

TEST(DecideBounded, Examples) {
  auto a = BoundedSpec::ginsburg({U"a", U"b"}, fx::positive_diagonal());
  auto b = BoundedSpec::ginsburg({U"a", U"b"}, fx::upper_half());
  EXPECT_TRUE(decide_bounded(a, b, Relation::subset).holds);
  EXPECT_TRUE(decide_bounded(a, a, Relation::equal).holds);
  auto c = BoundedSpec::ginsburg({U"a", U"b"}, fx::shifted_diagonal());
  auto r = decide_bounded(a, c, Relation::disjoint);
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.witness);
  auto back = decide_bounded(b, a, Relation::subset);
  EXPECT_FALSE(back.holds);
  ASSERT_TRUE(back.witness);
  EXPECT_TRUE(induced_member(b, *back.witness));
  EXPECT_FALSE(induced_member(a, *back.witness));
}

TEST(DecideBounded, Errors) {
  auto a = BoundedSpec::ginsburg({U"a", U"b"}, fx::diagonal());
  auto c = BoundedSpec::ginsburg({U"a", U"c"}, fx::diagonal());
  EXPECT_THROW(decide_bounded(a, c, Relation::equal), Error);
  auto x = BoundedSpec::ginsburg({U"a", U"aa"}, fx::diagonal());
  EXPECT_THROW(decide_bounded(x, x, Relation::equal), Error);
  DecideOptions opt;
  opt.assert_injective = true;
  try {
    decide_bounded(x, x, Relation::equal, opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("injectivity-assertion-failed"), std::string::npos);
  }
  auto y = BoundedSpec::ginsburg({U"ab", U"b"}, fx::diagonal());
  EXPECT_TRUE(decide_bounded(y, y, Relation::equal, opt).holds);
}
