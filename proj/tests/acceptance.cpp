// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "flw/series.hpp"
#include "flw/vecautomata.hpp"

using namespace flw;

namespace {

// Collects the first few mismatches of one criterion.
struct Check {
  std::vector<std::string> failures;
  std::size_t checked = 0;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok && failures.size() == 5) failures.push_back("...");
  }
  bool ok() const { return failures.empty(); }
};

int failed = 0;

void criterion(int n, const std::string& title, const std::function<void(Check&)>& body) {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostringstream time;
  time.precision(2);
  time << std::fixed << secs;
  std::cout << (c.ok() ? "PASS" : "FAIL") << " " << n << " " << title << " (" << c.checked << " checks, " << time.str()
            << "s)" << std::endl;
  for (const auto& f : c.failures) std::cout << "    " << f << "\n";
  if (!c.ok()) ++failed;
}

std::vector<Symbol> letters_of(const std::vector<std::string>& names) { return fx::syms(names); }

bool error_mentions(const std::function<void()>& f, const std::string& needle) {
  try {
    f();
  } catch (const Error& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

// Visits every matrix sequence up to max_len with the forms it reaches.
void each_sequence(const MatrixGrammar& g, std::size_t max_len,
                   const std::function<bool(const std::vector<std::size_t>&, const std::set<Word>&)>& visit) {
  std::vector<std::size_t> alpha;
  std::function<void(const std::set<Word>&)> rec = [&](const std::set<Word>& forms) {
    if (!visit(alpha, forms) || alpha.size() == max_len) return;
    for (std::size_t m = 0; m < g.matrices.size(); ++m) {
      std::set<Word> next;
      for (const auto& x : forms) {
        auto s = apply_matrix(g, x, m);
        next.insert(s.begin(), s.end());
      }
      alpha.push_back(m);
      rec(next);
      alpha.pop_back();
    }
  };
  rec({Word(1, g.start)});
}

Dfa xsx_szilard_by_hand() {
  Dfa d;
  d.letters = 5;
  int s = d.add_state(), ab = d.add_state(), fin = d.add_state(true);
  d.initial = s;
  d.delta[s][0] = ab;
  d.delta[ab][1] = ab;
  d.delta[ab][2] = ab;
  d.delta[ab][3] = fin;
  d.delta[ab][4] = fin;
  return d;
}

std::vector<BigInt> central_binomials(std::size_t count) {
  std::vector<BigInt> out;
  BigInt c = 1;
  for (std::size_t n = 0; n < count; ++n) {
    out.push_back(c);
    c = c * (2 * n + 1) * (2 * n + 2) / ((n + 1) * (n + 1));
  }
  return out;
}

LinearSet random_linear(std::mt19937& rng, std::size_t k) {
  Vec c(k);
  for (auto& x : c) x = rng() % 3;
  std::vector<Vec> periods;
  std::size_t np = rng() % 3;
  while (periods.size() < np) {
    Vec p(k);
    for (auto& x : p) x = rng() % 3;
    if (std::any_of(p.begin(), p.end(), [](std::int64_t x) { return x != 0; })) periods.push_back(p);
  }
  return LinearSet(c, periods);
}

SemilinearSet random_set(std::mt19937& rng, std::size_t k) {
  SemilinearSet q;
  std::size_t n = 1 + rng() % 2;
  for (std::size_t i = 0; i < n; ++i) q.components.push_back(random_linear(rng, k));
  return q;
}

// Same set written with its first period doubled: constants c and c + p.
SemilinearSet split_first_period(const SemilinearSet& q) {
  SemilinearSet out;
  for (const auto& l : q.components) {
    if (l.periods.empty()) {
      out.components.push_back(l);
      continue;
    }
    auto ps = l.periods;
    Vec p = ps[0];
    ps[0] = add(p, p);
    out.components.emplace_back(l.constant, ps);
    out.components.emplace_back(add(l.constant, p), ps);
  }
  return out;
}

}  // namespace

int main() {
  criterion(1, "counter machine from a semilinear set accepts exactly its Parikh preimage, length <= 10", [](Check& c) {
    for (const auto& f : fx::semilinear_fixtures()) {
      auto alpha = fx::letter_alphabet(f.letters);
      auto m = from_semilinear(f.q, alpha);
      for (const auto& w : words_upto(alpha.symbols(), 10)) {
        Verdict v = accepts(m, w);
        bool want = member(f.q, parikh(w, alpha));
        c.expect(v != Verdict::budget_exhausted && (v == Verdict::accept) == want, f.name + " " + to_string(w));
      }
    }
  });

  criterion(2, "semilinear set to ETOL system: language equals phi(Q) to length 12, index within k", [](Check& c) {
    for (const auto& f : fx::semilinear_fixtures()) {
      auto g = semilinear_to_etol(f.q, letters_of(f.letters));
      auto slice = enumerate_etol(g, 12);
      c.expect(slice.complete, f.name + " enumeration incomplete");
      c.expect(slice.words == phi_image(fx::letter_words(f.letters), f.q, 12), f.name + " language differs");
      auto audit = index_audit(g, 12);
      c.expect(audit.max_index <= f.letters.size(), f.name + " index " + std::to_string(audit.max_index));
    }
  });

  criterion(3, "boundedness notions: Ginsburg vs Parikh witness pair and the L3 verdicts", [](Check& c) {
    BoundedSpec g = BoundedSpec::ginsburg({U"a", U"b", U"a"}, {LinearSet({1, 1, 1}, {{1, 1, 1}})});
    BoundedSpec p({U"a", U"b", U"a"}, BoundedKind::parikh, std::nullopt, SemilinearSet{LinearSet({2, 1}, {{2, 1}})},
                  Alphabet{"a", "b"});
    // independent filter: all words of length <= 4 over {a,b} tested against the definitions
    std::vector<Word> lg, lp;
    for (const auto& w : words_upto({U'a', U'b'}, 4)) {
      auto ds = decompositions(w, g.words);
      bool in_g = std::any_of(ds.begin(), ds.end(), [](const Vec& t) { return t[0] == t[1] && t[1] == t[2] && t[0] > 0; });
      auto pv = parikh(w, Alphabet{"a", "b"});
      bool in_p = !ds.empty() && pv[0] == 2 * pv[1] && pv[1] > 0;
      if (in_g) lg.push_back(w);
      if (in_p) lp.push_back(w);
    }
    c.expect(lg == std::vector<Word>{U"aba"}, "Ginsburg slice");
    c.expect(lp == (std::vector<Word>{U"aab", U"aba", U"baa"}), "Parikh slice");
    c.expect(enumerate_exact(g, 4) == lg, "Ginsburg oracle disagrees with filter");
    c.expect(enumerate_exact(p, 4) == lp, "Parikh oracle disagrees with filter");

    auto l3 = fx::l3_spec();
    c.expect(!induced_member(l3, power(U"abbb", 2) + power(U"aab", 3)), "(abbb)^2 (aab)^3 accepted");
    c.expect(induced_member(l3, power(U"abbb", 2) + power(U"aab", 5)), "(abbb)^2 (aab)^5 rejected");
  });

  criterion(4, "decide_bounded agrees with enumeration to length 30 on 50 random spec pairs", [](Check& c) {
    std::mt19937 rng(7103);
    const std::vector<Word> pool{U"a", U"b", U"c"};
    std::size_t holds[3] = {0, 0, 0};
    for (int pair = 0; pair < 50; ++pair) {
      std::size_t k = 2 + rng() % 2;
      std::vector<Word> words(pool.begin(), pool.begin() + k);
      std::shuffle(words.begin(), words.end(), rng);
      SemilinearSet q1 = random_set(rng, k), q2;
      switch (pair % 3) {
        case 0: q2 = random_set(rng, k); break;
        case 1:
          q2 = q1;
          q2.components.push_back(random_linear(rng, k));
          break;
        default: q2 = split_first_period(q1); break;
      }
      if (rng() % 2) std::swap(q1, q2);
      auto s1 = BoundedSpec::ginsburg(words, q1);
      auto s2 = BoundedSpec::ginsburg(words, q2);
      auto a = enumerate_exact(s1, 30), b = enumerate_exact(s2, 30);
      std::set<Word> sa(a.begin(), a.end()), sb(b.begin(), b.end());
      bool eq = sa == sb;
      bool sub = std::includes(sb.begin(), sb.end(), sa.begin(), sa.end());
      bool dis = std::none_of(sa.begin(), sa.end(), [&](const Word& w) { return sb.count(w) > 0; });
      const std::pair<Relation, bool> rels[] = {{Relation::equal, eq}, {Relation::subset, sub}, {Relation::disjoint, dis}};
      for (std::size_t r = 0; r < 3; ++r) {
        auto res = decide_bounded(s1, s2, rels[r].first);
        c.expect(res.holds == rels[r].second, "pair " + std::to_string(pair) + " " + to_string(rels[r].first));
        holds[r] += res.holds;
      }
    }
    // the generator must exercise both verdicts of every relation
    for (std::size_t r = 0; r < 3; ++r) c.expect(holds[r] > 0 && holds[r] < 50, "relation " + std::to_string(r) + " degenerate");
  });

  criterion(5, "matrix -> reduced ETOL -> EDTOL -> matrix keeps words and derivation counts to length 7", [](Check& c) {
    auto g = fx::xsx_grammar();
    auto e = matrix_to_reduced_etol(g, 2);
    auto d = reduced_etol_to_edtol(e, 2);
    auto back = reduced_etol_to_matrix(d, 2);
    auto words = enumerate_matrix(g, 7).words;
    c.expect(words == fx::xsx_words(7), "source grammar differs from {x#x}");
    c.expect(enumerate_etol(e, 7).words == words, "reduced ETOL language");
    c.expect(enumerate_etol(d, 7).words == words, "EDTOL language");
    c.expect(enumerate_matrix(back, 7).words == words, "matrix language");
    for (const auto& w : words) {
      auto n = count_derivations(g, w).count;
      c.expect(count_trees(e, w).count == n && count_trees(d, w).count == n && count_derivations(back, w).count == n,
               "counts at " + to_string(w));
    }
  });

  criterion(6, "normal form, Szilard automaton and the theta check on {x#x}", [](Check& c) {
    auto g = fx::xsx_grammar();
    c.expect(!normal_form_violation(g, 2).has_value(), "normal form violated");
    auto s = szilard_dfa(g, 2);
    c.expect(equivalent(s.dfa, xsx_szilard_by_hand()), "Szilard automaton differs from m1(m2|m3)*(m4|m5)");
    auto th = theta(g);
    Dfa d = s.dfa;
    d.complete();
    std::size_t accepted = 0;
    each_sequence(g, 8, [&](const std::vector<std::size_t>& alpha, const std::set<Word>& forms) {
      for (const auto& x : forms) {
        Word p = g.profile(x);
        c.expect(std::set<Symbol>(p.begin(), p.end()).size() == p.size(), "repeated nonterminal in " + to_string(x));
      }
      int q = d.initial;
      for (std::size_t m : alpha) q = d.delta[q][m];
      bool derived = forms.size() == 1 && g.profile(*forms.begin()).empty();
      c.expect(d.accepting[q] == derived, "Szilard acceptance vs replay");
      if (d.accepting[q]) {
        ++accepted;
        c.expect(derived && comm_equivalent(*forms.begin(), theta_of(th, alpha)), "theta image differs");
      }
      return !forms.empty();
    });
    c.expect(accepted > 0, "no accepted sequence explored");
  });

  criterion(7, "counting series: {x#x} rational, balanced words not rational to order 8", [](Check& c) {
    auto t = counting_coefficients(fx::xsx_grammar(), 17, 2);
    c.expect(t.values() == brute_counting(fx::xsx_grammar(), 17).values(), "coefficients differ from brute counts");
    for (std::size_t n = 1; n <= 8; ++n) c.expect(t.terms[2 * n + 1].value == (BigInt(1) << n), "f(2n+1) at n=" + std::to_string(n));
    auto s = fit_support(t.values(), 3);
    c.expect(s.fit && s.fit->order == 1 && s.fit->coefficients == std::vector<Rational>{2}, "no order-1 recurrence");

    auto counts = count_accepted_words(fx::balanced_dcm(), 39);
    auto cb = central_binomials(40);
    for (std::size_t n = 0; n < 40; ++n) c.expect(counts[n] == (n % 2 ? BigInt(0) : cb[n / 2]), "count at " + std::to_string(n));
    c.expect(brute_counting(fx::balanced_dcm(), 12).values() == std::vector<BigInt>(counts.begin(), counts.begin() + 13),
             "machine counts differ from enumeration");
    c.expect(!fit_recurrence(counts, 8), "recurrence found for raw counts");
    std::vector<BigInt> even;
    for (std::size_t n = 0; n < 80; n += 2) even.push_back(n < 40 ? counts[n] : cb[n / 2]);
    c.expect(!fit_recurrence(even, 8), "recurrence found for 40 central binomials");
  });

  criterion(8, "unambiguous bounded ETOL: one derivation tree per word to length 10", [](Check& c) {
    for (const auto& f : fx::semi_simple_fixtures()) {
      c.expect(validate_semi_simple(f.q, 12).verdict, f.name + " not semi-simple");
      auto g = unambiguous_bounded_etol(f.words, f.q);
      auto words = enumerate_etol(g, 10).words;
      c.expect(words == phi_image(f.words, f.q, 10), f.name + " language differs");
      for (const auto& w : words) {
        auto r = count_trees(g, w);
        c.expect(r.complete && r.count == 1, f.name + " " + to_string(w));
      }
    }
  });

  criterion(9, "prefix code construction on 100 random inputs and (ab,ab) -> (ab,ba)", [](Check& c) {
    c.expect(build_prefix_code({U"ab", U"ab"}) == (std::vector<Word>{U"ab", U"ba"}), "(ab,ab) example");
    std::mt19937 rng(20240611);
    const std::vector<Symbol> letters{U'a', U'b', U'c'};
    int tested = 0;
    while (tested < 100) {
      std::size_t m = 1 + rng() % 5;
      std::vector<Word> vs;
      std::map<Symbol, int> powers;
      bool valid = true;
      for (std::size_t i = 0; i < m; ++i) {
        std::size_t len = m + rng() % (9 - m);
        Word w;
        for (std::size_t j = 0; j < len; ++j) w.push_back(letters[rng() % (i % 2 ? 2 : 3)]);
        valid = valid && !(is_letter_power(w) && ++powers[w[0]] > 1);
        vs.push_back(w);
      }
      if (!valid) continue;
      auto w = build_prefix_code(vs);
      bool prefix_free = w.size() == vs.size();
      for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = 0; j < w.size(); ++j) {
          if (i != j && w[j].compare(0, w[i].size(), w[i]) == 0) prefix_free = false;
        }
      }
      bool comm = w.size() == vs.size();
      for (std::size_t i = 0; comm && i < w.size(); ++i) comm = comm_equivalent(w[i], vs[i]);
      c.expect(prefix_free && comm, "input " + std::to_string(tested));
      ++tested;
    }
  });

  criterion(10, "regular witnesses are commutatively equivalent; {a^(2^n)} rejected", [](Check& c) {
    auto check = [&](const std::string& name, const LanguageSpec& source, const RegularWitness& w, std::size_t len) {
      auto v = verify_comm_equivalence(source, w.automaton, len);
      c.expect(v.equivalent, name + " differs at " + (v.witness ? to_string(*v.witness) : std::string("?")));
    };
    for (const auto& [name, g] : {std::pair{"cor2", fx::cor2_grammar()}, std::pair{"cor2-4", fx::cor2_grammar4()}}) {
      check(name, g, regularize_matrix(g, cor2_code(g), 2), 12);
    }
    check("anbn", fx::anbn_reduced(), regularize_etol(fx::anbn_reduced(), fx::anbn_codes(), 2), 12);
    check("padded", fx::padded_reduced(), regularize_etol(fx::padded_reduced(), cor2_etol_codes(fx::padded_reduced()), 2), 12);
    check("edol-finite", fx::edol_finite(), edol_regularize(fx::edol_finite(), 1), 12);

    auto abn = edol_regularize(fx::edol_abn(), 1);
    std::multiset<Vec> left, right;
    Alphabet ab{"a", "b"};
    for (const auto& w : enumerate_etol(fx::edol_abn(), 15).words) left.insert(parikh(w, ab));
    for (const auto& w : enumerate_exact(abn.automaton, 15)) right.insert(parikh(w, ab));
    c.expect(!left.empty() && left == right, "abn Parikh multisets differ to length 15");
    check("abn", fx::edol_abn(), abn, 15);

    for (std::size_t k = 1; k <= 3; ++k) {
      c.expect(error_mentions([&] { edol_regularize(fx::edol_doubling(), k); }, "index-exceeded"),
               "doubling accepted with k=" + std::to_string(k));
    }
  });

  criterion(11, "vector automata: membership on [0,31]^k, boolean laws, parity split equals diagonal", [](Check& c) {
    for (const auto& f : fx::semilinear_fixtures()) {
      auto m = from_semilinear(f.q);
      std::size_t k = f.q.dimension();
      Vec v(k, 0);
      while (true) {
        c.expect(accepts(m, v) == member(f.q, v), f.name + " " + to_string(v));
        std::size_t i = 0;
        while (i < k && v[i] == 31) v[i++] = 0;
        if (i == k) break;
        ++v[i];
      }
    }
    std::vector<VectorDfa> ms;
    for (const auto& f : fx::semilinear_fixtures()) {
      if (f.q.dimension() == 2) ms.push_back(from_semilinear(f.q));
    }
    ms.push_back(from_semilinear(fx::upper_half()));
    VectorDfa all = from_linear(LinearSet({0, 0}, {{1, 0}, {0, 1}}));
    auto comp = [&](const VectorDfa& m) { return combine(all, m, BoolOp::difference); };
    for (const auto& a : ms) {
      c.expect(equivalent(comp(comp(a)), a), "double complement");
      c.expect(equivalent(combine(a, a, BoolOp::union_), a), "union idempotent");
      for (const auto& b : ms) {
        c.expect(equivalent(combine(a, b, BoolOp::union_), combine(b, a, BoolOp::union_)), "union commutes");
        c.expect(equivalent(comp(combine(a, b, BoolOp::union_)), combine(comp(a), comp(b), BoolOp::intersection)),
                 "De Morgan (union)");
        c.expect(equivalent(comp(combine(a, b, BoolOp::intersection)), combine(comp(a), comp(b), BoolOp::union_)),
                 "De Morgan (intersection)");
        c.expect(equivalent(combine(a, combine(a, b, BoolOp::intersection), BoolOp::union_), a), "absorption");
        for (const auto& d : ms) {
          c.expect(equivalent(combine(a, combine(b, d, BoolOp::union_), BoolOp::intersection),
                              combine(combine(a, b, BoolOp::intersection), combine(a, d, BoolOp::intersection), BoolOp::union_)),
                   "distributivity");
        }
      }
    }
    c.expect(compare(fx::diagonal(), fx::diagonal_by_parity(), Relation::equal).holds, "{(i,i)} != even u odd");
  });

  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}
