#pragma once

// Shared fixtures for the unit tests and the acceptance runner.

#include <map>
#include <string>
#include <vector>

#include "flw/commutative.hpp"
#include "flw/counter.hpp"
#include "flw/etol.hpp"
#include "flw/matrix.hpp"
#include "flw/semilinear.hpp"

namespace fx {

using flw::LinearSet;
using flw::SemilinearSet;
using flw::Vec;
using flw::Word;

struct NamedSet {
  std::string name;
  SemilinearSet q;
  std::vector<std::string> letters;
};

inline SemilinearSet diagonal() { return {LinearSet({0, 0}, {{1, 1}})}; }
inline SemilinearSet positive_diagonal() { return {LinearSet({1, 1}, {{1, 1}})}; }
// (i, j) with 0 < i <= j
inline SemilinearSet upper_half() { return {LinearSet({1, 1}, {{1, 1}, {0, 1}})}; }
inline SemilinearSet shifted_diagonal() { return {LinearSet({0, 1}, {{1, 1}})}; }
inline SemilinearSet diagonal_by_parity() {
  return {LinearSet({0, 0}, {{2, 2}}), LinearSet({1, 1}, {{2, 2}})};
}
// 0 < i < j < k
inline SemilinearSet increasing_triples() {
  return {LinearSet({1, 2, 3}, {{1, 1, 1}, {0, 1, 1}, {0, 0, 1}})};
}

/// Sets over two or three letters used by the round-trip suites.
inline std::vector<NamedSet> semilinear_fixtures() {
  return {
      {"diagonal", diagonal(), {"a", "b"}},
      {"a-run", {LinearSet({1, 1}, {{1, 0}})}, {"a", "b"}},
      {"increasing", increasing_triples(), {"a", "b", "c"}},
      {"even-or-odd", {LinearSet({0, 0}, {{2, 0}}), LinearSet({0, 1}, {{0, 2}})}, {"a", "b"}},
      {"mixed", {LinearSet({0, 0}, {{1, 2}}), LinearSet({1, 0}, {{0, 1}, {1, 1}})}, {"a", "b"}},
  };
}

inline std::vector<Word> letter_words(const std::vector<std::string>& letters) {
  std::vector<Word> out;
  for (const auto& l : letters) out.push_back(flw::word_of({l}));
  return out;
}

inline flw::Alphabet letter_alphabet(const std::vector<std::string>& letters) {
  std::vector<flw::Symbol> s;
  for (const auto& l : letters) s.push_back(flw::sym(l));
  return flw::Alphabet(s);
}

/// Words abbb / aab with Q1 = {(r,s): 0<r<s} and Q2 = {(r,s): 0<s<r}.
inline flw::BoundedSpec l3_spec() {
  SemilinearSet q1{LinearSet({1, 2}, {{1, 1}, {0, 1}})};
  SemilinearSet q2{LinearSet({2, 1}, {{1, 1}, {1, 0}})};
  return flw::BoundedSpec({U"abbb", U"aab"}, flw::BoundedKind::ginsburg_parikh, q1, q2, flw::Alphabet{"a", "b"});
}

/// Semi-simple sets with word tuples for the unambiguous bounded construction.
struct SemiSimpleFixture {
  std::string name;
  std::vector<Word> words;
  SemilinearSet q;
};

inline std::vector<SemiSimpleFixture> semi_simple_fixtures() {
  return {
      {"ab-b", {U"ab", U"b"}, {LinearSet({1, 1}, {{1, 0}, {0, 1}})}},
      {"anbn", {U"a", U"b"}, {LinearSet({1, 1}, {{1, 1}})}},
      {"aibicj", {U"a", U"b", U"c"}, {LinearSet({0, 0, 0}, {{1, 1, 0}, {0, 0, 1}})}},
      {"parity", {U"a", U"b"}, {LinearSet({0, 0}, {{2, 0}, {0, 1}}), LinearSet({1, 0}, {{2, 0}, {0, 2}})}},
      {"axis", {U"ab", U"c"}, {LinearSet({0, 0}, {{1, 0}}), LinearSet({0, 1}, {{0, 1}})}},
  };
}

inline flw::Production pr(const std::string& lhs, const std::vector<std::string>& rhs) {
  return {flw::sym(lhs), flw::word_of(rhs)};
}

inline std::vector<flw::Symbol> syms(const std::vector<std::string>& names) {
  std::vector<flw::Symbol> out;
  for (const auto& n : names) out.push_back(flw::sym(n));
  return out;
}

/// Reduced, unambiguous system for {w#w : w in {a,b}*}.
inline flw::EtolSystem wsw_reduced() {
  flw::EtolSystem g;
  g.reduced = true;
  g.nonterminals = syms({"S", "X"});
  g.terminals = syms({"a", "b", "#"});
  g.axiom = flw::sym("S");
  g.tables = {{"P_S", {pr("S", {"X", "#", "X"})}},
              {"P_a", {pr("X", {"a", "X"})}},
              {"P_b", {pr("X", {"b", "X"})}},
              {"P_f", {pr("X", {})}}};
  return g;
}

/// Plain system for the same language in which terminal a is active
/// (P_S kills it), so the active normal form needs a primed copy.
inline flw::EtolSystem wsw_plain() {
  flw::EtolSystem g;
  g.nonterminals = syms({"S", "X", "F"});
  g.terminals = syms({"a", "b", "#"});
  g.axiom = flw::sym("S");
  auto common = [](std::vector<flw::Production> ps, bool kill_a) {
    ps.push_back(pr("F", {"F"}));
    ps.push_back(kill_a ? pr("a", {"F"}) : pr("a", {"a"}));
    ps.push_back(pr("b", {"b"}));
    ps.push_back(pr("#", {"#"}));
    return ps;
  };
  g.tables = {{"P_S", common({pr("S", {"X", "#", "X"}), pr("X", {"X"})}, true)},
              {"P_a", common({pr("S", {"S"}), pr("X", {"a", "X"})}, false)},
              {"P_b", common({pr("S", {"S"}), pr("X", {"b", "X"})}, false)},
              {"P_f", common({pr("S", {"S"}), pr("X", {})}, false)}};
  return g;
}

/// Reduced system where "a" has exactly two trees.
inline flw::EtolSystem two_tree_reduced() {
  flw::EtolSystem g;
  g.reduced = true;
  g.nonterminals = syms({"S", "A", "B"});
  g.terminals = syms({"a"});
  g.axiom = flw::sym("S");
  g.tables = {{"T1", {pr("S", {"A", "B"})}}, {"T2", {pr("A", {"a"}), pr("B", {})}}, {"T3", {pr("A", {}), pr("B", {"a"})}}};
  return g;
}

/// All words u#u with |u#u| <= n.
inline std::vector<Word> wsw_words(std::size_t n) {
  std::vector<Word> out, layer{U""};
  while (!layer.empty() && 2 * layer.front().size() + 1 <= n) {
    std::vector<Word> next;
    for (const auto& u : layer) {
      out.push_back(u + U"#" + u);
      next.push_back(u + U"a");
      next.push_back(u + U"b");
    }
    layer.swap(next);
  }
  flw::sort_shortlex(out);
  return out;
}

inline flw::Matrix mat(const std::string& name, std::vector<flw::Production> rules) { return {name, std::move(rules)}; }

/// {x#x : x in {a,b}+} by five matrices.
inline flw::MatrixGrammar xsx_grammar() {
  flw::MatrixGrammar g;
  g.nonterminals = syms({"S", "A", "B"});
  g.terminals = syms({"a", "b", "#"});
  g.start = flw::sym("S");
  g.matrices = {mat("m1", {pr("S", {"A", "#", "B"})}),
                mat("m2", {pr("A", {"a", "A"}), pr("B", {"a", "B"})}),
                mat("m3", {pr("A", {"b", "A"}), pr("B", {"b", "B"})}),
                mat("m4", {pr("A", {"a"}), pr("B", {"a"})}),
                mat("m5", {pr("A", {"b"}), pr("B", {"b"})})};
  return g;
}

/// "a" has two derivations.
inline flw::MatrixGrammar ambiguous_grammar() {
  flw::MatrixGrammar g;
  g.nonterminals = syms({"S", "A", "B"});
  g.terminals = syms({"a"});
  g.start = flw::sym("S");
  g.matrices = {mat("m1", {pr("S", {"A"})}), mat("m2", {pr("S", {"B"})}), mat("m3", {pr("A", {"a"})}),
                mat("m4", {pr("B", {"a"})})};
  return g;
}

/// Reaches the sentential form AA, so it is not in normal form.
inline flw::MatrixGrammar repeated_grammar() {
  flw::MatrixGrammar g;
  g.nonterminals = syms({"S", "A"});
  g.terminals = syms({"a", "b"});
  g.start = flw::sym("S");
  g.matrices = {mat("m1", {pr("S", {"A", "A"})}), mat("m2", {pr("A", {"a", "A"}), pr("A", {"b", "A"})}),
                mat("m3", {pr("A", {"a"})})};
  return g;
}

/// All words x#x with x in {a,b}+ and |x#x| <= n.
inline std::vector<Word> xsx_words(std::size_t n) {
  std::vector<Word> out;
  for (const auto& w : wsw_words(n)) {
    if (w.size() > 1) out.push_back(w);
  }
  return out;
}

/// {lambda} by the single matrix [S -> lambda].
inline flw::MatrixGrammar lambda_grammar() {
  flw::MatrixGrammar g;
  g.nonterminals = syms({"S"});
  g.start = flw::sym("S");
  g.matrices = {mat("m", {pr("S", {})})};
  return g;
}

/// {a} with a weight-zero loop [S -> S], so "a" has infinitely many derivations.
inline flw::MatrixGrammar looping_grammar() {
  flw::MatrixGrammar g;
  g.nonterminals = syms({"S"});
  g.terminals = syms({"a"});
  g.start = flw::sym("S");
  g.matrices = {mat("loop", {pr("S", {"S"})}), mat("stop", {pr("S", {"a"})})};
  return g;
}

/// {a^n b^n : n >= 1}.
inline flw::MatrixGrammar anbn_grammar() {
  flw::MatrixGrammar g;
  g.nonterminals = syms({"S", "A", "B"});
  g.terminals = syms({"a", "b"});
  g.start = flw::sym("S");
  g.matrices = {mat("m1", {pr("S", {"A", "B"})}), mat("m2", {pr("A", {"a", "A"}), pr("B", {"b", "B"})}),
                mat("m3", {pr("A", {"a"}), pr("B", {"b"})})};
  return g;
}

/// Words over {a1, a2} with as many a1 as a2: a deterministic one-reversal
/// machine that counts both letters and drains the counters together.
inline flw::CounterMachine balanced_dcm() {
  using flw::CounterInput;
  flw::CounterMachine m;
  m.counters = 2;
  m.reversal_bound = 1;
  m.alphabet = flw::Alphabet{"a1", "a2"};
  int r = m.add_state("read");
  int d = m.add_state("drain");
  int f = m.add_state("accept");
  m.initial = r;
  m.accepting = {f};
  m.add(r, CounterInput::of(flw::sym("a1")), "**", r, {1, 0});
  m.add(r, CounterInput::of(flw::sym("a2")), "**", r, {0, 1});
  m.add(r, CounterInput::end_marker(), "**", d, {0, 0});
  m.add(d, CounterInput::eps(), "11", d, {-1, -1});
  m.add(d, CounterInput::eps(), "00", f, {0, 0});
  return m;
}

/// Normal form, three matrices with terminal projections ab#, abb, baa.
inline flw::MatrixGrammar cor2_grammar() {
  flw::MatrixGrammar g;
  g.nonterminals = syms({"S", "A", "B"});
  g.terminals = syms({"a", "b", "#"});
  g.start = flw::sym("S");
  g.matrices = {mat("m1", {pr("S", {"a", "b", "A", "#", "B"})}), mat("m2", {pr("A", {"a", "A"}), pr("B", {"b", "b", "B"})}),
                mat("m3", {pr("A", {"b"}), pr("B", {"a", "a"})})};
  return g;
}

/// Normal form, four matrices whose projections all have length 4.
inline flw::MatrixGrammar cor2_grammar4() {
  flw::MatrixGrammar g;
  g.nonterminals = syms({"S", "A", "B"});
  g.terminals = syms({"a", "b", "#"});
  g.start = flw::sym("S");
  g.matrices = {mat("m1", {pr("S", {"a", "#", "b", "#", "A", "B"})}),
                mat("m2", {pr("A", {"a", "a", "A"}), pr("B", {"b", "b", "B"})}),
                mat("m3", {pr("A", {"a", "b", "A"}), pr("B", {"b", "a", "B"})}),
                mat("m4", {pr("A", {"b", "a"}), pr("B", {"a", "b"})})};
  return g;
}

/// {a^n b^n : n >= 1} as a reduced system S -> A, A -> aAb | ab.
inline flw::EtolSystem anbn_reduced() {
  flw::EtolSystem g;
  g.reduced = true;
  g.nonterminals = syms({"S", "A"});
  g.terminals = syms({"a", "b"});
  g.axiom = flw::sym("S");
  g.tables = {{"T0", {pr("S", {"A"})}}, {"T1", {pr("A", {"a", "A", "b"})}}, {"T2", {pr("A", {"a", "b"})}}};
  return g;
}

/// Codes ab, ba for A and the empty word for S.
inline flw::EtolCodes anbn_codes() {
  return {{U'S', {{U"A", U""}}}, {U'A', {{U"aAb", U"ab"}, {U"ab", U"ba"}}}};
}

/// Reduced system with at least |R_X| terminals per right-hand side.
inline flw::EtolSystem padded_reduced() {
  flw::EtolSystem g;
  g.reduced = true;
  g.nonterminals = syms({"S", "A"});
  g.terminals = syms({"a", "b"});
  g.axiom = flw::sym("S");
  g.tables = {{"T0", {pr("S", {"a", "b", "A"})}}, {"T1", {pr("A", {"a", "A", "b", "b"})}}, {"T2", {pr("A", {"b", "a"})}}};
  return g;
}

/// Single-table deterministic system with axiom `axiom` and table h.
inline flw::EtolSystem edol(const std::vector<std::string>& nonterminals, const std::vector<std::string>& terminals,
                            const std::string& axiom, std::vector<flw::Production> h) {
  flw::EtolSystem g;
  g.nonterminals = syms(nonterminals);
  g.terminals = syms(terminals);
  g.axiom = flw::sym(axiom);
  g.tables = {{"H", std::move(h)}};
  return g;
}

inline flw::EtolSystem edol_abn() { return edol({}, {"a", "b"}, "a", {pr("a", {"a", "b"}), pr("b", {"b"})}); }
inline flw::EtolSystem edol_doubling() { return edol({}, {"a"}, "a", {pr("a", {"a", "a"})}); }
inline flw::EtolSystem edol_finite() { return edol({"S"}, {"a"}, "S", {pr("S", {"a"}), pr("a", {"a"})}); }

}  // namespace fx
