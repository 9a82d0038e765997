#pragma once

// Commutative regularization: prefix codes, code checks, regular witnesses
// for unambiguous finite-index matrix grammars, reduced ETOL systems and
// EDOL systems, and the Parikh-multiset equivalence check.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flw/etol.hpp"
#include "flw/matrix.hpp"
#include "flw/nfa.hpp"
#include "flw/oracle.hpp"

namespace flw {

inline bool is_letter_power(const Word& w) {
  return !w.empty() && std::all_of(w.begin(), w.end(), [&](Symbol s) { return s == w[0]; });
}

/// Words w_i ~ v_i forming a prefix code, built inductively: the longest
/// word goes last, letter powers are kept, and otherwise the leftmost factor
/// of length m with two distinct letters is replaced by its lexicographically
/// smallest rearrangement that is not a length-m prefix of the words so far.
inline std::vector<Word> build_prefix_code(const std::vector<Word>& vs) {
  const std::size_t m = vs.size();
  std::map<Symbol, std::size_t> powers;
  for (const auto& v : vs) {
    if (v.size() < m)
      throw Error(ErrorKind::precondition,
                  "prefix code needs |v| >= " + std::to_string(m) + ", got |" + to_string(v) + "| = " + std::to_string(v.size()));
    if (is_letter_power(v) && ++powers[v[0]] > 1)
      throw Error(ErrorKind::precondition, "more than one word is a power of " + name_of(v[0]));
  }
  // peel off the longest word repeatedly; stack[0] is the last of the full list
  std::vector<std::size_t> rest(m), stack;
  for (std::size_t i = 0; i < m; ++i) rest[i] = i;
  while (!rest.empty()) {
    std::size_t pick = 0;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if (vs[rest[i]].size() >= vs[rest[pick]].size()) pick = i;
    }
    stack.push_back(rest[pick]);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  std::vector<Word> out(m);
  std::vector<std::size_t> built;
  for (std::size_t step = stack.size(); step-- > 0;) {
    const std::size_t idx = stack[step];
    const Word& v = vs[idx];
    const std::size_t len = built.size() + 1;  // length of the current list
    if (len == 1 || is_letter_power(v)) {
      out[idx] = v;
    } else {
      std::size_t start = 0;
      while (std::all_of(v.begin() + static_cast<std::ptrdiff_t>(start),
                         v.begin() + static_cast<std::ptrdiff_t>(start + len),
                         [&](Symbol s) { return s == v[start]; }))
        ++start;
      Word u = v.substr(start, len);
      Word s = v.substr(0, start) + v.substr(start + len);
      std::set<Word> taken;
      for (std::size_t j : built) taken.insert(out[j].substr(0, len));
      std::sort(u.begin(), u.end(), symbol_less);
      bool found = false;
      do {
        if (!taken.count(u)) {
          found = true;
          break;
        }
      } while (std::next_permutation(u.begin(), u.end(), symbol_less));
      require(found, "no free rearrangement");
      out[idx] = u + s;
    }
    built.push_back(idx);
  }
  return out;
}

/// No word is a proper prefix of another and no word repeats.
inline bool is_prefix_code(const std::vector<Word>& ws) {
  std::vector<Word> s = ws;
  std::sort(s.begin(), s.end());
  for (std::size_t i = 1; i < s.size(); ++i) {
    // in lexicographic order a prefix sorts directly before some extension
    if (s[i].compare(0, s[i - 1].size(), s[i - 1]) == 0) return false;
  }
  return true;
}

/// Unique factorization of W+ (Sardinas-Patterson). Repeated words or the
/// empty word make W fail.
inline bool is_code(const std::vector<Word>& ws) {
  std::set<Word> w(ws.begin(), ws.end());
  if (w.size() != ws.size() || w.count(Word{})) return false;
  auto quotients = [](const std::set<Word>& a, const std::set<Word>& b) {
    std::set<Word> out;
    for (const auto& x : a) {
      for (const auto& y : b) {
        if (y.size() > x.size() && y.compare(0, x.size(), x) == 0) out.insert(y.substr(x.size()));
      }
    }
    return out;
  };
  std::set<Word> cur;
  for (const auto& x : w) {
    for (const auto& y : w) {
      if (x != y && y.size() > x.size() && y.compare(0, x.size(), x) == 0) cur.insert(y.substr(x.size()));
    }
  }
  std::set<std::set<Word>> seen;
  while (!cur.empty() && seen.insert(cur).second) {
    if (cur.count(Word{})) return false;
    for (const auto& x : cur) {
      if (w.count(x)) return false;
    }
    std::set<Word> next = quotients(cur, w);
    auto more = quotients(w, cur);
    next.insert(more.begin(), more.end());
    cur = std::move(next);
  }
  return true;
}

struct Cor2Verdict {
  bool long_enough = true;   // every |theta(m)| >= |M|
  bool one_power = true;     // per letter, at most one theta(m) in a*
  std::string detail;

  bool holds() const { return long_enough && one_power; }
};

inline Cor2Verdict check_cor2_conditions(const MatrixGrammar& g) {
  Cor2Verdict v;
  auto th = theta(g);
  const std::size_t m = th.size();
  for (std::size_t i = 0; i < m && v.long_enough; ++i) {
    if (th[i].size() < m) {
      v.long_enough = false;
      v.detail = "matrix " + g.matrices[i].name + " has terminal projection of length " + std::to_string(th[i].size()) +
                 " < " + std::to_string(m);
    }
  }
  for (Symbol a : g.terminals) {
    std::size_t hits = 0;
    for (const auto& t : th) hits += std::all_of(t.begin(), t.end(), [&](Symbol s) { return s == a; });
    if (hits > 1 && v.one_power) {
      v.one_power = false;
      if (!v.detail.empty()) v.detail += "; ";
      v.detail += std::to_string(hits) + " matrices project into " + name_of(a) + "*";
    }
  }
  return v;
}

/// f(m) per matrix index.
struct CodeAssignment {
  std::vector<Word> words;
  bool prefix = false;
};

/// Per nonterminal, the code word of each right-hand side.
using EtolCodes = std::map<Symbol, std::map<Word, Word>>;

struct RegularWitness {
  Nfa automaton;
  std::string provenance;
  std::size_t audit_len = 0;
};

inline CodeAssignment make_code_assignment(std::vector<Word> words) {
  bool prefix = is_prefix_code(words);
  return {std::move(words), prefix};
}

/// The assignment given by build_prefix_code on the theta-images.
inline CodeAssignment cor2_code(const MatrixGrammar& g) {
  auto v = check_cor2_conditions(g);
  if (!v.holds()) throw Error(ErrorKind::precondition, "code conditions fail: " + v.detail);
  return make_code_assignment(build_prefix_code(theta(g)));
}

namespace detail {

inline void audit_matrix_unambiguous(const MatrixGrammar& g, std::size_t len, const EtolBudget& budget) {
  auto slice = enumerate_matrix(g, len, budget);
  if (!slice.complete) throw Error(ErrorKind::budget_exhausted, "unambiguity audit enumeration incomplete");
  for (const auto& w : slice.words) {
    auto c = count_derivations(g, w, budget);
    if (!c.complete) throw Error(ErrorKind::budget_exhausted, "unambiguity audit count incomplete at " + to_string(w));
    if (c.count != 1)
      throw Error(ErrorKind::audit_failed, "unambiguity audit: " + to_string(w) + " has " + c.count.str() + " derivations");
  }
}

inline void audit_etol_unambiguous(const EtolSystem& g, std::size_t len, const EtolBudget& budget) {
  auto slice = enumerate_etol(g, len, budget);
  if (!slice.complete) throw Error(ErrorKind::budget_exhausted, "unambiguity audit enumeration incomplete");
  for (const auto& w : slice.words) {
    auto c = count_trees(g, w, budget);
    if (!c.complete) throw Error(ErrorKind::budget_exhausted, "unambiguity audit count incomplete at " + to_string(w));
    if (c.count != 1)
      throw Error(ErrorKind::audit_failed, "unambiguity audit: " + to_string(w) + " has " + c.count.str() + " derivation trees");
  }
}

/// States of the Szilard automaton from which an accepting state is reachable.
inline std::vector<bool> live_states(const Dfa& d) {
  std::vector<bool> live(d.accepting.begin(), d.accepting.end());
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t q = 0; q < d.size(); ++q) {
      if (live[q]) continue;
      for (int t : d.delta[q]) {
        if (t >= 0 && live[t]) {
          live[q] = changed = true;
          break;
        }
      }
    }
  }
  return live;
}

/// The Szilard automaton with every matrix edge m relabelled by label[m].
inline Nfa relabel_szilard(const SzilardDfa& s, const std::vector<Word>& label) {
  const Dfa& d = s.dfa;
  auto live = live_states(d);
  Nfa a;
  a.states = static_cast<int>(d.size());
  a.initial = d.initial;
  for (std::size_t q = 0; q < d.size(); ++q) {
    if (d.accepting[q]) a.accepting.insert(static_cast<int>(q));
    if (!live[q]) continue;
    for (std::size_t m = 0; m < d.letters; ++m) {
      int t = d.delta[q][m];
      if (t >= 0 && live[t]) a.add_edge(static_cast<int>(q), label[m], t);
    }
  }
  return a;
}

}  // namespace detail

/// Regular witness f(D(G)) for an unambiguous normal-form grammar of index k
/// and a code f with f(m) ~ theta(m). Unambiguity is audited on all words of
/// length <= audit_len.
inline RegularWitness regularize_matrix(const MatrixGrammar& g, const CodeAssignment& f, std::size_t k,
                                        std::size_t audit_len = 10, const EtolBudget& budget = {}) {
  auto th = theta(g);
  require(f.words.size() == th.size(), "code assignment must cover every matrix");
  for (std::size_t m = 0; m < th.size(); ++m) {
    if (!comm_equivalent(f.words[m], th[m]))
      throw Error(ErrorKind::precondition, "f-not-commutatively-matching: f(" + g.matrices[m].name + ") = " +
                                               to_string(f.words[m]) + " vs " + to_string(th[m]));
  }
  bool ok = f.prefix ? is_prefix_code(f.words) : is_code(f.words);
  if (f.prefix && !ok) throw Error(ErrorKind::precondition, "code-check-failed: assignment is not a prefix code");
  if (!ok) throw Error(ErrorKind::precondition, "code-check-failed: assignment is not a code");
  auto s = szilard_dfa(g, k);
  detail::audit_matrix_unambiguous(g, audit_len, budget);
  RegularWitness out;
  out.automaton = detail::relabel_szilard(s, f.words);
  out.audit_len = audit_len;
  out.provenance = "matrix szilard relabelled by code; unambiguity audited to length " + std::to_string(audit_len);
  out.automaton.provenance = out.provenance;
  return out;
}

/// R_X: distinct right-hand sides of X over all tables.
inline std::map<Symbol, std::set<Word>> rhs_sets(const EtolSystem& g) {
  std::map<Symbol, std::set<Word>> r;
  for (const auto& t : g.tables) {
    for (const auto& p : t.productions) r[p.lhs].insert(p.rhs);
  }
  return r;
}

inline Word terminal_projection(const EtolSystem& g, const Word& w) {
  Word out;
  for (Symbol s : w) {
    if (g.is_terminal(s)) out.push_back(s);
  }
  return out;
}

/// Codes from build_prefix_code per nonterminal, after checking that every
/// right-hand side has at least |R_X| terminals and at most one projects
/// into a* for each letter a.
inline EtolCodes cor2_etol_codes(const EtolSystem& g) {
  EtolCodes out;
  for (const auto& [x, rs] : rhs_sets(g)) {
    std::vector<Word> rhs(rs.begin(), rs.end());
    std::vector<Word> proj;
    for (const auto& a : rhs) proj.push_back(terminal_projection(g, a));
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      if (proj[i].size() < rhs.size())
        throw Error(ErrorKind::precondition, "code conditions fail: " + name_of(x) + " -> " + to_string(rhs[i]) +
                                                 " has fewer than " + std::to_string(rhs.size()) + " terminals");
    }
    auto code = build_prefix_code(proj);
    for (std::size_t i = 0; i < rhs.size(); ++i) out[x][rhs[i]] = code[i];
  }
  return out;
}

/// Right-linear witness for an unambiguous reduced system of index k with a
/// prefix code per nonterminal: states are nonterminal profiles, and one
/// edge per one-step derivation x => y is labelled by the concatenated codes
/// of the right-hand sides used.
inline RegularWitness regularize_etol(const EtolSystem& g, const EtolCodes& codes, std::size_t k,
                                      std::size_t audit_len = 10, const EtolBudget& budget = {}) {
  require(g.reduced, "regularize_etol needs a reduced system");
  for (const auto& [x, rs] : rhs_sets(g)) {
    auto it = codes.find(x);
    if (it == codes.end()) throw Error(ErrorKind::precondition, "no code for nonterminal " + name_of(x));
    std::vector<Word> ys;
    for (const auto& a : rs) {
      auto c = it->second.find(a);
      if (c == it->second.end())
        throw Error(ErrorKind::precondition, "no code word for " + name_of(x) + " -> " + to_string(a));
      if (!comm_equivalent(c->second, terminal_projection(g, a)))
        throw Error(ErrorKind::precondition, "f-not-commutatively-matching: " + name_of(x) + " -> " + to_string(a));
      ys.push_back(c->second);
    }
    if (!is_prefix_code(ys)) throw Error(ErrorKind::precondition, "code-check-failed: codes of " + name_of(x) + " are not a prefix code");
  }
  auto pg = detail::etol_profiles(g, k);
  detail::audit_etol_unambiguous(g, audit_len, budget);
  Nfa a;
  a.states = static_cast<int>(pg.profiles.size());
  a.initial = 0;
  for (std::size_t xi = 0; xi < pg.profiles.size(); ++xi) {
    if (pg.profiles[xi].empty()) a.accepting.insert(static_cast<int>(xi));
    std::set<std::vector<Word>> done;  // one edge per derivation, whatever the table
    for (const auto& st : pg.steps[xi]) {
      if (!done.insert(st.split).second) continue;
      Word u;
      for (std::size_t i = 0; i < st.split.size(); ++i) u += codes.at(pg.profiles[xi][i]).at(st.split[i]);
      a.add_edge(static_cast<int>(xi), u, static_cast<int>(st.target));
    }
  }
  RegularWitness out;
  out.audit_len = audit_len;
  out.provenance = "reduced etol profiles with per-nonterminal prefix codes; unambiguity audited to length " +
                   std::to_string(audit_len);
  a.provenance = out.provenance;
  out.automaton = std::move(a);
  return out;
}

struct EdolReport {
  std::vector<Word> sequence;                               // gamma_0 .. gamma_n
  std::optional<std::pair<std::size_t, std::size_t>> commutative_repeat;  // (j, i), i > j, gamma_i ~ gamma_j
  std::optional<std::pair<std::size_t, std::size_t>> exact_repeat;        // (j, i), i > j, gamma_i = gamma_j
  bool finite = false;
  std::vector<Word> language;  // L(G) when finite, else the terminal words seen
};

namespace detail {

inline void require_edol(const EtolSystem& g) {
  require(!g.reduced, "EDOL analysis needs a plain system");
  require(g.tables.size() == 1, "EDOL analysis needs a single table");
  g.validate();
  std::map<Symbol, std::size_t> seen;
  for (const auto& p : g.tables[0].productions) {
    if (++seen[p.lhs] > 1) throw Error(ErrorKind::precondition, "table is not deterministic at " + name_of(p.lhs));
  }
}

inline Word edol_step(const std::map<Symbol, Word>& h, const Word& w) {
  Word out;
  for (Symbol s : w) out += h.at(s);
  return out;
}

}  // namespace detail

/// Runs the unique derivation gamma_0 => gamma_1 => ... for `bound` steps.
/// A commutative repeat certifies a finite language, which is then produced
/// by running on until the sequence repeats exactly.
inline EdolReport edol_analyze(const EtolSystem& g, std::size_t bound, std::size_t max_word = 1u << 22) {
  detail::require_edol(g);
  std::map<Symbol, Word> h;
  for (const auto& p : g.tables[0].productions) h[p.lhs] = p.rhs;
  EdolReport r;
  std::map<std::map<Symbol, std::int64_t>, std::size_t> classes;
  std::map<Word, std::size_t> words;
  Word cur(1, g.axiom);
  for (std::size_t i = 0;; ++i) {
    if (!r.commutative_repeat && i > bound) break;
    r.sequence.push_back(cur);
    auto [cit, cfresh] = classes.emplace(letter_counts(cur), i);
    if (!cfresh && !r.commutative_repeat) r.commutative_repeat = {cit->second, i};
    auto [wit, wfresh] = words.emplace(cur, i);
    if (!wfresh) {
      r.exact_repeat = {wit->second, i};
      r.sequence.pop_back();
      break;
    }
    if (cur.size() > max_word) throw Error(ErrorKind::budget_exhausted, "EDOL word exceeds " + std::to_string(max_word) + " symbols");
    cur = detail::edol_step(h, cur);
  }
  r.finite = r.commutative_repeat.has_value();
  std::set<Word> lang;
  for (const auto& w : r.sequence) {
    if (g.is_terminal_word(w)) lang.insert(w);
  }
  r.language.assign(lang.begin(), lang.end());
  sort_shortlex(r.language);
  return r;
}

/// Witness for a finite-index EDOL language: the finite language itself, or
/// theta(D(G')) for the normal-form matrix grammar G' reached through the
/// reduced system.
inline RegularWitness edol_regularize(const EtolSystem& g, std::size_t k, std::size_t bound = 20,
                                      std::size_t audit_len = 10, const EtolBudget& budget = {}) {
  auto rep = edol_analyze(g, bound);
  RegularWitness out;
  out.audit_len = audit_len;
  if (rep.finite) {
    out.automaton = finite_nfa(rep.language);
    out.provenance = "finite EDOL language";
    out.automaton.provenance = out.provenance;
    return out;
  }
  auto red = to_reduced(g);
  auto mg = normal_form(reduced_etol_to_matrix(red, k), k).grammar;
  auto s = szilard_dfa(mg, k);
  detail::audit_matrix_unambiguous(mg, audit_len, budget);
  out.automaton = detail::relabel_szilard(s, theta(mg));
  out.provenance = "theta image of the szilard automaton of the EDOL pipeline; unambiguity audited to length " +
                   std::to_string(audit_len);
  out.automaton.provenance = out.provenance;
  return out;
}

struct CommVerdict {
  bool equivalent = true;
  std::vector<Symbol> letters;  // coordinates of the vectors below
  std::optional<Vec> witness;   // a vector with different multiplicities
  std::size_t left = 0, right = 0;  // multiplicities at the witness
};

/// Same number of words per Parikh vector among words of length <= max_len.
inline CommVerdict verify_comm_equivalence(const LanguageSpec& s1, const LanguageSpec& s2, std::size_t max_len,
                                           const OracleBudget& budget = {}) {
  auto a = enumerate_exact(s1, max_len, budget);
  auto b = enumerate_exact(s2, max_len, budget);
  std::set<Symbol> letters;
  for (const auto* ws : {&a, &b}) {
    for (const auto& w : *ws) letters.insert(w.begin(), w.end());
  }
  CommVerdict v;
  v.letters.assign(letters.begin(), letters.end());
  std::sort(v.letters.begin(), v.letters.end(), symbol_less);
  std::map<Symbol, std::size_t> coord;
  for (Symbol s : v.letters) coord.emplace(s, coord.size());
  auto vec = [&](const Word& w) {
    Vec out(coord.size(), 0);
    for (Symbol s : w) ++out[coord.at(s)];
    return out;
  };
  std::map<Vec, std::pair<std::size_t, std::size_t>> counts;
  for (const auto& w : a) ++counts[vec(w)].first;
  for (const auto& w : b) ++counts[vec(w)].second;
  for (const auto& [x, c] : counts) {
    if (c.first != c.second) {
      v.equivalent = false;
      v.witness = x;
      v.left = c.first;
      v.right = c.second;
      break;
    }
  }
  return v;
}

}  // namespace flw
