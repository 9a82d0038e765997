#pragma once

// Context-free matrix grammars of finite index.
//
// A matrix (p1, ..., ps) is applied by running its productions in order,
// each rewriting one occurrence of its left-hand side. A derivation step is
// identified by the matrix and the split Der(x, m): the tuple of words that
// the nonterminal occurrences of the current form turn into. Two occurrence
// orders giving the same split are the same step.
//
// Constructions that take an index k work on nonterminal profiles pi_N(x)
// of length <= k. Profiles holding a nonterminal that cannot yield a
// terminal word are dropped; any other profile longer than k is an error.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "flw/dfa.hpp"
#include "flw/etol.hpp"

namespace flw {

struct Matrix {
  std::string name;
  std::vector<Production> rules;
};

struct MatrixGrammar {
  std::vector<Symbol> nonterminals;
  std::vector<Symbol> terminals;
  Symbol start = 0;
  std::vector<Matrix> matrices;

  bool is_terminal(Symbol s) const { return std::find(terminals.begin(), terminals.end(), s) != terminals.end(); }
  bool is_nonterminal(Symbol s) const { return std::find(nonterminals.begin(), nonterminals.end(), s) != nonterminals.end(); }

  Word profile(const Word& x) const {
    Word p;
    for (Symbol s : x) {
      if (is_nonterminal(s)) p.push_back(s);
    }
    return p;
  }

  Word terminal_part(const Word& x) const {
    Word p;
    for (Symbol s : x) {
      if (is_terminal(s)) p.push_back(s);
    }
    return p;
  }

  void validate() const {
    std::set<Symbol> n(nonterminals.begin(), nonterminals.end()), t(terminals.begin(), terminals.end());
    require(n.size() == nonterminals.size() && t.size() == terminals.size(), "duplicate symbol in matrix grammar alphabet");
    for (Symbol x : nonterminals) require(!t.count(x), "symbol " + name_of(x) + " is both terminal and nonterminal");
    require(n.count(start), "start symbol must be a nonterminal");
    for (const auto& m : matrices) {
      require(!m.rules.empty(), "matrix " + m.name + " is empty");
      for (const auto& p : m.rules) {
        require(n.count(p.lhs), "matrix " + m.name + " rewrites non-nonterminal " + name_of(p.lhs));
        for (Symbol c : p.rhs) require(n.count(c) || t.count(c), "matrix " + m.name + " uses unknown symbol " + name_of(c));
      }
    }
  }
};

/// Der(x, m) for a word x of nonterminals: every tuple (w1, ..., w|x|) with
/// x =>_m w1...w|x| where the i-th letter of x derives wi.
inline std::set<std::vector<Word>> der(const Word& x, const Matrix& m) {
  std::set<std::vector<Word>> cur;
  std::vector<Word> init;
  for (Symbol s : x) init.push_back(Word(1, s));
  cur.insert(init);
  for (const auto& p : m.rules) {
    std::set<std::vector<Word>> next;
    for (const auto& segs : cur) {
      for (std::size_t i = 0; i < segs.size(); ++i) {
        for (std::size_t j = 0; j < segs[i].size(); ++j) {
          if (segs[i][j] != p.lhs) continue;
          auto c = segs;
          c[i].replace(j, 1, p.rhs);
          next.insert(std::move(c));
        }
      }
    }
    cur.swap(next);
    if (cur.empty()) break;
  }
  return cur;
}

namespace detail {

/// Rebuilds a successor of `form` from a split of its nonterminal profile.
inline Word place_split(const MatrixGrammar& g, const Word& form, const std::vector<Word>& y) {
  Word out;
  std::size_t k = 0;
  for (Symbol s : form) {
    if (g.is_nonterminal(s)) {
      out += y[k++];
    } else {
      out.push_back(s);
    }
  }
  return out;
}

struct CompiledMatrix {
  const MatrixGrammar* g;
  std::unordered_set<Symbol> nonterminal;
  std::unordered_map<Symbol, std::int64_t> mlen;

  explicit CompiledMatrix(const MatrixGrammar& gr) : g(&gr) {
    nonterminal.insert(gr.nonterminals.begin(), gr.nonterminals.end());
    for (Symbol a : gr.terminals) mlen[a] = 1;
    for (Symbol x : gr.nonterminals) mlen[x] = kInf;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& m : gr.matrices) {
        for (const auto& p : m.rules) {
          std::int64_t v = word_mlen(p.rhs);
          if (v < mlen[p.lhs]) {
            mlen[p.lhs] = v;
            changed = true;
          }
        }
      }
    }
  }

  std::int64_t word_mlen(const Word& w) const {
    std::int64_t t = 0;
    for (Symbol s : w) {
      std::int64_t v = mlen.at(s);
      if (v >= kInf) return kInf;
      t += v;
    }
    return t;
  }

  bool productive(const Word& w) const { return word_mlen(w) < kInf; }

  std::size_t erasable_count(const Word& w) const {
    std::size_t n = 0;
    for (Symbol s : w) n += mlen.at(s) == 0;
    return n;
  }

  bool terminal_word(const Word& w) const {
    return std::none_of(w.begin(), w.end(), [&](Symbol s) { return nonterminal.count(s) > 0; });
  }

  Word profile(const Word& x) const {
    Word p;
    for (Symbol s : x) {
      if (nonterminal.count(s)) p.push_back(s);
    }
    return p;
  }

  /// Successors under matrix m with the number of splits giving each.
  std::map<Word, std::uint64_t> expand(const Word& form, std::size_t m, std::int64_t bound = kInf) const {
    std::map<Word, std::uint64_t> out;
    for (const auto& y : der(profile(form), g->matrices[m])) {
      Word nf = place_split(*g, form, y);
      if (word_mlen(nf) > bound) continue;
      ++out[nf];
    }
    return out;
  }

  bool viable(const Word& form, const Word& w) const {
    return skeleton_viable(form, w, [&](Symbol s) { return nonterminal.count(s) == 0; }, mlen);
  }
};

}  // namespace detail

/// All results of applying matrix m to x (empty if m is blocked).
inline std::set<Word> apply_matrix(const MatrixGrammar& g, const Word& x, std::size_t m) {
  require(m < g.matrices.size(), "matrix index out of range");
  std::set<Word> out;
  for (const auto& y : der(g.profile(x), g.matrices[m])) out.insert(detail::place_split(g, x, y));
  return out;
}

/// Sentential forms reached from the start symbol by the matrix sequence.
inline std::set<Word> replay(const MatrixGrammar& g, const std::vector<std::size_t>& alpha) {
  std::set<Word> cur{Word(1, g.start)};
  for (std::size_t m : alpha) {
    std::set<Word> next;
    for (const auto& x : cur) {
      auto s = apply_matrix(g, x, m);
      next.insert(s.begin(), s.end());
    }
    cur.swap(next);
  }
  return cur;
}

inline LanguageSlice enumerate_matrix(const MatrixGrammar& g, std::size_t max_len, const EtolBudget& budget = {}) {
  detail::CompiledMatrix c(g);
  const auto bound = static_cast<std::int64_t>(max_len);
  LanguageSlice out;
  std::set<Word> found;
  std::unordered_set<Word> seen;
  std::deque<Word> queue;
  Word s(1, g.start);
  if (c.word_mlen(s) > bound) return out;
  seen.insert(s);
  queue.push_back(s);
  while (!queue.empty()) {
    Word f = std::move(queue.front());
    queue.pop_front();
    if (c.terminal_word(f)) {
      found.insert(f);
      continue;
    }
    for (std::size_t m = 0; m < g.matrices.size(); ++m) {
      for (auto& [nf, n] : c.expand(f, m, bound)) {
        if (seen.count(nf)) continue;
        if (c.erasable_count(nf) > budget.erase_cap + max_len || seen.size() >= budget.max_forms) {
          out.complete = false;
          continue;
        }
        seen.insert(nf);
        queue.push_back(nf);
      }
    }
  }
  out.words.assign(found.begin(), found.end());
  sort_shortlex(out.words);
  return out;
}

/// Number of derivations of w (sequences of matrix and split).
inline TreeCount count_derivations(const MatrixGrammar& g, const Word& w, const EtolBudget& budget = {}) {
  detail::CompiledMatrix c(g);
  const auto bound = static_cast<std::int64_t>(w.size());
  TreeCount res;
  std::map<Word, BigInt> layer;
  Word s(1, g.start);
  if (!c.viable(s, w)) return res;
  layer[s] = 1;
  for (std::size_t depth = 0;; ++depth) {
    std::map<Word, BigInt> next;
    for (const auto& [f, cnt] : layer) {
      if (c.terminal_word(f)) {
        if (f == w) res.count += cnt;
        continue;
      }
      if (depth == budget.max_depth) {
        res.complete = false;
        continue;
      }
      for (std::size_t m = 0; m < g.matrices.size(); ++m) {
        for (auto& [nf, mult] : c.expand(f, m, bound)) {
          if (!c.viable(nf, w)) continue;
          if (c.erasable_count(nf) > budget.erase_cap + w.size()) {
            res.complete = false;
            continue;
          }
          next[nf] += cnt * mult;
        }
      }
    }
    if (next.empty() || depth == budget.max_depth) break;
    if (next.size() > budget.max_forms) {
      res.complete = false;
      break;
    }
    layer.swap(next);
  }
  return res;
}

/// theta(m): terminal projection of the right-hand sides of m in order.
inline std::vector<Word> theta(const MatrixGrammar& g) {
  std::vector<Word> out;
  for (const auto& m : g.matrices) {
    Word t;
    for (const auto& p : m.rules) t += g.terminal_part(p.rhs);
    out.push_back(t);
  }
  return out;
}

inline Word theta_of(const std::vector<Word>& th, const std::vector<std::size_t>& alpha) {
  Word out;
  for (std::size_t m : alpha) out += th[m];
  return out;
}

namespace detail {

struct ProfileStep {
  std::size_t label;         // matrix or table index
  std::vector<Word> split;   // per occurrence of the source profile
  std::size_t target;        // profile index
};

struct ProfileGraph {
  std::vector<Word> profiles;                   // profiles[0] is the start
  std::vector<std::vector<ProfileStep>> steps;  // outgoing steps per profile
  std::size_t max_profile = 0;
};

inline std::size_t intern_profile(ProfileGraph& pg, std::map<Word, std::size_t>& ids, std::deque<std::size_t>& queue,
                                  const Word& x) {
  auto [it, fresh] = ids.emplace(x, pg.profiles.size());
  if (fresh) {
    pg.profiles.push_back(x);
    pg.steps.emplace_back();
    pg.max_profile = std::max(pg.max_profile, x.size());
    queue.push_back(it->second);
  }
  return it->second;
}

inline void index_exceeded(const Word& x, std::size_t k) {
  throw Error(ErrorKind::precondition,
              "index-exceeded: profile " + to_string(x) + " has " + std::to_string(x.size()) + " nonterminals, k = " + std::to_string(k));
}

/// Reachable profiles of a matrix grammar with every (matrix, split) step.
inline ProfileGraph matrix_profiles(const MatrixGrammar& g, std::size_t k) {
  CompiledMatrix c(g);
  ProfileGraph pg;
  std::map<Word, std::size_t> ids;
  std::deque<std::size_t> queue;
  intern_profile(pg, ids, queue, Word(1, g.start));
  while (!queue.empty()) {
    std::size_t xi = queue.front();
    queue.pop_front();
    Word x = pg.profiles[xi];
    for (std::size_t m = 0; m < g.matrices.size(); ++m) {
      for (const auto& y : der(x, g.matrices[m])) {
        Word nx;
        for (const auto& wi : y) nx += c.profile(wi);
        if (!c.productive(nx)) continue;
        if (nx.size() > k) index_exceeded(nx, k);
        std::size_t ti = intern_profile(pg, ids, queue, nx);
        pg.steps[xi].push_back({m, y, ti});
      }
    }
  }
  return pg;
}

/// Reachable profiles of a reduced ETOL system; a step is a table with one
/// production choice per occurrence.
inline ProfileGraph etol_profiles(const EtolSystem& g, std::size_t k) {
  require(g.reduced, "conversion needs a reduced system");
  require(g.is_nonterminal(g.axiom), "axiom of a reduced system must be a nonterminal");
  CompiledEtol c(g);
  ProfileGraph pg;
  std::map<Word, std::size_t> ids;
  std::deque<std::size_t> queue;
  auto nt_part = [&](const Word& w) {
    Word p;
    for (Symbol s : w) {
      if (!c.terminal.count(s)) p.push_back(s);
    }
    return p;
  };
  intern_profile(pg, ids, queue, Word(1, g.axiom));
  while (!queue.empty()) {
    std::size_t xi = queue.front();
    queue.pop_front();
    Word x = pg.profiles[xi];
    if (x.empty()) continue;
    for (std::size_t t = 0; t < g.tables.size(); ++t) {
      std::vector<const std::vector<Word>*> opts;
      bool blocked = false;
      for (Symbol s : x) {
        auto it = c.rules[t].find(s);
        if (it == c.rules[t].end()) {
          blocked = true;
          break;
        }
        opts.push_back(&it->second);
      }
      if (blocked) continue;
      std::vector<std::size_t> pick(x.size(), 0);
      while (true) {
        std::vector<Word> y;
        Word nx;
        for (std::size_t i = 0; i < x.size(); ++i) {
          y.push_back((*opts[i])[pick[i]]);
          nx += nt_part(y.back());
        }
        if (c.word_mlen(nx) < kInf) {
          if (nx.size() > k) index_exceeded(nx, k);
          std::size_t ti = intern_profile(pg, ids, queue, nx);
          pg.steps[xi].push_back({t, y, ti});
        }
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == opts[i]->size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
    }
  }
  return pg;
}

/// Profile name without whitespace: letters joined by a middle dot when
/// some name is longer than one character.
inline std::string compact(const Word& x) {
  bool multi = std::any_of(x.begin(), x.end(), [](Symbol s) { return name_of(s).size() > 1; });
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) out += (multi && i ? "·" : "") + name_of(x[i]);
  return out;
}

/// Fresh symbols [x,i] (and [x,i]' for the second generation).
struct Tagger {
  std::set<Symbol> taken;
  std::map<std::tuple<std::size_t, std::size_t, int>, Symbol> tags;
  std::vector<Symbol> order;

  Symbol get(const ProfileGraph& pg, std::size_t xi, std::size_t i, int gen = 0) {
    auto key = std::make_tuple(xi, i, gen);
    auto it = tags.find(key);
    if (it != tags.end()) return it->second;
    std::string n = "[" + compact(pg.profiles[xi]) + "," + std::to_string(i + 1) + "]" + (gen ? "'" : "");
    Symbol s = fresh_symbol(n, taken);
    taken.insert(s);
    tags.emplace(key, s);
    order.push_back(s);
    return s;
  }

  /// Rewrites the nonterminals of split part i with tags of the target.
  Word retag(const ProfileGraph& pg, const std::vector<Word>& y, std::size_t i, std::size_t target,
             const std::function<bool(Symbol)>& is_nt, int gen = 0) {
    std::size_t t = 0;
    for (std::size_t j = 0; j < i; ++j) {
      for (Symbol s : y[j]) t += is_nt(s);
    }
    Word out;
    for (Symbol s : y[i]) out.push_back(is_nt(s) ? get(pg, target, t++, gen) : s);
    return out;
  }
};

}  // namespace detail

/// Whether the grammar meets the two normal-form conditions on every
/// reachable profile; returns a description of the first violation.
inline std::optional<std::string> normal_form_violation(const MatrixGrammar& g, std::size_t k) {
  auto pg = detail::matrix_profiles(g, k);
  for (std::size_t xi = 0; xi < pg.profiles.size(); ++xi) {
    const Word& x = pg.profiles[xi];
    std::set<Symbol> letters(x.begin(), x.end());
    if (letters.size() != x.size()) return "profile " + to_string(x) + " repeats a nonterminal";
    std::set<std::size_t> applicable;
    for (const auto& st : pg.steps[xi]) applicable.insert(st.label);
    for (std::size_t m : applicable) {
      const auto& rules = g.matrices[m].rules;
      std::set<Symbol> lhs;
      for (std::size_t i = 0; i < rules.size(); ++i) {
        Symbol a = rules[i].lhs;
        if (!letters.count(a) || !lhs.insert(a).second)
          return "matrix " + g.matrices[m].name + " does not rewrite distinct occurrences of " + to_string(x);
        for (std::size_t j = 0; j < i; ++j) {
          if (rules[j].rhs.find(a) != Word::npos)
            return "matrix " + g.matrices[m].name + " rewrites a symbol it created on " + to_string(x);
        }
      }
    }
  }
  return std::nullopt;
}

struct NormalFormCert {
  std::size_t k = 0;
  std::vector<Word> profiles;  // reachable profiles of the input grammar
  bool already_normal = false;
};

struct NormalForm {
  MatrixGrammar grammar;
  NormalFormCert cert;
};

/// Equivalent grammar whose sentential forms carry pairwise distinct
/// nonterminals and whose matrices rewrite every nonterminal of the form
/// they apply to. Nonterminals are tagged [x,i] / [x,i]' by profile,
/// position and step parity; one matrix per (profile, matrix, split), so
/// derivations correspond one to one.
inline NormalForm normal_form(const MatrixGrammar& g, std::size_t k) {
  g.validate();
  auto pg = detail::matrix_profiles(g, k);
  NormalForm nf;
  nf.cert.k = k;
  nf.cert.profiles = pg.profiles;
  if (!normal_form_violation(g, k)) {
    nf.grammar = g;
    nf.cert.already_normal = true;
    return nf;
  }
  detail::Tagger tg;
  tg.taken.insert(g.nonterminals.begin(), g.nonterminals.end());
  tg.taken.insert(g.terminals.begin(), g.terminals.end());
  auto is_nt = [&](Symbol s) { return g.is_nonterminal(s); };
  MatrixGrammar out;
  out.terminals = g.terminals;
  out.start = tg.get(pg, 0, 0, 0);
  std::set<std::pair<std::size_t, int>> done;
  std::deque<std::pair<std::size_t, int>> queue{{0, 0}};
  done.insert({0, 0});
  while (!queue.empty()) {
    auto [xi, gen] = queue.front();
    queue.pop_front();
    for (const auto& st : pg.steps[xi]) {
      Matrix m;
      m.name = g.matrices[st.label].name + "@" + to_string(pg.profiles[xi]) + (gen ? "'" : "");
      if (pg.steps[xi].size() > 1) {
        std::size_t same = 0;
        for (const auto& o : pg.steps[xi]) same += o.label == st.label;
        if (same > 1) {
          std::string sp;
          for (const auto& w : st.split) sp += (sp.empty() ? "" : ",") + to_string(w);
          m.name += "(" + sp + ")";
        }
      }
      for (std::size_t i = 0; i < st.split.size(); ++i)
        m.rules.push_back({tg.get(pg, xi, i, gen), tg.retag(pg, st.split, i, st.target, is_nt, 1 - gen)});
      out.matrices.push_back(std::move(m));
      if (done.insert({st.target, 1 - gen}).second) queue.push_back({st.target, 1 - gen});
    }
  }
  out.nonterminals = tg.order;
  out.validate();
  nf.grammar = std::move(out);
  return nf;
}

/// Derivation automaton of a normal-form grammar: states are reachable
/// profiles, edges matrices, the empty profile accepts.
struct SzilardDfa {
  std::vector<Word> profiles;  // state i has profile profiles[i]
  Dfa dfa;                     // letters are matrix indices
};

inline SzilardDfa szilard_dfa(const MatrixGrammar& g, std::size_t k) {
  if (auto v = normal_form_violation(g, k)) throw Error(ErrorKind::precondition, "normal-form violation: " + *v);
  auto pg = detail::matrix_profiles(g, k);
  SzilardDfa s;
  s.profiles = pg.profiles;
  s.dfa.letters = g.matrices.size();
  for (const auto& x : pg.profiles) s.dfa.add_state(x.empty());
  for (std::size_t xi = 0; xi < pg.profiles.size(); ++xi) {
    for (const auto& st : pg.steps[xi]) {
      int& t = s.dfa.delta[xi][st.label];
      if (t >= 0 && t != static_cast<int>(st.target))
        throw Error(ErrorKind::precondition, "normal-form violation: matrix " + g.matrices[st.label].name + " has two outcomes");
      t = static_cast<int>(st.target);
    }
  }
  return s;
}

/// Reduced ETOL system with one table T_{x,m,y} per profile, matrix and
/// split; nonterminals [x,i] plus a dead symbol F.
inline EtolSystem matrix_to_reduced_etol(const MatrixGrammar& g, std::size_t k) {
  g.validate();
  auto pg = detail::matrix_profiles(g, k);
  detail::Tagger tg;
  tg.taken.insert(g.nonterminals.begin(), g.nonterminals.end());
  tg.taken.insert(g.terminals.begin(), g.terminals.end());
  auto is_nt = [&](Symbol s) { return g.is_nonterminal(s); };
  for (std::size_t xi = 0; xi < pg.profiles.size(); ++xi) {
    for (std::size_t i = 0; i < pg.profiles[xi].size(); ++i) tg.get(pg, xi, i);
  }
  Symbol dead = fresh_symbol("F", tg.taken);
  EtolSystem out;
  out.reduced = true;
  out.terminals = g.terminals;
  out.nonterminals = tg.order;
  out.nonterminals.push_back(dead);
  out.axiom = tg.get(pg, 0, 0);
  for (std::size_t xi = 0; xi < pg.profiles.size(); ++xi) {
    for (const auto& st : pg.steps[xi]) {
      std::string sp;
      for (const auto& w : st.split) sp += (sp.empty() ? "" : ",") + to_string(w);
      Table t{"T_{" + to_string(pg.profiles[xi]) + "," + g.matrices[st.label].name + ",(" + sp + ")}", {}};
      std::set<Symbol> lhs;
      for (std::size_t i = 0; i < st.split.size(); ++i) {
        Symbol a = tg.get(pg, xi, i);
        lhs.insert(a);
        t.productions.push_back({a, tg.retag(pg, st.split, i, st.target, is_nt)});
      }
      for (Symbol s : out.nonterminals) {
        if (!lhs.count(s)) t.productions.push_back({s, Word(1, dead)});
      }
      out.tables.push_back(std::move(t));
    }
  }
  if (out.tables.empty()) out.tables.push_back({"T_F", {}});
  out.validate();
  return out;
}

/// Deterministic reduced system: nonterminals [x,i], one total functional
/// table per (profile, table, production choice).
inline EtolSystem reduced_etol_to_edtol(const EtolSystem& g, std::size_t k) {
  g.validate();
  auto pg = detail::etol_profiles(g, k);
  detail::Tagger tg;
  auto all = g.all_symbols();
  tg.taken.insert(all.begin(), all.end());
  auto is_nt = [&](Symbol s) { return g.is_nonterminal(s); };
  for (std::size_t xi = 0; xi < pg.profiles.size(); ++xi) {
    for (std::size_t i = 0; i < pg.profiles[xi].size(); ++i) tg.get(pg, xi, i);
  }
  Symbol dead = fresh_symbol("F", tg.taken);
  EtolSystem out;
  out.reduced = true;
  out.terminals = g.terminals;
  out.nonterminals = tg.order;
  out.nonterminals.push_back(dead);
  out.axiom = tg.get(pg, 0, 0);
  for (std::size_t xi = 0; xi < pg.profiles.size(); ++xi) {
    for (const auto& st : pg.steps[xi]) {
      std::string sp;
      for (const auto& w : st.split) sp += (sp.empty() ? "" : ",") + to_string(w);
      Table t{g.tables[st.label].name + "@" + to_string(pg.profiles[xi]) + "(" + sp + ")", {}};
      std::set<Symbol> lhs;
      for (std::size_t i = 0; i < st.split.size(); ++i) {
        Symbol a = tg.get(pg, xi, i);
        lhs.insert(a);
        t.productions.push_back({a, tg.retag(pg, st.split, i, st.target, is_nt)});
      }
      for (Symbol s : out.nonterminals) {
        if (!lhs.count(s)) t.productions.push_back({s, Word(1, dead)});
      }
      out.tables.push_back(std::move(t));
    }
  }
  if (out.tables.empty()) out.tables.push_back({"T_F", {{dead, Word(1, dead)}}});
  out.validate();
  return out;
}

/// Matrix grammar with one matrix per (profile, table, production choice)
/// rewriting all occurrences [x,1] ... [x,|x|] in turn. Tags alternate
/// between [x,i] and [x,i]' so a matrix never rewrites a symbol it created.
inline MatrixGrammar reduced_etol_to_matrix(const EtolSystem& g, std::size_t k) {
  g.validate();
  auto pg = detail::etol_profiles(g, k);
  detail::Tagger tg;
  auto all = g.all_symbols();
  tg.taken.insert(all.begin(), all.end());
  auto is_nt = [&](Symbol s) { return g.is_nonterminal(s); };
  MatrixGrammar out;
  out.terminals = g.terminals;
  out.start = tg.get(pg, 0, 0, 0);
  std::set<std::pair<std::size_t, int>> done{{0, 0}};
  std::deque<std::pair<std::size_t, int>> queue{{0, 0}};
  while (!queue.empty()) {
    auto [xi, gen] = queue.front();
    queue.pop_front();
    for (const auto& st : pg.steps[xi]) {
      std::string sp;
      for (const auto& w : st.split) sp += (sp.empty() ? "" : ",") + to_string(w);
      Matrix m{g.tables[st.label].name + "@" + to_string(pg.profiles[xi]) + (gen ? "'" : "") + "(" + sp + ")", {}};
      for (std::size_t i = 0; i < st.split.size(); ++i)
        m.rules.push_back({tg.get(pg, xi, i, gen), tg.retag(pg, st.split, i, st.target, is_nt, 1 - gen)});
      out.matrices.push_back(std::move(m));
      if (done.insert({st.target, 1 - gen}).second) queue.push_back({st.target, 1 - gen});
    }
  }
  out.nonterminals = tg.order;
  out.validate();
  return out;
}

}  // namespace flw
