#pragma once

// ETOL systems with parallel rewriting.
//
// In plain mode every symbol (terminals included) is rewritten at each step
// and every table must give each symbol at least one production. In reduced
// mode only nonterminals are rewritten and terminals are copied; a table
// that has no production for some nonterminal of the current sentential form
// blocks, which is the same as sending that nonterminal to a dead symbol.
//
// A derivation tree is identified by its sequence of levels: the table used
// at each level and the production applied at every rewritten node. Two
// derivations that use different tables are different trees even when the
// productions coincide.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "flw/foundation.hpp"
#include "flw/semilinear.hpp"

namespace flw {

struct Production {
  Symbol lhs;
  Word rhs;
  friend bool operator==(const Production&, const Production&) = default;
  friend auto operator<=>(const Production&, const Production&) = default;
};

struct Table {
  std::string name;
  std::vector<Production> productions;
};

struct EtolSystem {
  bool reduced = false;
  std::vector<Symbol> nonterminals;  // V minus Sigma
  std::vector<Symbol> terminals;     // Sigma
  Symbol axiom = 0;
  std::vector<Table> tables;

  bool is_terminal(Symbol s) const { return std::find(terminals.begin(), terminals.end(), s) != terminals.end(); }
  bool is_nonterminal(Symbol s) const { return std::find(nonterminals.begin(), nonterminals.end(), s) != nonterminals.end(); }
  bool is_terminal_word(const Word& w) const {
    return std::all_of(w.begin(), w.end(), [&](Symbol s) { return is_terminal(s); });
  }

  std::vector<Symbol> all_symbols() const {
    std::vector<Symbol> v = nonterminals;
    v.insert(v.end(), terminals.begin(), terminals.end());
    return v;
  }

  /// Adds a -> a to every table for each terminal lacking a production
  /// (plain mode only).
  void add_terminal_identities() {
    for (auto& t : tables) {
      for (Symbol a : terminals) {
        bool has = std::any_of(t.productions.begin(), t.productions.end(), [&](const Production& p) { return p.lhs == a; });
        if (!has) t.productions.push_back({a, Word(1, a)});
      }
    }
  }

  void validate() const {
    std::set<Symbol> n(nonterminals.begin(), nonterminals.end()), s(terminals.begin(), terminals.end());
    require(n.size() == nonterminals.size() && s.size() == terminals.size(), "duplicate symbol in ETOL alphabet");
    for (Symbol x : nonterminals) require(!s.count(x), "symbol " + name_of(x) + " is both terminal and nonterminal");
    require(!tables.empty(), "ETOL system needs at least one table");
    require(n.count(axiom) || s.count(axiom), "axiom is not in the alphabet");
    for (const auto& t : tables) {
      std::set<Production> seen;
      for (const auto& p : t.productions) {
        require(seen.insert(p).second, "duplicate production in table " + t.name);
        if (reduced) {
          require(n.count(p.lhs), "reduced system rewrites non-nonterminal " + name_of(p.lhs) + " in table " + t.name);
        } else {
          require(n.count(p.lhs) || s.count(p.lhs), "production for unknown symbol " + name_of(p.lhs));
        }
        for (Symbol c : p.rhs) require(n.count(c) || s.count(c), "production uses unknown symbol " + name_of(c));
      }
      if (!reduced) {
        for (Symbol x : all_symbols()) {
          bool has = std::any_of(t.productions.begin(), t.productions.end(), [&](const Production& p) { return p.lhs == x; });
          require(has, "table " + t.name + " has no production for " + name_of(x));
        }
      }
    }
  }
};

namespace detail {

inline constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

/// Per-table production lists keyed by left-hand side, plus per-symbol
/// minimum yield lengths.
struct CompiledEtol {
  const EtolSystem* g;
  std::vector<std::unordered_map<Symbol, std::vector<Word>>> rules;
  std::unordered_map<Symbol, std::int64_t> mlen;
  std::unordered_set<Symbol> terminal;

  explicit CompiledEtol(const EtolSystem& sys) : g(&sys) {
    terminal.insert(sys.terminals.begin(), sys.terminals.end());
    for (const auto& t : sys.tables) {
      std::unordered_map<Symbol, std::vector<Word>> m;
      for (const auto& p : t.productions) m[p.lhs].push_back(p.rhs);
      rules.push_back(std::move(m));
    }
    for (Symbol a : sys.terminals) mlen[a] = 1;
    for (Symbol x : sys.nonterminals) mlen[x] = kInf;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& tab : rules) {
        for (const auto& [lhs, rhss] : tab) {
          if (sys.reduced && terminal.count(lhs)) continue;
          for (const auto& r : rhss) {
            std::int64_t v = word_mlen(r);
            if (v < mlen[lhs]) {
              mlen[lhs] = v;
              changed = true;
            }
          }
        }
      }
    }
  }

  bool rewritable(Symbol s) const { return !(g->reduced && terminal.count(s)); }

  std::int64_t word_mlen(const Word& w) const {
    std::int64_t t = 0;
    for (Symbol s : w) {
      auto it = mlen.find(s);
      std::int64_t v = it == mlen.end() ? kInf : it->second;
      if (v >= kInf) return kInf;
      t += v;
    }
    return t;
  }

  std::size_t erasable_count(const Word& w) const {
    std::size_t n = 0;
    for (Symbol s : w) n += mlen.at(s) == 0;
    return n;
  }

  bool terminal_word(const Word& w) const {
    return std::all_of(w.begin(), w.end(), [&](Symbol s) { return terminal.count(s) > 0; });
  }

  /// Successors of `form` under table t with multiplicities (number of
  /// production choices giving each successor). Successors whose minimum
  /// final length exceeds `bound` are dropped.
  std::map<Word, std::uint64_t> expand(const Word& form, std::size_t t, std::int64_t bound = kInf) const {
    const auto& tab = rules[t];
    std::vector<std::int64_t> rest(form.size() + 1, 0);
    for (std::size_t i = form.size(); i-- > 0;) {
      Symbol s = form[i];
      std::int64_t v = mlen.at(s);
      rest[i] = std::min(kInf, rest[i + 1] + v);
    }
    std::map<Word, std::uint64_t> cur{{Word{}, 1}};
    std::unordered_map<Word, std::int64_t> ml;
    ml[Word{}] = 0;
    for (std::size_t i = 0; i < form.size(); ++i) {
      Symbol s = form[i];
      std::map<Word, std::uint64_t> next;
      if (!rewritable(s)) {
        for (auto& [w, c] : cur) {
          Word nw = w;
          nw.push_back(s);
          next[std::move(nw)] += c;
        }
      } else {
        auto it = tab.find(s);
        if (it == tab.end()) {
          if (!g->reduced) throw Error(ErrorKind::precondition, "symbol " + name_of(s) + " has no production in table " + g->tables[t].name);
          return {};
        }
        for (auto& [w, c] : cur) {
          std::int64_t base = word_mlen(w);
          for (const auto& r : it->second) {
            std::int64_t add = word_mlen(r);
            if (add >= kInf || base + add + rest[i + 1] > bound) continue;
            next[w + r] += c;
          }
        }
      }
      cur.swap(next);
      if (cur.empty()) return {};
    }
    return cur;
  }
};

/// Terminal segments interleaved with gaps of given minimum widths: can
/// they be laid out over w in order, first and last flush with the ends?
inline bool segment_match(const std::vector<Word>& segs, const std::vector<std::int64_t>& gaps, const Word& w) {
  if (gaps.empty()) return segs[0] == w;
  const Word& first = segs.front();
  const Word& last = segs.back();
  if (w.size() < first.size() + last.size()) return false;
  if (w.compare(0, first.size(), first) != 0) return false;
  if (w.compare(w.size() - last.size(), last.size(), last) != 0) return false;
  std::size_t pos = first.size();
  std::size_t end = w.size() - last.size();
  for (std::size_t i = 1; i + 1 < segs.size(); ++i) {
    pos += static_cast<std::size_t>(gaps[i - 1]);
    if (pos > end) return false;
    const Word& sgm = segs[i];
    if (sgm.empty()) continue;
    std::size_t at = w.find(sgm, pos);
    if (at == Word::npos || at + sgm.size() > end) return false;
    pos = at + sgm.size();
  }
  return pos + static_cast<std::size_t>(gaps.back()) <= end;
}

/// Can a sentential form whose terminals are never rewritten still yield
/// exactly w?
inline bool skeleton_viable(const Word& form, const Word& w, const std::function<bool(Symbol)>& is_terminal,
                            const std::unordered_map<Symbol, std::int64_t>& mlen) {
  std::vector<Word> segs{Word{}};
  std::vector<std::int64_t> gaps;
  for (Symbol s : form) {
    if (is_terminal(s)) {
      segs.back().push_back(s);
    } else {
      std::int64_t m = mlen.at(s);
      if (m >= kInf) return false;
      gaps.push_back(m);
      segs.push_back(Word{});
    }
  }
  return segment_match(segs, gaps, w);
}

}  // namespace detail

/// All successors of a sentential form under one table.
inline std::set<Word> step(const EtolSystem& g, const Word& sentential, std::size_t table) {
  require(table < g.tables.size(), "table index out of range");
  detail::CompiledEtol c(g);
  std::set<Word> out;
  for (auto& [w, n] : c.expand(sentential, table)) out.insert(w);
  return out;
}

struct EtolBudget {
  std::size_t max_forms = 300000;  // distinct sentential forms visited
  std::size_t max_depth = 40;      // derivation height for tree counting
  std::size_t erase_cap = 6;       // occurrences of erasable symbols allowed beyond the length bound
};

struct LanguageSlice {
  std::vector<Word> words;  // shortlex order
  bool complete = true;
};

/// L(G) restricted to words of length <= max_len.
inline LanguageSlice enumerate_etol(const EtolSystem& g, std::size_t max_len, const EtolBudget& budget = {}) {
  detail::CompiledEtol c(g);
  const auto bound = static_cast<std::int64_t>(max_len);
  LanguageSlice out;
  std::set<Word> found;
  std::unordered_set<Word> seen;
  std::deque<Word> queue;
  Word start(1, g.axiom);
  if (c.word_mlen(start) > bound) return out;
  seen.insert(start);
  queue.push_back(start);
  while (!queue.empty()) {
    Word f = std::move(queue.front());
    queue.pop_front();
    if (c.terminal_word(f) && f.size() <= max_len) {
      found.insert(f);
      if (g.reduced) continue;
    }
    for (std::size_t t = 0; t < g.tables.size(); ++t) {
      for (auto& [nf, n] : c.expand(f, t, bound)) {
        if (seen.count(nf)) continue;
        if (c.erasable_count(nf) > budget.erase_cap + max_len) {
          out.complete = false;
          continue;
        }
        if (seen.size() >= budget.max_forms) {
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

struct TreeCount {
  BigInt count = 0;
  bool complete = true;  // false: count is only a lower bound
};

/// Number of derivation trees of w, by a layered count over (sentential
/// form, height). Plain systems sum trees of every height yielding w.
inline TreeCount count_trees(const EtolSystem& g, const Word& w, const EtolBudget& budget = {}) {
  detail::CompiledEtol c(g);
  const auto bound = static_cast<std::int64_t>(w.size());
  TreeCount res;
  std::map<Word, BigInt> layer;
  Word start(1, g.axiom);
  auto viable = [&](const Word& f) {
    if (c.word_mlen(f) > bound) return false;
    if (g.reduced) return detail::skeleton_viable(f, w, [&](Symbol x) { return c.terminal.count(x) > 0; }, c.mlen);
    return true;
  };
  if (!viable(start)) return res;
  layer[start] = 1;
  for (std::size_t depth = 0;; ++depth) {
    std::map<Word, BigInt> next;
    for (const auto& [f, cnt] : layer) {
      if (c.terminal_word(f)) {
        if (f == w) res.count += cnt;
        if (g.reduced) continue;
      }
      if (depth == budget.max_depth) {
        res.complete = false;
        continue;
      }
      for (std::size_t t = 0; t < g.tables.size(); ++t) {
        for (auto& [nf, mult] : c.expand(f, t, bound)) {
          if (!viable(nf)) continue;
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

/// Explicit derivation tree: the table and per-node productions at each
/// level. Node order at a level is the left-to-right order of rewritable
/// symbols in the sentential form.
struct DerivationTree {
  struct Level {
    std::size_t table;
    std::vector<std::size_t> productions;  // index into the table's list
  };
  Symbol root = 0;
  std::vector<Level> levels;
};

/// Replays a derivation tree; returns the sentential form after each level.
inline std::vector<Word> replay(const EtolSystem& g, const DerivationTree& t) {
  std::vector<Word> forms{Word(1, t.root)};
  for (const auto& lv : t.levels) {
    require(lv.table < g.tables.size(), "replay: bad table index");
    const auto& tab = g.tables[lv.table];
    Word next;
    std::size_t k = 0;
    for (Symbol s : forms.back()) {
      if (g.reduced && g.is_terminal(s)) {
        next.push_back(s);
        continue;
      }
      require(k < lv.productions.size(), "replay: too few productions at a level");
      const auto& p = tab.productions.at(lv.productions[k++]);
      require(p.lhs == s, "replay: production does not match symbol");
      next += p.rhs;
    }
    require(k == lv.productions.size(), "replay: too many productions at a level");
    forms.push_back(std::move(next));
  }
  return forms;
}

/// Enumerates derivation trees of w explicitly (no sharing), up to `limit`
/// trees and height `max_depth`.
inline std::vector<DerivationTree> derivation_trees(const EtolSystem& g, const Word& w, std::size_t max_depth,
                                                    std::size_t limit = 1000) {
  detail::CompiledEtol c(g);
  const auto bound = static_cast<std::int64_t>(w.size());
  std::vector<DerivationTree> out;
  DerivationTree cur;
  cur.root = g.axiom;
  auto rec = [&](auto&& self, const Word& f) -> void {
    if (out.size() >= limit) return;
    if (c.terminal_word(f)) {
      if (f == w) out.push_back(cur);
      if (g.reduced) return;
    }
    if (cur.levels.size() == max_depth || c.word_mlen(f) > bound) return;
    for (std::size_t t = 0; t < g.tables.size(); ++t) {
      const auto& prods = g.tables[t].productions;
      std::vector<std::size_t> pos;
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (c.rewritable(f[i])) pos.push_back(i);
      }
      std::vector<std::vector<std::size_t>> options(pos.size());
      bool blocked = false;
      for (std::size_t i = 0; i < pos.size(); ++i) {
        for (std::size_t p = 0; p < prods.size(); ++p) {
          if (prods[p].lhs == f[pos[i]]) options[i].push_back(p);
        }
        blocked |= options[i].empty();
      }
      if (blocked) continue;
      std::vector<std::size_t> pick(pos.size(), 0);
      while (true) {
        DerivationTree::Level lv{t, {}};
        Word next;
        std::size_t k = 0;
        for (std::size_t i = 0; i < f.size(); ++i) {
          if (k < pos.size() && pos[k] == i) {
            std::size_t p = options[k][pick[k]];
            lv.productions.push_back(p);
            next += prods[p].rhs;
            ++k;
          } else {
            next.push_back(f[i]);
          }
        }
        cur.levels.push_back(lv);
        self(self, next);
        cur.levels.pop_back();
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
    }
  };
  rec(rec, Word(1, g.axiom));
  return out;
}

/// Symbols with a production other than the identity in some table. In
/// reduced mode every nonterminal counts as active.
inline std::set<Symbol> active_symbols(const EtolSystem& g) {
  if (g.reduced) return {g.nonterminals.begin(), g.nonterminals.end()};
  std::set<Symbol> out;
  for (const auto& t : g.tables) {
    for (const auto& p : t.productions) {
      if (p.rhs != Word(1, p.lhs)) out.insert(p.lhs);
    }
  }
  return out;
}

struct IndexAudit {
  std::map<Word, std::size_t> per_word;  // minimal index found per word
  std::size_t max_index = 0;
  std::size_t max_len = 0;
  bool complete = true;
};

/// For each word of length <= max_len, the least over derivations of the
/// largest number of active symbols in any sentential form (minimax search).
inline IndexAudit index_audit(const EtolSystem& g, std::size_t max_len, const EtolBudget& budget = {}) {
  detail::CompiledEtol c(g);
  auto active = active_symbols(g);
  auto act = [&](const Word& f) {
    std::size_t n = 0;
    for (Symbol s : f) n += active.count(s);
    return n;
  };
  const auto bound = static_cast<std::int64_t>(max_len);
  IndexAudit audit;
  audit.max_len = max_len;
  using Item = std::pair<std::size_t, Word>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  std::unordered_map<Word, std::size_t> best;
  std::unordered_set<Word> settled;
  Word start(1, g.axiom);
  if (c.word_mlen(start) > bound) return audit;
  best[start] = act(start);
  pq.push({best[start], start});
  while (!pq.empty()) {
    auto [cost, f] = pq.top();
    pq.pop();
    if (settled.count(f)) continue;
    settled.insert(f);
    if (c.terminal_word(f) && f.size() <= max_len) {
      audit.per_word.emplace(f, cost);
      if (g.reduced) continue;
    }
    for (std::size_t t = 0; t < g.tables.size(); ++t) {
      for (auto& [nf, n] : c.expand(f, t, bound)) {
        if (settled.count(nf)) continue;
        if (c.erasable_count(nf) > budget.erase_cap + max_len) {
          audit.complete = false;
          continue;
        }
        std::size_t nc = std::max(cost, act(nf));
        auto it = best.find(nf);
        if (it != best.end() && it->second <= nc) continue;
        if (best.size() >= budget.max_forms) {
          audit.complete = false;
          continue;
        }
        best[nf] = nc;
        pq.push({nc, nf});
      }
    }
  }
  for (const auto& [w, i] : audit.per_word) audit.max_index = std::max(audit.max_index, i);
  return audit;
}

struct EtolClass {
  bool edtol = false;
  bool e0l = false;
  bool ed0l = false;
};

inline EtolClass classify(const EtolSystem& g) {
  EtolClass c;
  c.edtol = std::all_of(g.tables.begin(), g.tables.end(), [](const Table& t) {
    std::set<Symbol> lhs;
    for (const auto& p : t.productions) {
      if (!lhs.insert(p.lhs).second) return false;
    }
    return true;
  });
  c.e0l = g.tables.size() == 1;
  c.ed0l = c.edtol && c.e0l;
  return c;
}

namespace detail {

inline std::set<Symbol> symbol_set(const EtolSystem& g) {
  auto v = g.all_symbols();
  return {v.begin(), v.end()};
}

inline Word substitute(const Word& w, const std::map<Symbol, Symbol>& m) {
  Word out = w;
  for (auto& s : out) {
    auto it = m.find(s);
    if (it != m.end()) s = it->second;
  }
  return out;
}

}  // namespace detail

/// Plain system with every nonterminal active and no active terminal.
inline EtolSystem active_normal_form(const EtolSystem& g) {
  require(!g.reduced, "active_normal_form applies to plain systems");
  g.validate();
  auto active = active_symbols(g);
  std::set<Symbol> active_terms;
  for (Symbol a : g.terminals) {
    if (active.count(a)) active_terms.insert(a);
  }
  bool all_nt_active = std::all_of(g.nonterminals.begin(), g.nonterminals.end(), [&](Symbol x) { return active.count(x) > 0; });
  if (active_terms.empty() && all_nt_active) return g;
  auto taken = detail::symbol_set(g);
  std::map<Symbol, Symbol> prime;
  for (Symbol a : active_terms) {
    Symbol p = fresh_symbol(name_of(a) + "'", taken);
    taken.insert(p);
    prime[a] = p;
  }
  Symbol dead = fresh_symbol("F", taken);
  EtolSystem out;
  out.reduced = false;
  out.terminals = g.terminals;
  out.nonterminals = g.nonterminals;
  for (auto& [a, p] : prime) out.nonterminals.push_back(p);
  out.nonterminals.push_back(dead);
  out.axiom = detail::substitute(Word(1, g.axiom), prime)[0];
  for (const auto& t : g.tables) {
    Table nt{t.name, {}};
    for (const auto& p : t.productions) {
      Symbol lhs = p.lhs;
      if (g.is_terminal(lhs) && !active_terms.count(lhs)) {
        nt.productions.push_back(p);
        continue;
      }
      nt.productions.push_back({detail::substitute(Word(1, lhs), prime)[0], detail::substitute(p.rhs, prime)});
    }
    for (auto& [a, pr] : prime) nt.productions.push_back({a, Word(1, a)});
    nt.productions.push_back({dead, Word(1, dead)});
    out.tables.push_back(std::move(nt));
  }
  Table fin{"T_$", {}};
  for (auto& [a, p] : prime) fin.productions.push_back({p, Word(1, a)});
  for (Symbol a : g.terminals) fin.productions.push_back({a, Word(1, a)});
  for (Symbol x : g.nonterminals) fin.productions.push_back({x, Word(1, dead)});
  fin.productions.push_back({dead, Word{dead, dead}});
  out.tables.push_back(std::move(fin));
  out.validate();
  return out;
}

/// Reduced system simulating a plain one: active terminals become primed
/// nonterminals and a final table turns primes into terminals.
inline EtolSystem to_reduced(const EtolSystem& g) {
  if (g.reduced) return g;
  g.validate();
  auto active = active_symbols(g);
  auto taken = detail::symbol_set(g);
  std::map<Symbol, Symbol> prime;
  for (Symbol a : g.terminals) {
    if (!active.count(a)) continue;
    Symbol p = fresh_symbol(name_of(a) + "'", taken);
    taken.insert(p);
    prime[a] = p;
  }
  Symbol dead = fresh_symbol("F", taken);
  EtolSystem out;
  out.reduced = true;
  out.terminals = g.terminals;
  out.nonterminals = g.nonterminals;
  for (auto& [a, p] : prime) out.nonterminals.push_back(p);
  out.nonterminals.push_back(dead);
  out.axiom = detail::substitute(Word(1, g.axiom), prime)[0];
  for (const auto& t : g.tables) {
    Table nt{t.name, {}};
    for (const auto& p : t.productions) {
      if (g.is_terminal(p.lhs) && !prime.count(p.lhs)) continue;  // inactive terminal: copied
      nt.productions.push_back({detail::substitute(Word(1, p.lhs), prime)[0], detail::substitute(p.rhs, prime)});
    }
    nt.productions.push_back({dead, Word(1, dead)});
    out.tables.push_back(std::move(nt));
  }
  Table fin{"P_$", {}};
  for (auto& [a, p] : prime) fin.productions.push_back({p, Word(1, a)});
  for (Symbol x : g.nonterminals) fin.productions.push_back({x, Word(1, dead)});
  fin.productions.push_back({dead, Word(1, dead)});
  out.tables.push_back(std::move(fin));
  out.validate();
  return out;
}

/// Plain system with the same language and the same tree counts as a
/// reduced one. Barred symbols mark paths of maximal height; terminals are
/// carried as subscripted copies until the final table.
inline EtolSystem from_reduced(const EtolSystem& g) {
  require(g.reduced, "from_reduced needs a reduced system");
  g.validate();
  auto taken = detail::symbol_set(g);
  auto fresh = [&](const std::string& n) {
    Symbol s = fresh_symbol(n, taken);
    taken.insert(s);
    return s;
  };
  std::map<Symbol, Symbol> bar, one, two;
  for (Symbol x : g.nonterminals) bar[x] = fresh("bar(" + name_of(x) + ")");
  for (Symbol a : g.terminals) {
    bar[a] = fresh("bar(" + name_of(a) + ")");
    one[a] = fresh(name_of(a) + "_1");
    two[a] = fresh(name_of(a) + "_2");
  }
  Symbol lam_bar = fresh("bar(λ)");
  Symbol lam1 = fresh("λ_1");
  Symbol lam2 = fresh("λ_2");
  Symbol dead = fresh("F");

  EtolSystem out;
  out.reduced = false;
  out.terminals = g.terminals;
  out.nonterminals = g.nonterminals;
  for (Symbol x : g.nonterminals) out.nonterminals.push_back(bar[x]);
  for (Symbol a : g.terminals) {
    out.nonterminals.push_back(bar[a]);
    out.nonterminals.push_back(one[a]);
    out.nonterminals.push_back(two[a]);
  }
  for (Symbol s : {lam_bar, lam1, lam2, dead}) out.nonterminals.push_back(s);
  out.axiom = bar[g.axiom];

  auto h1 = [&](const Word& alpha) {
    if (alpha.empty()) return Word(1, lam1);
    Word r;
    for (Symbol s : alpha) r.push_back(g.is_terminal(s) ? one[s] : s);
    return r;
  };
  for (const auto& t : g.tables) {
    Table nt{t.name, {}};
    std::set<Symbol> has;
    for (const auto& p : t.productions) {
      has.insert(p.lhs);
      Word base = h1(p.rhs);
      nt.productions.push_back({p.lhs, base});
      if (g.is_terminal_word(p.rhs)) {
        Word barred;
        for (Symbol a : p.rhs) barred.push_back(bar[a]);
        if (barred.empty()) barred.push_back(lam_bar);
        nt.productions.push_back({bar[p.lhs], barred});
      } else {
        std::vector<std::size_t> vars;
        for (std::size_t i = 0; i < base.size(); ++i) {
          if (g.is_nonterminal(base[i])) vars.push_back(i);
        }
        for (std::size_t mask = 1; mask < (std::size_t{1} << vars.size()); ++mask) {
          Word v = base;
          for (std::size_t b = 0; b < vars.size(); ++b) {
            if (mask >> b & 1) v[vars[b]] = bar[v[vars[b]]];
          }
          nt.productions.push_back({bar[p.lhs], v});
        }
      }
    }
    for (Symbol x : g.nonterminals) {
      if (!has.count(x)) {
        nt.productions.push_back({x, Word(1, dead)});
        nt.productions.push_back({bar[x], Word(1, dead)});
      }
    }
    for (Symbol a : g.terminals) {
      nt.productions.push_back({one[a], Word(1, two[a])});
      nt.productions.push_back({two[a], Word(1, two[a])});
      nt.productions.push_back({a, Word(1, dead)});
      nt.productions.push_back({bar[a], Word(1, dead)});
    }
    nt.productions.push_back({lam1, Word(1, lam2)});
    nt.productions.push_back({lam2, Word(1, lam2)});
    nt.productions.push_back({lam_bar, Word(1, dead)});
    nt.productions.push_back({dead, Word(1, dead)});
    out.tables.push_back(std::move(nt));
  }
  Table fin{"P_$", {}};
  fin.productions.push_back({dead, Word(1, dead)});
  for (Symbol a : g.terminals) {
    fin.productions.push_back({bar[a], Word(1, a)});
    fin.productions.push_back({one[a], Word(1, dead)});
    fin.productions.push_back({two[a], Word(1, a)});
    fin.productions.push_back({a, Word(1, dead)});
  }
  fin.productions.push_back({lam_bar, Word{}});
  fin.productions.push_back({lam1, Word(1, dead)});
  fin.productions.push_back({lam2, Word{}});
  for (Symbol x : g.nonterminals) {
    fin.productions.push_back({x, Word(1, dead)});
    fin.productions.push_back({bar[x], Word(1, dead)});
  }
  out.tables.push_back(std::move(fin));
  out.validate();
  return out;
}

/// Two-table plain system for {a1^l1 ... ak^lk : l in Q} with a fresh axiom
/// seeding one branch per linear component. Index k.
inline EtolSystem semilinear_to_etol(const SemilinearSet& Q, const std::vector<Symbol>& letters) {
  const std::size_t k = letters.size();
  require(Q.dimension() == k, "semilinear set dimension differs from letter count");
  require(std::set<Symbol>(letters.begin(), letters.end()).size() == k, "letters must be distinct");
  EtolSystem g;
  g.terminals = letters;
  std::set<Symbol> taken(letters.begin(), letters.end());
  auto fresh = [&](const std::string& n) {
    Symbol s = fresh_symbol(n, taken);
    taken.insert(s);
    return s;
  };
  g.axiom = fresh("S");
  Symbol z = fresh("Z");
  g.nonterminals = {g.axiom, z};
  Table p0{"P0", {}}, p1{"P1", {}};
  p0.productions.push_back({g.axiom, Word(1, z)});
  for (std::size_t ci = 0; ci < Q.components.size(); ++ci) {
    const LinearSet& L = Q.components[ci];
    const std::size_t r = L.periods.size();
    std::string tag = Q.components.size() > 1 ? std::to_string(ci + 1) + "," : "";
    std::vector<std::vector<Symbol>> x(k, std::vector<Symbol>(r));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        x[i][j] = fresh("X_{" + tag + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}");
        g.nonterminals.push_back(x[i][j]);
      }
    }
    Word seed;
    for (std::size_t i = 0; i < k; ++i) {
      seed += Word(static_cast<std::size_t>(L.constant[i]), letters[i]);
      if (r > 0) seed.push_back(x[i][0]);
    }
    p1.productions.push_back({g.axiom, seed});
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        Word pump(static_cast<std::size_t>(L.periods[j][i]), letters[i]);
        pump.push_back(x[i][j]);
        p0.productions.push_back({x[i][j], pump});
        p1.productions.push_back({x[i][j], j + 1 < r ? Word(1, x[i][j + 1]) : Word{}});
      }
    }
  }
  p0.productions.push_back({z, Word(1, z)});
  p1.productions.push_back({z, Word(1, z)});
  g.tables = {p0, p1};
  g.add_terminal_identities();
  g.validate();
  return g;
}

/// Words phi(t), t in Q, up to max_len, paired with their tuples; throws if
/// two tuples give the same word.
inline void check_phi_injective(const std::vector<Word>& words, const SemilinearSet& Q, std::size_t max_len) {
  std::vector<std::int64_t> weights;
  for (const auto& w : words) weights.push_back(static_cast<std::int64_t>(w.size()));
  std::map<Word, Vec> seen;
  for (const auto& t : tuples_within(weights, static_cast<std::int64_t>(max_len))) {
    if (!member(Q, t)) continue;
    Word w = phi(words, t);
    auto [it, fresh] = seen.emplace(w, t);
    if (!fresh)
      throw Error(ErrorKind::precondition, "injectivity check failed: " + to_string(w) + " = phi" + to_string(it->second) +
                                               " = phi" + to_string(t));
  }
}

struct UnambiguousOptions {
  std::int64_t semi_simple_box = 12;
  std::size_t injectivity_len = 14;
};

/// Reduced finite-index system generating phi(Q) with one derivation tree per
/// word, for semi-simple Q with phi injective on Q. A seed table picks the
/// linear component; then, per period in turn, a pump table adds one copy of
/// the period to all k branches and an advance table moves to the next period.
inline EtolSystem unambiguous_bounded_etol(const std::vector<Word>& words, const SemilinearSet& Q,
                                           const UnambiguousOptions& opt = {}) {
  const std::size_t k = words.size();
  require(Q.dimension() == k, "semilinear set dimension differs from word count");
  for (const auto& w : words) require(!w.empty(), "words must be nonempty");
  auto rep = validate_semi_simple(Q, opt.semi_simple_box);
  if (!rep.verdict) {
    std::string why = "semi-simple validation failed:";
    for (std::size_t i = 0; i < rep.independent.size(); ++i) {
      if (!rep.independent[i]) why += " component " + std::to_string(i) + " has dependent periods;";
    }
    for (const auto& c : rep.collisions)
      why += " components " + std::to_string(c.first) + " and " + std::to_string(c.second) + " meet at " + to_string(c.point) + ";";
    throw Error(ErrorKind::precondition, why);
  }
  check_phi_injective(words, Q, opt.injectivity_len);
  EtolSystem g;
  g.reduced = true;
  std::set<Symbol> letters;
  for (const auto& w : words) letters.insert(w.begin(), w.end());
  g.terminals.assign(letters.begin(), letters.end());
  std::sort(g.terminals.begin(), g.terminals.end(), symbol_less);
  std::set<Symbol> taken(letters.begin(), letters.end());
  auto fresh = [&](const std::string& n) {
    Symbol s = fresh_symbol(n, taken);
    taken.insert(s);
    return s;
  };
  g.axiom = fresh("S");
  g.nonterminals.push_back(g.axiom);
  for (std::size_t ci = 0; ci < Q.components.size(); ++ci) {
    const LinearSet& L = Q.components[ci];
    const std::size_t r = L.periods.size();
    std::string c = std::to_string(ci + 1);
    std::vector<std::vector<Symbol>> b(k, std::vector<Symbol>(r));
    for (std::size_t s = 0; s < k; ++s) {
      for (std::size_t j = 0; j < r; ++j) {
        b[s][j] = fresh("B_{" + c + "," + std::to_string(s + 1) + "," + std::to_string(j + 1) + "}");
        g.nonterminals.push_back(b[s][j]);
      }
    }
    Word seed;
    for (std::size_t s = 0; s < k; ++s) {
      seed += power(words[s], static_cast<std::size_t>(L.constant[s]));
      if (r > 0) seed.push_back(b[s][0]);
    }
    g.tables.push_back({"seed" + c, {{g.axiom, seed}}});
    for (std::size_t j = 0; j < r; ++j) {
      std::string cj = c + "," + std::to_string(j + 1);
      Table pump{"pump" + cj, {}}, next{"next" + cj, {}};
      for (std::size_t s = 0; s < k; ++s) {
        Word rhs = power(words[s], static_cast<std::size_t>(L.periods[j][s]));
        rhs.push_back(b[s][j]);
        pump.productions.push_back({b[s][j], rhs});
        next.productions.push_back({b[s][j], j + 1 < r ? Word(1, b[s][j + 1]) : Word{}});
      }
      g.tables.push_back(std::move(pump));
      g.tables.push_back(std::move(next));
    }
  }
  g.validate();
  return g;
}

}  // namespace flw
