#pragma once

// One-way reversal-bounded multicounter machines.
//
// A transition fires on (state, input, zero pattern). The input is a symbol,
// lambda, or the right end-marker. The pattern has one character per
// counter: '0' requires the counter to be zero, '1' requires it positive,
// '*' accepts either. A word w is accepted when some run reads w followed by
// the end-marker and halts in an accepting state, with every counter
// changing direction at most reversal_bound times. A reversal is a switch
// between a strictly increasing and a strictly decreasing phase; zero moves
// never end a phase.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "flw/semilinear.hpp"
#include "flw/vecautomata.hpp"

namespace flw {

struct CounterInput {
  enum Kind { symbol, lambda, end } kind = lambda;
  Symbol letter = 0;

  static CounterInput of(Symbol s) { return {symbol, s}; }
  static CounterInput eps() { return {lambda, 0}; }
  static CounterInput end_marker() { return {end, 0}; }

  friend bool operator==(const CounterInput&, const CounterInput&) = default;
  friend auto operator<=>(const CounterInput& a, const CounterInput& b) {
    return std::tie(a.kind, a.letter) <=> std::tie(b.kind, b.letter);
  }
};

struct CounterTransition {
  int from = 0;
  CounterInput input;
  std::string pattern;  // one of '0', '1', '*' per counter
  int to = 0;
  std::vector<int> moves;  // each in {-1, 0, +1}
};

struct CounterMachine {
  std::size_t counters = 0;
  std::size_t reversal_bound = 0;
  Alphabet alphabet;
  std::vector<std::string> states;
  int initial = 0;
  std::set<int> accepting;
  std::vector<CounterTransition> transitions;

  int add_state(std::string name) {
    states.push_back(std::move(name));
    return static_cast<int>(states.size()) - 1;
  }

  void add(int from, CounterInput in, std::string pattern, int to, std::vector<int> moves) {
    transitions.push_back({from, in, std::move(pattern), to, std::move(moves)});
  }

  std::string any_pattern() const { return std::string(counters, '*'); }
  std::vector<int> no_move() const { return std::vector<int>(counters, 0); }

  void validate() const {
    require(!states.empty(), "machine has no states");
    require(initial >= 0 && initial < static_cast<int>(states.size()), "initial state out of range");
    for (int q : accepting) require(q >= 0 && q < static_cast<int>(states.size()), "accepting state out of range");
    for (const auto& t : transitions) {
      require(t.from >= 0 && t.from < static_cast<int>(states.size()), "transition source out of range");
      require(t.to >= 0 && t.to < static_cast<int>(states.size()), "transition target out of range");
      require(t.pattern.size() == counters, "pattern length differs from counter count");
      require(t.moves.size() == counters, "move vector length differs from counter count");
      if (t.input.kind == CounterInput::symbol) require(alphabet.contains(t.input.letter), "transition reads a symbol outside the alphabet");
      for (std::size_t i = 0; i < counters; ++i) {
        char c = t.pattern[i];
        require(c == '0' || c == '1' || c == '*', "pattern characters must be 0, 1 or *");
        require(t.moves[i] >= -1 && t.moves[i] <= 1, "moves must lie in {-1,0,1}");
        require(!(t.moves[i] < 0 && c != '1'), "decrement allowed only on a counter known to be positive");
      }
    }
  }
};

enum class Verdict { accept, reject, budget_exhausted };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::accept: return "accept";
    case Verdict::reject: return "reject";
    case Verdict::budget_exhausted: return "budget-exhausted";
  }
  return "?";
}

struct RunBudget {
  std::size_t max_configs = 200000;  // distinct configurations explored
  std::int64_t max_counter = -1;     // -1: derived as steps_per_symbol*(|w|+1)+8
  std::size_t steps_per_symbol = 16;
};

namespace detail {

inline bool pattern_matches(const std::string& pattern, const std::vector<std::int64_t>& c) {
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] == '0' && c[i] != 0) return false;
    if (pattern[i] == '1' && c[i] == 0) return false;
  }
  return true;
}

struct Config {
  int state;
  std::size_t pos;  // symbols consumed; |w|+1 once the end-marker is read
  std::vector<std::int64_t> c;
  std::vector<signed char> dir;
  std::vector<std::uint8_t> rev;
  friend auto operator<=>(const Config&, const Config&) = default;
};

/// Applies a transition; returns false if it violates the reversal bound.
inline bool apply_moves(const CounterMachine& m, const CounterTransition& t, Config& cfg) {
  for (std::size_t i = 0; i < m.counters; ++i) {
    int d = t.moves[i];
    if (d == 0) continue;
    if (cfg.dir[i] != 0 && cfg.dir[i] != d) {
      if (++cfg.rev[i] > m.reversal_bound) return false;
    }
    cfg.dir[i] = static_cast<signed char>(d);
    cfg.c[i] += d;
    if (cfg.c[i] < 0) throw Error(ErrorKind::precondition, "run legality violated: negative counter");
  }
  return true;
}

}  // namespace detail

/// Breadth-first search over configurations with memoization.
inline Verdict accepts(const CounterMachine& m, const Word& w, const RunBudget& budget = {}) {
  std::int64_t cap = budget.max_counter >= 0 ? budget.max_counter
                                             : static_cast<std::int64_t>(budget.steps_per_symbol * (w.size() + 1) + 8);
  std::map<int, std::vector<const CounterTransition*>> by_state;
  for (const auto& t : m.transitions) by_state[t.from].push_back(&t);
  detail::Config start{m.initial, 0, std::vector<std::int64_t>(m.counters, 0), std::vector<signed char>(m.counters, 0),
                       std::vector<std::uint8_t>(m.counters, 0)};
  std::set<detail::Config> seen{start};
  std::deque<detail::Config> queue{start};
  bool truncated = false;
  const std::size_t done = w.size() + 1;
  while (!queue.empty()) {
    detail::Config cfg = std::move(queue.front());
    queue.pop_front();
    if (cfg.pos == done && m.accepting.count(cfg.state)) return Verdict::accept;
    auto it = by_state.find(cfg.state);
    if (it == by_state.end()) continue;
    for (const auto* t : it->second) {
      if (!detail::pattern_matches(t->pattern, cfg.c)) continue;
      std::size_t npos = cfg.pos;
      if (t->input.kind == CounterInput::symbol) {
        if (cfg.pos >= w.size() || w[cfg.pos] != t->input.letter) continue;
        ++npos;
      } else if (t->input.kind == CounterInput::end) {
        if (cfg.pos != w.size()) continue;
        ++npos;
      }
      detail::Config next = cfg;
      next.state = t->to;
      next.pos = npos;
      if (!detail::apply_moves(m, *t, next)) continue;
      if (std::any_of(next.c.begin(), next.c.end(), [&](auto x) { return x > cap; })) {
        truncated = true;
        continue;
      }
      if (seen.count(next)) continue;
      if (seen.size() >= budget.max_configs) {
        truncated = true;
        continue;
      }
      seen.insert(next);
      queue.push_back(std::move(next));
    }
  }
  return truncated ? Verdict::budget_exhausted : Verdict::reject;
}

namespace detail {

inline bool patterns_overlap(const std::string& a, const std::string& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] == '0' && b[i] == '1') || (a[i] == '1' && b[i] == '0')) return false;
  }
  return true;
}

}  // namespace detail

/// For every (q, a, pattern): |delta(q,a,pattern) u delta(q,lambda,pattern)| <= 1.
inline bool is_deterministic(const CounterMachine& m) {
  const auto& ts = m.transitions;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = i + 1; j < ts.size(); ++j) {
      const auto& a = ts[i];
      const auto& b = ts[j];
      if (a.from != b.from) continue;
      bool inputs_clash = a.input == b.input || a.input.kind == CounterInput::lambda || b.input.kind == CounterInput::lambda;
      if (!inputs_clash || !detail::patterns_overlap(a.pattern, b.pattern)) continue;
      if (a.to == b.to && a.moves == b.moves) continue;
      return false;
    }
  }
  return true;
}

namespace detail {

inline std::string pattern_with(std::size_t k, std::size_t at, char c) {
  std::string p(k, '*');
  p[at] = c;
  return p;
}

inline std::vector<int> unit_move(std::size_t k, std::size_t at, int d) {
  std::vector<int> v(k, 0);
  v[at] = d;
  return v;
}

/// Emits a lambda chain from `from` that decrements counters by `amounts`
/// one unit at a time and ends in `to`. A zero counter on the way goes to
/// `fail` (or blocks when fail < 0).
inline void decrement_chain(CounterMachine& m, int from, const std::vector<std::int64_t>& amounts,
                            const std::vector<std::size_t>& counter_of, int to, int fail, const std::string& tag) {
  std::vector<std::size_t> units;
  for (std::size_t i = 0; i < amounts.size(); ++i) {
    for (std::int64_t r = 0; r < amounts[i]; ++r) units.push_back(counter_of[i]);
  }
  if (units.empty()) {
    if (from != to) m.add(from, CounterInput::eps(), m.any_pattern(), to, m.no_move());
    return;
  }
  int cur = from;
  for (std::size_t u = 0; u < units.size(); ++u) {
    int nxt = u + 1 == units.size() ? to : m.add_state(tag + "." + std::to_string(u + 1));
    m.add(cur, CounterInput::eps(), pattern_with(m.counters, units[u], '1'), nxt, unit_move(m.counters, units[u], -1));
    if (fail >= 0) m.add(cur, CounterInput::eps(), pattern_with(m.counters, units[u], '0'), fail, m.no_move());
    cur = nxt;
  }
}

}  // namespace detail

/// Machine accepting {w : parikh(w) in Q}: count letters, subtract the
/// constant, guess period repetitions, accept on all-zero counters.
inline CounterMachine from_semilinear(const SemilinearSet& Q, const Alphabet& alpha) {
  require(Q.dimension() == alpha.size(), "semilinear set dimension differs from alphabet size");
  const std::size_t n = alpha.size();
  CounterMachine m;
  m.counters = n;
  m.reversal_bound = 1;
  m.alphabet = alpha;
  m.initial = m.add_state("start");
  int accept = m.add_state("accept");
  m.accepting.insert(accept);
  std::vector<std::size_t> ident(n);
  std::iota(ident.begin(), ident.end(), 0);
  for (std::size_t ci = 0; ci < Q.components.size(); ++ci) {
    const LinearSet& L = Q.components[ci];
    std::string tag = "c" + std::to_string(ci);
    int read = m.add_state(tag + ".read");
    m.add(m.initial, CounterInput::eps(), m.any_pattern(), read, m.no_move());
    for (std::size_t i = 0; i < n; ++i) {
      m.add(read, CounterInput::of(alpha[i]), m.any_pattern(), read, detail::unit_move(n, i, +1));
    }
    int constant = m.add_state(tag + ".const");
    m.add(read, CounterInput::end_marker(), m.any_pattern(), constant, m.no_move());
    std::vector<int> heads;
    for (std::size_t j = 0; j < L.periods.size(); ++j) heads.push_back(m.add_state(tag + ".p" + std::to_string(j)));
    int check = m.add_state(tag + ".check");
    heads.push_back(check);
    detail::decrement_chain(m, constant, L.constant, ident, heads[0], -1, tag + ".const");
    for (std::size_t j = 0; j < L.periods.size(); ++j) {
      detail::decrement_chain(m, heads[j], L.periods[j], ident, heads[j], -1, tag + ".p" + std::to_string(j));
      m.add(heads[j], CounterInput::eps(), m.any_pattern(), heads[j + 1], m.no_move());
    }
    m.add(check, CounterInput::eps(), std::string(n, '0'), accept, m.no_move());
  }
  m.validate();
  return m;
}

struct EchelonCertificate {
  // per component: period indices in processing order, and their pivots
  std::vector<std::vector<std::size_t>> order;
  std::vector<std::vector<std::size_t>> pivots;
};

namespace detail {

inline bool check_echelon(const LinearSet& L, const std::vector<std::size_t>& order, const std::vector<std::size_t>& pivots) {
  if (order.size() != L.periods.size() || pivots.size() != order.size()) return false;
  std::vector<std::size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != i) return false;
  }
  for (std::size_t j = 0; j < order.size(); ++j) {
    if (pivots[j] >= L.dimension() || L.periods[order[j]][pivots[j]] <= 0) return false;
    if (j > 0 && pivots[j] < pivots[j - 1]) return false;
    for (std::size_t l = j + 1; l < order.size(); ++l) {
      if (L.periods[order[l]][pivots[j]] != 0) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Searches period orders for an echelon certificate.
inline std::optional<EchelonCertificate> find_echelon_certificate(const SemilinearSet& Q) {
  EchelonCertificate cert;
  for (const auto& L : Q.components) {
    std::vector<std::size_t> order(L.periods.size());
    std::iota(order.begin(), order.end(), 0);
    bool found = false;
    do {
      std::vector<std::size_t> piv;
      std::size_t lo = 0;
      bool ok = true;
      for (std::size_t j = 0; j < order.size() && ok; ++j) {
        bool got = false;
        for (std::size_t c = lo; c < L.dimension(); ++c) {
          if (L.periods[order[j]][c] <= 0) continue;
          bool later_zero = true;
          for (std::size_t l = j + 1; l < order.size(); ++l) later_zero &= L.periods[order[l]][c] == 0;
          if (later_zero) {
            piv.push_back(c);
            lo = c;
            got = true;
            break;
          }
        }
        ok = got;
      }
      if (ok) {
        cert.order.push_back(order);
        cert.pivots.push_back(piv);
        found = true;
        break;
      }
    } while (std::next_permutation(order.begin(), order.end()));
    if (!found) return std::nullopt;
  }
  return cert;
}

/// Deterministic machine for a distinct-letter Ginsburg spec whose
/// components carry echelon certificates. Each component gets its own copy
/// of the block counters; components are tried one after another.
inline CounterMachine dcm_for_bounded(const BoundedSpec& spec, const EchelonCertificate& cert) {
  require(spec.kind == BoundedKind::ginsburg, "dcm_for_bounded needs a Ginsburg spec");
  require(spec.distinct_letters(), "not-distinct-letter: words must be pairwise distinct single letters");
  const SemilinearSet& Q = *spec.q1;
  const std::size_t k = spec.words.size();
  const std::size_t comps = Q.components.size();
  if (cert.order.size() != comps || cert.pivots.size() != comps)
    throw Error(ErrorKind::precondition, "no-echelon-certificate: certificate does not cover every component");
  for (std::size_t ci = 0; ci < comps; ++ci) {
    if (!detail::check_echelon(Q.components[ci], cert.order[ci], cert.pivots[ci]))
      throw Error(ErrorKind::precondition, "no-echelon-certificate: component " + std::to_string(ci) + " is not in echelon form");
  }
  std::vector<Symbol> letters;
  for (const auto& w : spec.words) letters.push_back(w[0]);
  CounterMachine m;
  m.counters = k * comps;
  m.reversal_bound = 1;
  m.alphabet = Alphabet(letters);
  std::vector<int> read(k);
  for (std::size_t i = 0; i < k; ++i) read[i] = m.add_state("read" + std::to_string(i));
  m.initial = read[0];
  int accept = m.add_state("accept");
  m.accepting.insert(accept);
  int reject = m.add_state("reject");
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      std::vector<int> mv(m.counters, 0);
      for (std::size_t ci = 0; ci < comps; ++ci) mv[ci * k + j] = 1;
      m.add(read[i], CounterInput::of(letters[j]), m.any_pattern(), read[j], mv);
    }
  }
  std::vector<int> starts(comps + 1);
  for (std::size_t ci = 0; ci < comps; ++ci) starts[ci] = m.add_state("c" + std::to_string(ci) + ".start");
  starts[comps] = reject;
  for (std::size_t i = 0; i < k; ++i) m.add(read[i], CounterInput::end_marker(), m.any_pattern(), starts[0], m.no_move());
  for (std::size_t ci = 0; ci < comps; ++ci) {
    const LinearSet& L = Q.components[ci];
    std::string tag = "c" + std::to_string(ci);
    int fail = starts[ci + 1];
    std::vector<std::size_t> cidx(k);
    for (std::size_t i = 0; i < k; ++i) cidx[i] = ci * k + i;
    std::vector<int> heads;
    for (std::size_t j = 0; j < L.periods.size(); ++j) heads.push_back(m.add_state(tag + ".h" + std::to_string(j)));
    int check = m.add_state(tag + ".check");
    heads.push_back(check);
    detail::decrement_chain(m, starts[ci], L.constant, cidx, heads[0], fail, tag + ".const");
    for (std::size_t j = 0; j < L.periods.size(); ++j) {
      std::size_t piv = cidx[cert.pivots[ci][j]];
      int body = m.add_state(tag + ".b" + std::to_string(j));
      m.add(heads[j], CounterInput::eps(), detail::pattern_with(m.counters, piv, '0'), heads[j + 1], m.no_move());
      m.add(heads[j], CounterInput::eps(), detail::pattern_with(m.counters, piv, '1'), body, m.no_move());
      detail::decrement_chain(m, body, L.periods[cert.order[ci][j]], cidx, heads[j], fail,
                              tag + ".b" + std::to_string(j));
    }
    std::string all_zero(m.counters, '*');
    for (auto c : cidx) all_zero[c] = '0';
    m.add(check, CounterInput::eps(), all_zero, accept, m.no_move());
    for (std::size_t i = 0; i < k; ++i) {
      std::string p(m.counters, '*');
      for (std::size_t l = 0; l < i; ++l) p[cidx[l]] = '0';
      p[cidx[i]] = '1';
      m.add(check, CounterInput::eps(), p, fail, m.no_move());
    }
  }
  m.validate();
  return m;
}

/// Number of accepted words of each length 0..n for a deterministic machine,
/// by dynamic programming over configurations (one run per word).
inline std::vector<BigInt> count_accepted_words(const CounterMachine& m, std::size_t n, std::size_t max_lambda = 100000) {
  require(is_deterministic(m), "count_accepted_words needs a deterministic machine");
  std::map<int, std::vector<const CounterTransition*>> by_state;
  for (const auto& t : m.transitions) by_state[t.from].push_back(&t);
  using Cfg = detail::Config;
  auto find = [&](const Cfg& c, const CounterInput& in) -> const CounterTransition* {
    auto it = by_state.find(c.state);
    if (it == by_state.end()) return nullptr;
    for (const auto* t : it->second) {
      if (t->input == in && detail::pattern_matches(t->pattern, c.c)) return t;
    }
    return nullptr;
  };
  // follows lambda moves; returns false if the run dies
  auto settle = [&](Cfg& c) {
    for (std::size_t steps = 0;; ++steps) {
      const CounterTransition* t = find(c, CounterInput::eps());
      if (!t) return true;
      if (steps > max_lambda) throw Error(ErrorKind::budget_exhausted, "lambda chain exceeds budget");
      c.state = t->to;
      if (!detail::apply_moves(m, *t, c)) return false;
    }
  };
  auto fire = [&](Cfg c, const CounterInput& in) -> std::optional<Cfg> {
    const CounterTransition* t = find(c, in);
    if (!t) return std::nullopt;
    c.state = t->to;
    if (!detail::apply_moves(m, *t, c)) return std::nullopt;
    if (!settle(c)) return std::nullopt;
    return c;
  };
  std::vector<BigInt> out(n + 1);
  Cfg start{m.initial, 0, std::vector<std::int64_t>(m.counters, 0), std::vector<signed char>(m.counters, 0),
            std::vector<std::uint8_t>(m.counters, 0)};
  std::map<Cfg, BigInt> layer;
  if (settle(start)) layer[start] = 1;
  for (std::size_t len = 0; len <= n; ++len) {
    for (const auto& [c, cnt] : layer) {
      auto fin = fire(c, CounterInput::end_marker());
      if (fin && m.accepting.count(fin->state)) out[len] += cnt;
    }
    if (len == n) break;
    std::map<Cfg, BigInt> next;
    for (const auto& [c, cnt] : layer) {
      for (Symbol a : m.alphabet) {
        auto nc = fire(c, CounterInput::of(a));
        if (nc) next[*nc] += cnt;
      }
    }
    layer.swap(next);
  }
  return out;
}

struct DecideResult {
  bool holds = false;
  std::optional<Vec> witness_tuple;
  std::optional<Word> witness;
};

struct DecideOptions {
  bool assert_injective = false;   // same word tuple, caller asserts phi is injective
  std::size_t injectivity_check_len = 12;
};

/// Decides equal / subset / disjoint for two bounded Ginsburg specs by
/// comparing their semilinear sets.
inline DecideResult decide_bounded(const BoundedSpec& s1, const BoundedSpec& s2, Relation rel, const DecideOptions& opt = {}) {
  require(s1.kind == BoundedKind::ginsburg && s2.kind == BoundedKind::ginsburg, "decide_bounded needs Ginsburg specs");
  if (s1.words != s2.words) throw Error(ErrorKind::precondition, "letter-tuple mismatch: specs are bounded over different words");
  if (!s1.distinct_letters()) {
    require(opt.assert_injective, "letter-tuple mismatch: words are not distinct letters and no injectivity assertion was given");
    std::vector<std::int64_t> weights;
    for (const auto& w : s1.words) weights.push_back(static_cast<std::int64_t>(w.size()));
    std::map<Word, Vec> seen;
    for (const auto& t : tuples_within(weights, static_cast<std::int64_t>(opt.injectivity_check_len))) {
      Word w = phi(s1.words, t);
      auto [it, fresh] = seen.emplace(w, t);
      if (!fresh)
        throw Error(ErrorKind::precondition, "injectivity-assertion-failed: " + to_string(w) + " = phi" + to_string(it->second) +
                                                 " = phi" + to_string(t));
    }
  }
  CompareResult c = compare(*s1.q1, *s2.q1, rel);
  DecideResult r;
  r.holds = c.holds;
  if (c.witness) {
    r.witness_tuple = c.witness;
    r.witness = phi(s1.words, *c.witness);
  }
  return r;
}

}  // namespace flw
