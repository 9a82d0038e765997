#pragma once

// Desk-scale enumeration oracle over every language-defining object.

#include <string>
#include <variant>
#include <vector>

#include "flw/counter.hpp"
#include "flw/etol.hpp"
#include "flw/matrix.hpp"
#include "flw/nfa.hpp"
#include "flw/semilinear.hpp"

namespace flw {

struct FiniteSpec {
  std::vector<Word> words;
};

struct RegexSpec {
  std::string source;
  Nfa nfa;

  static RegexSpec parse(const std::string& src) { return {src, parse_regex(src)}; }
};

using LanguageSpec = std::variant<BoundedSpec, CounterMachine, EtolSystem, MatrixGrammar, FiniteSpec, RegexSpec, Nfa>;

struct OracleBudget {
  EtolBudget derivation;           // ETOL and matrix search
  RunBudget run;                   // counter machine runs
  std::size_t max_candidates = 2000000;  // words tried by brute-force membership
};

namespace detail {

inline LanguageSlice enumerate_bounded(const BoundedSpec& s, std::size_t max_len) {
  LanguageSlice out;
  if (s.kind == BoundedKind::ginsburg) {
    out.words = phi_image(s.words, *s.q1, max_len);
    return out;
  }
  std::vector<std::int64_t> weights;
  for (const auto& w : s.words) weights.push_back(static_cast<std::int64_t>(w.size()));
  std::set<Word> found;
  for (const auto& t : tuples_within(weights, static_cast<std::int64_t>(max_len))) {
    Word w = phi(s.words, t);
    if (!found.count(w) && induced_member(s, w)) found.insert(w);
  }
  out.words.assign(found.begin(), found.end());
  sort_shortlex(out.words);
  return out;
}

inline LanguageSlice enumerate_counter(const CounterMachine& m, std::size_t max_len, const OracleBudget& b) {
  LanguageSlice out;
  const auto& letters = m.alphabet.symbols();
  std::vector<Word> layer{Word{}};
  std::size_t tried = 0;
  for (std::size_t len = 0; len <= max_len && !layer.empty(); ++len) {
    for (const auto& w : layer) {
      if (++tried > b.max_candidates) {
        out.complete = false;
        sort_shortlex(out.words);
        return out;
      }
      Verdict v = accepts(m, w, b.run);
      if (v == Verdict::accept) out.words.push_back(w);
      if (v == Verdict::budget_exhausted) out.complete = false;
    }
    if (len == max_len) break;
    std::vector<Word> next;
    next.reserve(layer.size() * letters.size());
    for (const auto& w : layer) {
      for (Symbol a : letters) next.push_back(w + a);
    }
    layer.swap(next);
  }
  sort_shortlex(out.words);
  return out;
}

}  // namespace detail

/// L(spec) restricted to words of length <= max_len, in shortlex order. An
/// incomplete search clears `complete` instead of throwing.
inline LanguageSlice enumerate(const LanguageSpec& spec, std::size_t max_len, const OracleBudget& budget = {}) {
  return std::visit(
      [&](const auto& s) -> LanguageSlice {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BoundedSpec>) {
          return detail::enumerate_bounded(s, max_len);
        } else if constexpr (std::is_same_v<T, CounterMachine>) {
          return detail::enumerate_counter(s, max_len, budget);
        } else if constexpr (std::is_same_v<T, EtolSystem>) {
          return enumerate_etol(s, max_len, budget.derivation);
        } else if constexpr (std::is_same_v<T, MatrixGrammar>) {
          return enumerate_matrix(s, max_len, budget.derivation);
        } else if constexpr (std::is_same_v<T, FiniteSpec>) {
          LanguageSlice out;
          for (const auto& w : s.words) {
            if (w.size() <= max_len) out.words.push_back(w);
          }
          sort_shortlex(out.words);
          return out;
        } else if constexpr (std::is_same_v<T, RegexSpec>) {
          return {enumerate_nfa(s.nfa, max_len), true};
        } else {
          return {enumerate_nfa(s, max_len), true};
        }
      },
      spec);
}

/// Like enumerate, but an incomplete search is an error.
inline std::vector<Word> enumerate_exact(const LanguageSpec& spec, std::size_t max_len, const OracleBudget& budget = {}) {
  auto r = enumerate(spec, max_len, budget);
  if (!r.complete) throw Error(ErrorKind::budget_exhausted, "enumeration budget exhausted at length " + std::to_string(max_len));
  return r.words;
}

}  // namespace flw
