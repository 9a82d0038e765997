#pragma once

// Counting series of finite-index matrix grammars.
//
// Coefficients count accepted matrix strings of the Szilard automaton by
// theta-weight: total length, or Parikh vector of theta(alpha). A cycle of
// weight-zero edges on an accepting path makes a coefficient infinite.

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "flw/matrix.hpp"
#include "flw/oracle.hpp"

namespace flw {

struct Coefficient {
  BigInt value = 0;
  bool infinite = false;

  bool zero() const { return !infinite && value == 0; }
  friend bool operator==(const Coefficient&, const Coefficient&) = default;

  Coefficient& operator+=(const Coefficient& o) {
    infinite = infinite || o.infinite;
    if (!infinite) value += o.value;
    return *this;
  }

  friend Coefficient operator*(const Coefficient& a, const Coefficient& b) {
    if (a.zero() || b.zero()) return {};
    if (a.infinite || b.infinite) return {0, true};
    return {a.value * b.value, false};
  }
};

inline std::string to_string(const Coefficient& c) { return c.infinite ? "inf" : c.value.str(); }

struct CoefficientTable {
  std::vector<Coefficient> terms;  // terms[n] for n = 0..N

  std::vector<BigInt> values() const {
    std::vector<BigInt> out;
    for (const auto& c : terms) {
      require(!c.infinite, "coefficient table has an infinite entry");
      out.push_back(c.value);
    }
    return out;
  }

  /// Plain text rows "n count".
  std::string rows() const {
    std::string out;
    for (std::size_t n = 0; n < terms.size(); ++n) out += std::to_string(n) + " " + to_string(terms[n]) + "\n";
    return out;
  }
};

struct ParikhTable {
  std::vector<Symbol> letters;          // coordinate order
  std::map<Vec, Coefficient> terms;     // nonzero entries with norm <= bound

  Coefficient at(const Vec& v) const {
    auto it = terms.find(v);
    return it == terms.end() ? Coefficient{} : it->second;
  }
};

namespace detail {

/// Number of weight-zero paths between every pair of states (infinite when
/// a path can pass through a weight-zero cycle).
inline std::vector<std::vector<Coefficient>> zero_closure(const Dfa& d, const std::vector<bool>& zero_letter) {
  const std::size_t n = d.size();
  std::vector<std::vector<int>> adj(n);
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t a = 0; a < d.letters; ++a) {
      int t = d.delta[q][a];
      if (t >= 0 && zero_letter[a]) adj[q].push_back(t);
    }
  }
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t p = 0; p < n; ++p) {
    std::vector<int> stack{static_cast<int>(p)};
    reach[p][p] = true;
    while (!stack.empty()) {
      int q = stack.back();
      stack.pop_back();
      for (int t : adj[q]) {
        if (!reach[p][t]) {
          reach[p][t] = true;
          stack.push_back(t);
        }
      }
    }
  }
  std::vector<bool> cyclic(n, false);
  for (std::size_t q = 0; q < n; ++q) {
    for (int t : adj[q]) {
      if (reach[t][q]) cyclic[q] = true;
    }
  }
  std::vector<std::vector<Coefficient>> z(n, std::vector<Coefficient>(n));
  for (std::size_t q = 0; q < n; ++q) {
    // memoized path counts into q over the acyclic part
    std::vector<std::optional<Coefficient>> memo(n);
    std::function<Coefficient(int)> paths = [&](int p) -> Coefficient {
      if (memo[p]) return *memo[p];
      Coefficient c;
      if (static_cast<std::size_t>(p) == q) c.value = 1;
      for (int t : adj[p]) {
        if (reach[t][q]) c += paths(t);
      }
      memo[p] = c;
      return c;
    };
    for (std::size_t p = 0; p < n; ++p) {
      if (!reach[p][q]) continue;
      bool inf = false;
      for (std::size_t r = 0; r < n && !inf; ++r) inf = cyclic[r] && reach[p][r] && reach[r][q];
      z[p][q] = inf ? Coefficient{0, true} : paths(static_cast<int>(p));
    }
  }
  return z;
}

}  // namespace detail

/// Number of accepted matrix strings alpha with |theta(alpha)| = n, n <= N.
/// For an unambiguous normal-form grammar this is the counting function.
inline CoefficientTable counting_coefficients(const MatrixGrammar& g, std::size_t N, std::size_t k) {
  auto s = szilard_dfa(g, k);
  auto th = theta(g);
  const Dfa& d = s.dfa;
  std::vector<bool> zero(d.letters);
  for (std::size_t a = 0; a < d.letters; ++a) zero[a] = th[a].empty();
  auto z = detail::zero_closure(d, zero);
  const std::size_t n = d.size();
  std::vector<std::vector<Coefficient>> f(N + 1, std::vector<Coefficient>(n));
  for (std::size_t w = 0; w <= N; ++w) {
    std::vector<Coefficient> g0(n);
    if (w == 0) {
      g0[d.initial].value = 1;
    } else {
      for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t a = 0; a < d.letters; ++a) {
          int t = d.delta[p][a];
          std::size_t c = th[a].size();
          if (t < 0 || c == 0 || c > w || f[w - c][p].zero()) continue;
          g0[t] += f[w - c][p];
        }
      }
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (g0[r].zero()) continue;
      for (std::size_t q = 0; q < n; ++q) f[w][q] += g0[r] * z[r][q];
    }
  }
  CoefficientTable out;
  out.terms.resize(N + 1);
  for (std::size_t w = 0; w <= N; ++w) {
    for (std::size_t q = 0; q < n; ++q) {
      if (d.accepting[q]) out.terms[w] += f[w][q];
    }
  }
  return out;
}

/// Number of accepted alpha per Parikh vector of theta(alpha), for vectors
/// of norm <= bound; coordinates follow the grammar's terminal order.
inline ParikhTable parikh_multiplicities(const MatrixGrammar& g, std::size_t bound, std::size_t k) {
  auto s = szilard_dfa(g, k);
  auto th = theta(g);
  const Dfa& d = s.dfa;
  std::map<Symbol, std::size_t> coord;
  for (Symbol t : g.terminals) coord.emplace(t, coord.size());
  std::vector<Vec> weight(d.letters, Vec(coord.size(), 0));
  std::vector<bool> zero(d.letters);
  for (std::size_t a = 0; a < d.letters; ++a) {
    for (Symbol t : th[a]) ++weight[a][coord.at(t)];
    zero[a] = th[a].empty();
  }
  auto z = detail::zero_closure(d, zero);
  const std::size_t n = d.size();
  // layers by norm; each layer maps vector -> per-state coefficient
  std::vector<std::map<Vec, std::vector<Coefficient>>> f(bound + 1);
  for (std::size_t w = 0; w <= bound; ++w) {
    std::map<Vec, std::vector<Coefficient>> g0;
    if (w == 0) {
      auto& origin = g0[Vec(coord.size(), 0)];
      origin.resize(n);
      origin[d.initial].value = 1;
    } else {
      for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t a = 0; a < d.letters; ++a) {
          int t = d.delta[p][a];
          std::size_t c = th[a].size();
          if (t < 0 || c == 0 || c > w) continue;
          for (const auto& [v, counts] : f[w - c]) {
            if (counts[p].zero()) continue;
            auto& slot = g0[add(v, weight[a])];
            if (slot.empty()) slot.resize(n);
            slot[t] += counts[p];
          }
        }
      }
    }
    for (auto& [v, counts] : g0) {
      std::vector<Coefficient> closed(n);
      for (std::size_t r = 0; r < n; ++r) {
        if (counts[r].zero()) continue;
        for (std::size_t q = 0; q < n; ++q) closed[q] += counts[r] * z[r][q];
      }
      f[w][v] = std::move(closed);
    }
  }
  ParikhTable out;
  out.letters = g.terminals;
  for (std::size_t w = 0; w <= bound; ++w) {
    for (const auto& [v, counts] : f[w]) {
      Coefficient c;
      for (std::size_t q = 0; q < n; ++q) {
        if (d.accepting[q]) c += counts[q];
      }
      if (!c.zero()) out.terms[v] = c;
    }
  }
  return out;
}

/// |L(spec) and Sigma^n| for n <= N from the enumeration oracle.
inline CoefficientTable brute_counting(const LanguageSpec& spec, std::size_t N, const OracleBudget& budget = {}) {
  CoefficientTable out;
  out.terms.resize(N + 1);
  for (const auto& w : enumerate_exact(spec, N, budget)) out.terms[w.size()].value += 1;
  return out;
}

struct RecurrenceFit {
  std::size_t order = 0;
  std::vector<Rational> coefficients;  // a_n = sum c_i a_{n-i}, i = 1..order
  std::size_t validated_terms = 0;     // terms checked beyond the first 2*order
};

/// Smallest order d <= max_order whose recurrence, solved exactly from the
/// first 2d terms (free unknowns set to 0), holds on every later term.
inline std::optional<RecurrenceFit> fit_recurrence(const std::vector<BigInt>& seq, std::size_t max_order, std::size_t slack = 2) {
  require(max_order >= 1, "max_order must be positive");
  if (seq.size() < 2 * max_order + slack)
    throw Error(ErrorKind::precondition, "insufficient-terms: need " + std::to_string(2 * max_order + slack) + ", got " +
                                             std::to_string(seq.size()));
  for (std::size_t d = 1; d <= max_order; ++d) {
    // rows n = d..2d-1: sum_i c_i a_{n-i} = a_n
    std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d + 1));
    for (std::size_t r = 0; r < d; ++r) {
      std::size_t n = d + r;
      for (std::size_t i = 0; i < d; ++i) m[r][i] = Rational(seq[n - 1 - i]);
      m[r][d] = Rational(seq[n]);
    }
    std::vector<int> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < d && row < d; ++col) {
      std::size_t p = row;
      while (p < d && m[p][col] == 0) ++p;
      if (p == d) continue;
      std::swap(m[p], m[row]);
      for (std::size_t r = 0; r < d; ++r) {
        if (r == row || m[r][col] == 0) continue;
        Rational f = m[r][col] / m[row][col];
        for (std::size_t c = col; c <= d; ++c) m[r][c] -= f * m[row][c];
      }
      pivot_col.push_back(static_cast<int>(col));
      ++row;
    }
    bool consistent = true;
    for (std::size_t r = row; r < d; ++r) consistent = consistent && m[r][d] == 0;
    if (!consistent) continue;
    std::vector<Rational> c(d, Rational(0));
    for (std::size_t r = 0; r < row; ++r) c[pivot_col[r]] = m[r][d] / m[r][pivot_col[r]];
    bool ok = true;
    for (std::size_t n = d; n < seq.size() && ok; ++n) {
      Rational v = 0;
      for (std::size_t i = 0; i < d; ++i) v += c[i] * Rational(seq[n - 1 - i]);
      ok = v == Rational(seq[n]);
    }
    if (ok) return RecurrenceFit{d, c, seq.size() - 2 * d};
  }
  return std::nullopt;
}

struct SupportFit {
  std::size_t offset = 0;  // first nonzero index
  std::size_t stride = 1;  // gcd of gaps between nonzero indices
  std::optional<RecurrenceFit> fit;
};

/// Fits the subsequence a_offset, a_offset+stride, ... after checking that
/// every other term is zero. Sequences that are zero throughout fit with
/// order 1.
inline SupportFit fit_support(const std::vector<BigInt>& seq, std::size_t max_order, std::size_t slack = 2) {
  SupportFit out;
  std::vector<std::size_t> support;
  for (std::size_t n = 0; n < seq.size(); ++n) {
    if (seq[n] != 0) support.push_back(n);
  }
  if (support.empty()) {
    out.fit = fit_recurrence(seq, max_order, slack);
    return out;
  }
  out.offset = support.front();
  std::size_t g = 0;
  for (std::size_t i = 1; i < support.size(); ++i) g = std::gcd(g, support[i] - support[i - 1]);
  out.stride = g == 0 ? 1 : g;
  std::vector<BigInt> sub;
  for (std::size_t n = out.offset; n < seq.size(); n += out.stride) sub.push_back(seq[n]);
  out.fit = fit_recurrence(sub, max_order, slack);
  return out;
}

}  // namespace flw
