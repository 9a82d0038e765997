#pragma once

// Parikh images, commutative equivalence and decomposition of a word over a
// fixed tuple of blocks.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "flw/error.hpp"
#include "flw/symbol.hpp"

namespace flw {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using Vec = std::vector<std::int64_t>;

inline std::string to_string(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out + ")";
}

inline Vec add(const Vec& a, const Vec& b) {
  require(a.size() == b.size(), "dimension mismatch");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline std::int64_t norm1(const Vec& v) {
  std::int64_t s = 0;
  for (auto x : v) s += x;
  return s;
}

inline Vec parikh(const Word& w, const Alphabet& alpha) {
  Vec v(alpha.size(), 0);
  for (Symbol s : w) {
    if (!alpha.contains(s)) throw Error(ErrorKind::precondition, "symbol-not-in-alphabet: " + name_of(s));
    ++v[alpha.index_of(s)];
  }
  return v;
}

/// Every word over `letters` of length <= n, in shortlex order.
inline std::vector<Word> words_upto(const std::vector<Symbol>& letters, std::size_t n) {
  std::vector<Word> out{Word{}}, layer{Word{}};
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

/// Symbol multiset of a word; alphabet-free form of the Parikh image.
inline std::map<Symbol, std::int64_t> letter_counts(const Word& w) {
  std::map<Symbol, std::int64_t> m;
  for (Symbol s : w) ++m[s];
  return m;
}

inline bool comm_equivalent(const Word& u, const Word& v) {
  return u.size() == v.size() && letter_counts(u) == letter_counts(v);
}

/// All exponent tuples (i1..ik) with w = w1^i1 ... wk^ik.
inline std::set<Vec> decompositions(const Word& w, const std::vector<Word>& blocks) {
  for (const auto& b : blocks) require(!b.empty(), "decomposition blocks must be nonempty");
  const std::size_t k = blocks.size();
  const std::size_t n = w.size();
  std::set<Vec> out;
  if (k == 0) {
    if (n == 0) out.insert(Vec{});
    return out;
  }
  // done[j][p]: suffix w[p..] decomposes over blocks j..k-1
  std::vector<std::vector<char>> done(k + 1, std::vector<char>(n + 1, 0));
  done[k][n] = 1;
  for (std::size_t j = k; j-- > 0;) {
    const Word& b = blocks[j];
    for (std::size_t p = n + 1; p-- > 0;) {
      std::size_t q = p;
      while (true) {
        if (done[j + 1][q]) {
          done[j][p] = 1;
          break;
        }
        if (q + b.size() > n || w.compare(q, b.size(), b) != 0) break;
        q += b.size();
      }
    }
  }
  Vec cur(k, 0);
  auto walk = [&](auto&& self, std::size_t j, std::size_t p) -> void {
    if (j == k) {
      if (p == n) out.insert(cur);
      return;
    }
    const Word& b = blocks[j];
    std::size_t q = p;
    std::int64_t e = 0;
    while (true) {
      if (done[j + 1][q]) {
        cur[j] = e;
        self(self, j + 1, q);
      }
      if (q + b.size() > n || w.compare(q, b.size(), b) != 0) break;
      q += b.size();
      ++e;
    }
    cur[j] = 0;
  };
  if (done[0][0]) walk(walk, 0, 0);
  return out;
}

}  // namespace flw
