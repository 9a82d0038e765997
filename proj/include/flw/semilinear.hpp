#pragma once

// Linear and semilinear subsets of N^k, the map phi from exponent tuples to
// bounded words, and membership for the boundedness notions built on them.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flw/foundation.hpp"

namespace flw {

struct LinearSet {
  Vec constant;
  std::vector<Vec> periods;

  LinearSet() = default;
  LinearSet(Vec c, std::vector<Vec> p) : constant(std::move(c)), periods(std::move(p)) { validate(); }

  std::size_t dimension() const { return constant.size(); }

  void validate() const {
    require(!constant.empty(), "linear set dimension must be at least 1");
    for (auto x : constant) require(x >= 0, "negative entry in constant " + flw::to_string(constant));
    for (const auto& p : periods) {
      require(p.size() == constant.size(), "period dimension mismatch");
      bool nonzero = false;
      for (auto x : p) {
        require(x >= 0, "negative entry in period " + flw::to_string(p));
        nonzero |= x > 0;
      }
      require(nonzero, "zero period is not allowed");
    }
  }

  friend bool operator==(const LinearSet&, const LinearSet&) = default;
};

struct SemilinearSet {
  std::vector<LinearSet> components;

  SemilinearSet() = default;
  explicit SemilinearSet(std::vector<LinearSet> c) : components(std::move(c)) { validate(); }
  SemilinearSet(std::initializer_list<LinearSet> c) : components(c) { validate(); }

  std::size_t dimension() const { return components.front().dimension(); }

  void validate() const {
    require(!components.empty(), "semilinear set needs at least one component");
    for (const auto& c : components) {
      c.validate();
      require(c.dimension() == components.front().dimension(), "components differ in dimension");
    }
  }

  friend bool operator==(const SemilinearSet&, const SemilinearSet&) = default;
};

namespace detail {

inline bool linear_search(const LinearSet& L, Vec rest, std::size_t j) {
  if (j == L.periods.size()) return std::all_of(rest.begin(), rest.end(), [](auto x) { return x == 0; });
  const Vec& p = L.periods[j];
  std::int64_t bound = -1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0) {
      std::int64_t b = rest[i] / p[i];
      if (bound < 0 || b < bound) bound = b;
    }
  }
  for (std::int64_t lam = 0; lam <= bound; ++lam) {
    if (linear_search(L, rest, j + 1)) return true;
    for (std::size_t i = 0; i < p.size(); ++i) rest[i] -= p[i];
  }
  return false;
}

}  // namespace detail

inline bool member(const LinearSet& L, const Vec& v) {
  require(v.size() == L.dimension(), "dimension-mismatch: vector " + flw::to_string(v));
  Vec rest(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    rest[i] = v[i] - L.constant[i];
    if (rest[i] < 0) return false;
  }
  return detail::linear_search(L, rest, 0);
}

inline bool member(const SemilinearSet& Q, const Vec& v) {
  require(v.size() == Q.dimension(), "dimension-mismatch: vector " + flw::to_string(v));
  return std::any_of(Q.components.begin(), Q.components.end(), [&](const LinearSet& L) { return member(L, v); });
}

inline Word phi(const std::vector<Word>& words, const Vec& t) {
  require(words.size() == t.size(), "phi: tuple length differs from word count");
  Word out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    require(t[i] >= 0, "phi: negative exponent");
    out += power(words[i], static_cast<std::size_t>(t[i]));
  }
  return out;
}

enum class BoundedKind { ginsburg, parikh, ginsburg_parikh };

inline std::string to_string(BoundedKind k) {
  switch (k) {
    case BoundedKind::ginsburg: return "ginsburg";
    case BoundedKind::parikh: return "parikh";
    case BoundedKind::ginsburg_parikh: return "ginsburg-parikh";
  }
  return "?";
}

struct BoundedSpec {
  std::vector<Word> words;
  BoundedKind kind = BoundedKind::ginsburg;
  std::optional<SemilinearSet> q1;  // over N^k, k = words.size()
  std::optional<SemilinearSet> q2;  // over N^n, n = alphabet size
  Alphabet alphabet;                // Parikh coordinate order

  BoundedSpec() = default;
  BoundedSpec(std::vector<Word> w, BoundedKind k, std::optional<SemilinearSet> a, std::optional<SemilinearSet> b,
              std::optional<Alphabet> alpha = std::nullopt)
      : words(std::move(w)), kind(k), q1(std::move(a)), q2(std::move(b)) {
    alphabet = alpha ? *alpha : Alphabet::of_words(words);
    validate();
  }

  static BoundedSpec ginsburg(std::vector<Word> w, SemilinearSet q) {
    return BoundedSpec(std::move(w), BoundedKind::ginsburg, std::move(q), std::nullopt);
  }

  void validate() const {
    require(!words.empty(), "bounded spec needs at least one word");
    for (const auto& w : words) require(!w.empty(), "bounded spec words must be nonempty");
    for (const auto& w : words) require(alphabet.covers(w), "bounded spec word uses a symbol outside the alphabet");
    bool need1 = kind != BoundedKind::parikh;
    bool need2 = kind != BoundedKind::ginsburg;
    require(!need1 || q1.has_value(), to_string(kind) + " spec requires Q1");
    require(!need2 || q2.has_value(), to_string(kind) + " spec requires Q2");
    if (q1) require(q1->dimension() == words.size(), "Q1 dimension differs from word count");
    if (q2) require(q2->dimension() == alphabet.size(), "Q2 dimension differs from alphabet size");
  }

  /// True when every word is a single letter and the letters are pairwise distinct.
  bool distinct_letters() const {
    std::set<Symbol> seen;
    for (const auto& w : words) {
      if (w.size() != 1 || !seen.insert(w[0]).second) return false;
    }
    return true;
  }
};

inline bool induced_member(const BoundedSpec& spec, const Word& w) {
  for (Symbol s : w) {
    if (!spec.alphabet.contains(s)) throw Error(ErrorKind::precondition, "alphabet mismatch: " + name_of(s));
  }
  auto decs = decompositions(w, spec.words);
  if (decs.empty()) return false;
  if (spec.kind != BoundedKind::ginsburg) {
    if (!member(*spec.q2, parikh(w, spec.alphabet))) return false;
    if (spec.kind == BoundedKind::parikh) return true;
  }
  return std::any_of(decs.begin(), decs.end(), [&](const Vec& t) { return member(*spec.q1, t); });
}

/// All tuples t in N^k with sum t_i*weights_i <= budget, in lexicographic order.
inline std::vector<Vec> tuples_within(const std::vector<std::int64_t>& weights, std::int64_t budget) {
  std::vector<Vec> out;
  Vec cur(weights.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, std::int64_t left) -> void {
    if (i == weights.size()) {
      out.push_back(cur);
      return;
    }
    for (std::int64_t e = 0; e * weights[i] <= left; ++e) {
      cur[i] = e;
      self(self, i + 1, left - e * weights[i]);
    }
    cur[i] = 0;
  };
  rec(rec, 0, budget);
  return out;
}

/// phi(Q) restricted to words of length <= max_len, generated from tuples.
inline std::vector<Word> phi_image(const std::vector<Word>& words, const SemilinearSet& Q, std::size_t max_len) {
  require(Q.dimension() == words.size(), "phi_image: dimension mismatch");
  std::vector<std::int64_t> weights;
  for (const auto& w : words) weights.push_back(static_cast<std::int64_t>(w.size()));
  std::vector<Word> out;
  for (const auto& t : tuples_within(weights, static_cast<std::int64_t>(max_len))) {
    if (member(Q, t)) out.push_back(phi(words, t));
  }
  sort_shortlex(out);
  return out;
}

/// Rank of a list of integer vectors over the rationals.
inline std::size_t rational_rank(const std::vector<Vec>& rows) {
  if (rows.empty()) return 0;
  std::size_t cols = rows.front().size();
  std::vector<std::vector<Rational>> m;
  for (const auto& r : rows) {
    std::vector<Rational> row;
    for (auto x : r) row.emplace_back(x);
    m.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

inline bool is_simple(const LinearSet& L) { return rational_rank(L.periods) == L.periods.size(); }

struct SemiSimpleReport {
  struct Collision {
    std::size_t first;
    std::size_t second;
    Vec point;
  };
  std::vector<bool> independent;
  std::vector<Collision> collisions;
  std::int64_t box = 0;
  bool verdict = false;
};

inline SemiSimpleReport validate_semi_simple(const SemilinearSet& Q, std::int64_t box) {
  require(box >= 1, "box must be at least 1");
  SemiSimpleReport rep;
  rep.box = box;
  for (const auto& c : Q.components) rep.independent.push_back(is_simple(c));
  const std::size_t k = Q.dimension();
  const std::size_t m = Q.components.size();
  if (m > 1) {
    std::set<std::pair<std::size_t, std::size_t>> reported;
    Vec v(k, 0);
    while (true) {
      std::vector<std::size_t> hits;
      for (std::size_t i = 0; i < m; ++i) {
        if (member(Q.components[i], v)) hits.push_back(i);
      }
      for (std::size_t a = 0; a < hits.size(); ++a) {
        for (std::size_t b = a + 1; b < hits.size(); ++b) {
          if (reported.insert({hits[a], hits[b]}).second) rep.collisions.push_back({hits[a], hits[b], v});
        }
      }
      std::size_t i = 0;
      while (i < k && v[i] == box) v[i++] = 0;
      if (i == k) break;
      ++v[i];
    }
  }
  rep.verdict = rep.collisions.empty() &&
                std::all_of(rep.independent.begin(), rep.independent.end(), [](bool b) { return b; });
  return rep;
}

inline BoundedSpec morphic_lift(const BoundedSpec& spec, const std::map<Symbol, Word>& h) {
  require(spec.kind == BoundedKind::ginsburg, "morphic_lift needs a Ginsburg spec");
  require(spec.distinct_letters(), "morphic_lift needs distinct-letter words");
  std::vector<Word> lifted;
  for (const auto& w : spec.words) {
    auto it = h.find(w[0]);
    require(it != h.end(), "morphism undefined on " + name_of(w[0]));
    require(!it->second.empty(), "morphism maps " + name_of(w[0]) + " to the empty word");
    lifted.push_back(it->second);
  }
  return BoundedSpec::ginsburg(std::move(lifted), *spec.q1);
}

inline Word apply_morphism(const Word& w, const std::map<Symbol, Word>& h) {
  Word out;
  for (Symbol s : w) {
    auto it = h.find(s);
    require(it != h.end(), "morphism undefined on " + name_of(s));
    out += it->second;
  }
  return out;
}

}  // namespace flw
