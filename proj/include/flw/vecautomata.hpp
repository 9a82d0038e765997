#pragma once

// Synchronous binary automata over N^k. A vector is read least significant
// digit first, one digit per track per letter; letter bit j is the digit of
// track j. Every automaton here is padding closed: appending all-zero
// letters never changes acceptance, so any encoding of sufficient length
// decides membership.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "flw/dfa.hpp"
#include "flw/semilinear.hpp"

namespace flw {

struct VectorDfa {
  std::size_t tracks = 0;
  Dfa dfa;
};

struct EquationSystem {
  std::vector<std::vector<std::int64_t>> a;  // rows = equations
  std::vector<std::int64_t> b;
  std::vector<bool> existential;             // per column; projected away by solutions()

  std::size_t variables() const { return a.empty() ? existential.size() : a.front().size(); }
};

inline std::size_t track_letters(std::size_t tracks) {
  require(tracks < 20, "too many tracks for an explicit digit alphabet");
  return std::size_t{1} << tracks;
}

/// Digit-by-digit solver for A*y = b over nonnegative integers.
inline VectorDfa from_equations(const EquationSystem& e) {
  const std::size_t n = e.variables();
  const std::size_t rows = e.a.size();
  require(e.b.size() == rows, "equation system: b has wrong length");
  for (const auto& r : e.a) require(r.size() == n, "equation system: ragged coefficient matrix");
  VectorDfa out;
  out.tracks = n;
  out.dfa.letters = track_letters(n);
  std::map<std::vector<std::int64_t>, int> ids;
  std::vector<std::vector<std::int64_t>> carries;
  auto get = [&](const std::vector<std::int64_t>& c) {
    auto it = ids.find(c);
    if (it != ids.end()) return it->second;
    bool zero = std::all_of(c.begin(), c.end(), [](auto x) { return x == 0; });
    int id = out.dfa.add_state(zero);
    ids[c] = id;
    carries.push_back(c);
    return id;
  };
  std::vector<std::int64_t> init(rows);
  for (std::size_t i = 0; i < rows; ++i) init[i] = -e.b[i];
  out.dfa.initial = get(init);
  for (std::size_t s = 0; s < carries.size(); ++s) {
    for (std::size_t d = 0; d < out.dfa.letters; ++d) {
      std::vector<std::int64_t> next(rows);
      bool ok = true;
      for (std::size_t i = 0; i < rows && ok; ++i) {
        std::int64_t v = carries[s][i];
        for (std::size_t j = 0; j < n; ++j) {
          if (d >> j & 1) v += e.a[i][j];
        }
        if (v % 2 != 0) ok = false;
        next[i] = v / 2;
      }
      if (ok) {
        int t = get(next);
        out.dfa.delta[s][d] = t;
      }
    }
  }
  out.dfa = minimize(std::move(out.dfa));
  return out;
}

/// Existential projection of the tracks in `drop`.
inline VectorDfa project(const VectorDfa& m, const std::set<std::size_t>& drop) {
  for (auto t : drop) require(t < m.tracks, "project: track out of range");
  std::vector<std::size_t> keep;
  for (std::size_t t = 0; t < m.tracks; ++t) {
    if (!drop.count(t)) keep.push_back(t);
  }
  const Dfa& d = m.dfa;
  VectorDfa out;
  out.tracks = keep.size();
  out.dfa.letters = track_letters(keep.size());
  // full letter -> reduced letter
  std::vector<std::size_t> reduce(d.letters);
  for (std::size_t l = 0; l < d.letters; ++l) {
    std::size_t r = 0;
    for (std::size_t i = 0; i < keep.size(); ++i) {
      if (l >> keep[i] & 1) r |= std::size_t{1} << i;
    }
    reduce[l] = r;
  }
  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> sets;
  auto get = [&](std::vector<int> s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    bool acc = std::any_of(s.begin(), s.end(), [&](int q) { return d.accepting[q]; });
    int id = out.dfa.add_state(acc);
    ids[s] = id;
    sets.push_back(std::move(s));
    return id;
  };
  out.dfa.initial = get({d.initial});
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::vector<std::vector<int>> succ(out.dfa.letters);
    for (int q : sets[i]) {
      for (std::size_t l = 0; l < d.letters; ++l) {
        int t = d.delta[q][l];
        if (t >= 0) succ[reduce[l]].push_back(t);
      }
    }
    for (std::size_t r = 0; r < out.dfa.letters; ++r) {
      int t = get(succ[r]);
      out.dfa.delta[i][r] = t;
    }
  }
  // padding repair: accept if an all-zero continuation reaches acceptance
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < out.dfa.size(); ++i) {
      if (!out.dfa.accepting[i] && out.dfa.accepting[out.dfa.delta[i][0]]) {
        out.dfa.accepting[i] = true;
        changed = true;
      }
    }
  }
  out.dfa = minimize(std::move(out.dfa));
  return out;
}

/// from_equations followed by projection of the existential columns.
inline VectorDfa solutions(const EquationSystem& e) {
  std::set<std::size_t> drop;
  for (std::size_t j = 0; j < e.existential.size(); ++j) {
    if (e.existential[j]) drop.insert(j);
  }
  VectorDfa m = from_equations(e);
  return drop.empty() ? m : project(m, drop);
}

inline VectorDfa from_linear(const LinearSet& L) {
  const std::size_t k = L.dimension();
  const std::size_t r = L.periods.size();
  EquationSystem e;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::int64_t> row(k + r, 0);
    row[i] = 1;
    for (std::size_t j = 0; j < r; ++j) row[k + j] = -L.periods[j][i];
    e.a.push_back(std::move(row));
    e.b.push_back(L.constant[i]);
  }
  e.existential.assign(k + r, false);
  for (std::size_t j = 0; j < r; ++j) e.existential[k + j] = true;
  return solutions(e);
}

inline VectorDfa combine(const VectorDfa& m1, const VectorDfa& m2, BoolOp op) {
  require(m1.tracks == m2.tracks, "track mismatch");
  VectorDfa out;
  out.tracks = m1.tracks;
  out.dfa = product(m1.dfa, m2.dfa, op);
  return out;
}

inline VectorDfa empty_vector_dfa(std::size_t tracks) {
  VectorDfa out;
  out.tracks = tracks;
  out.dfa.letters = track_letters(tracks);
  out.dfa = minimize(std::move(out.dfa));
  return out;
}

inline VectorDfa from_semilinear(const SemilinearSet& Q) {
  VectorDfa acc = from_linear(Q.components.front());
  for (std::size_t i = 1; i < Q.components.size(); ++i) acc = combine(acc, from_linear(Q.components[i]), BoolOp::union_);
  return acc;
}

inline std::vector<int> encode(const Vec& v) {
  std::int64_t mx = 0;
  for (auto x : v) {
    require(x >= 0, "encode: negative coordinate");
    mx = std::max(mx, x);
  }
  std::vector<int> word;
  for (int bit = 0; (mx >> bit) > 0; ++bit) {
    int letter = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] >> bit & 1) letter |= 1 << j;
    }
    word.push_back(letter);
  }
  return word;
}

inline Vec decode(const std::vector<int>& word, std::size_t tracks) {
  Vec v(tracks, 0);
  for (std::size_t i = 0; i < word.size(); ++i) {
    for (std::size_t j = 0; j < tracks; ++j) {
      if (word[i] >> j & 1) v[j] += std::int64_t{1} << i;
    }
  }
  return v;
}

inline bool accepts(const VectorDfa& m, const Vec& v) {
  require(v.size() == m.tracks, "dimension mismatch");
  return m.dfa.accepts(encode(v));
}

inline bool equivalent(const VectorDfa& a, const VectorDfa& b) {
  return a.tracks == b.tracks && equivalent(a.dfa, b.dfa);
}

inline std::optional<Vec> shortest_member(const VectorDfa& m) {
  auto w = shortest_accepted(m.dfa);
  if (!w) return std::nullopt;
  return decode(*w, m.tracks);
}

enum class Relation { equal, subset, disjoint };

inline std::string to_string(Relation r) {
  switch (r) {
    case Relation::equal: return "equal";
    case Relation::subset: return "subset";
    case Relation::disjoint: return "disjoint";
  }
  return "?";
}

struct CompareResult {
  bool holds = false;
  std::optional<Vec> witness;  // a vector in the discrepancy when !holds
};

inline CompareResult compare(const SemilinearSet& q1, const SemilinearSet& q2, Relation rel) {
  require(q1.dimension() == q2.dimension(), "dimension mismatch");
  VectorDfa a = from_semilinear(q1);
  VectorDfa b = from_semilinear(q2);
  BoolOp op = rel == Relation::equal    ? BoolOp::symmetric_difference
              : rel == Relation::subset ? BoolOp::difference
                                        : BoolOp::intersection;
  VectorDfa diff = combine(a, b, op);
  CompareResult res;
  res.witness = shortest_member(diff);
  res.holds = !res.witness.has_value();
  return res;
}

/// Tab-separated transition table: header lines, then "state letter next"
/// rows with the letter written as one digit per track, track 0 first.
inline std::string dump_tsv(const VectorDfa& m) {
  std::ostringstream os;
  os << "tracks\t" << m.tracks << "\n";
  os << "states\t" << m.dfa.size() << "\n";
  os << "initial\t" << m.dfa.initial << "\n";
  os << "accepting";
  for (std::size_t q = 0; q < m.dfa.size(); ++q) {
    if (m.dfa.accepting[q]) os << "\t" << q;
  }
  os << "\n";
  for (std::size_t q = 0; q < m.dfa.size(); ++q) {
    for (std::size_t l = 0; l < m.dfa.letters; ++l) {
      std::string digits;
      for (std::size_t j = 0; j < m.tracks; ++j) digits += (l >> j & 1) ? '1' : '0';
      if (digits.empty()) digits = "-";
      os << q << "\t" << digits << "\t" << m.dfa.delta[q][l] << "\n";
    }
  }
  return os.str();
}

}  // namespace flw
