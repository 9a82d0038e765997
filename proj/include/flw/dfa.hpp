#pragma once

// Complete deterministic automata over the letter set {0, ..., letters-1}.
// Shared by the vector automata (letters are digit tuples) and by Szilard
// automata (letters are matrix indices).

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "flw/error.hpp"

namespace flw {

struct Dfa {
  std::size_t letters = 0;
  std::vector<std::vector<int>> delta;  // delta[state][letter]; total
  std::vector<bool> accepting;
  int initial = 0;

  std::size_t size() const { return delta.size(); }

  int add_state(bool acc = false) {
    delta.emplace_back(letters, -1);
    accepting.push_back(acc);
    return static_cast<int>(delta.size()) - 1;
  }

  /// Redirects undefined transitions to a fresh rejecting sink.
  void complete() {
    int sink = -1;
    for (std::size_t q = 0; q < delta.size(); ++q) {
      for (auto& t : delta[q]) {
        if (t < 0) {
          if (sink < 0) {
            sink = static_cast<int>(delta.size());
            delta.emplace_back(letters, sink);
            accepting.push_back(false);
          }
          t = sink;
        }
      }
    }
    if (delta.empty()) {
      add_state(false);
      for (auto& t : delta[0]) t = 0;
    }
  }

  bool accepts(const std::vector<int>& word) const {
    int q = initial;
    for (int a : word) {
      q = delta[q][a];
      if (q < 0) return false;
    }
    return accepting[q];
  }
};

enum class BoolOp { union_, intersection, difference, symmetric_difference };

namespace detail {

inline bool apply_op(BoolOp op, bool a, bool b) {
  switch (op) {
    case BoolOp::union_: return a || b;
    case BoolOp::intersection: return a && b;
    case BoolOp::difference: return a && !b;
    case BoolOp::symmetric_difference: return a != b;
  }
  return false;
}

}  // namespace detail

/// Minimal complete DFA with states numbered in BFS order from the initial
/// state (letters in increasing order). Equal languages give identical output.
inline Dfa minimize(Dfa d) {
  d.complete();
  // reachable part
  std::vector<int> order;
  std::vector<int> seen(d.size(), 0);
  std::queue<int> bfs;
  bfs.push(d.initial);
  seen[d.initial] = 1;
  while (!bfs.empty()) {
    int q = bfs.front();
    bfs.pop();
    order.push_back(q);
    for (int t : d.delta[q]) {
      if (!seen[t]) {
        seen[t] = 1;
        bfs.push(t);
      }
    }
  }
  // Moore refinement
  std::vector<int> cls(d.size(), 0);
  for (int q : order) cls[q] = d.accepting[q] ? 1 : 0;
  std::size_t count = 0;
  while (true) {
    std::map<std::vector<int>, int> sig_ids;
    std::vector<int> next(d.size(), 0);
    for (int q : order) {
      std::vector<int> sig;
      sig.reserve(d.letters + 1);
      sig.push_back(cls[q]);
      for (int t : d.delta[q]) sig.push_back(cls[t]);
      auto [it, _] = sig_ids.emplace(std::move(sig), static_cast<int>(sig_ids.size()));
      next[q] = it->second;
    }
    cls.swap(next);
    if (sig_ids.size() == count) break;
    count = sig_ids.size();
  }
  // canonical renumbering
  Dfa out;
  out.letters = d.letters;
  std::map<int, int> canon;
  std::vector<int> rep;
  std::queue<int> q2;
  canon[cls[d.initial]] = 0;
  rep.push_back(d.initial);
  q2.push(d.initial);
  while (!q2.empty()) {
    int q = q2.front();
    q2.pop();
    for (int t : d.delta[q]) {
      if (!canon.count(cls[t])) {
        canon[cls[t]] = static_cast<int>(rep.size());
        rep.push_back(t);
        q2.push(t);
      }
    }
  }
  for (int r : rep) {
    std::vector<int> row;
    for (int t : d.delta[r]) row.push_back(canon[cls[t]]);
    out.delta.push_back(std::move(row));
    out.accepting.push_back(d.accepting[r]);
  }
  out.initial = 0;
  return out;
}

inline Dfa product(Dfa a, Dfa b, BoolOp op) {
  require(a.letters == b.letters, "track mismatch: automata over different letter sets");
  a.complete();
  b.complete();
  Dfa out;
  out.letters = a.letters;
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> pending;
  auto get = [&](int p, int q) {
    auto it = ids.find({p, q});
    if (it != ids.end()) return it->second;
    int id = out.add_state(detail::apply_op(op, a.accepting[p], b.accepting[q]));
    ids[{p, q}] = id;
    pending.push_back({p, q});
    return id;
  };
  out.initial = get(a.initial, b.initial);
  for (std::size_t i = 0; i < pending.size(); ++i) {
    auto [p, q] = pending[i];
    for (std::size_t l = 0; l < out.letters; ++l) {
      int t = get(a.delta[p][l], b.delta[q][l]);
      out.delta[i][l] = t;
    }
  }
  return minimize(std::move(out));
}

/// Shortest accepted word (BFS, smallest letters first), if any.
inline std::optional<std::vector<int>> shortest_accepted(const Dfa& d) {
  if (d.size() == 0) return std::nullopt;
  std::vector<int> parent(d.size(), -2), via(d.size(), -1);
  std::queue<int> q;
  q.push(d.initial);
  parent[d.initial] = -1;
  while (!q.empty()) {
    int s = q.front();
    q.pop();
    if (d.accepting[s]) {
      std::vector<int> w;
      for (int c = s; parent[c] != -1; c = parent[c]) w.push_back(via[c]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (std::size_t l = 0; l < d.letters; ++l) {
      int t = d.delta[s][l];
      if (t >= 0 && parent[t] == -2) {
        parent[t] = s;
        via[t] = static_cast<int>(l);
        q.push(t);
      }
    }
  }
  return std::nullopt;
}

inline bool is_empty(const Dfa& d) { return !shortest_accepted(d).has_value(); }

inline bool equivalent(const Dfa& a, const Dfa& b) { return is_empty(product(a, b, BoolOp::symmetric_difference)); }

inline bool identical(const Dfa& a, const Dfa& b) {
  return a.letters == b.letters && a.initial == b.initial && a.delta == b.delta && a.accepting == b.accepting;
}

}  // namespace flw
