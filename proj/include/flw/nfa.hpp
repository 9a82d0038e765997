#pragma once

// Nondeterministic automata with word-labelled edges (an empty label is a
// lambda move), a small regular-expression front end, and bounded
// enumeration of the accepted language.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "flw/error.hpp"
#include "flw/symbol.hpp"

namespace flw {

struct Nfa {
  struct Edge {
    int from;
    Word label;
    int to;
  };
  int states = 0;
  int initial = 0;
  std::set<int> accepting;
  std::vector<Edge> edges;
  std::string provenance;

  int add_state() { return states++; }
  void add_edge(int from, Word label, int to) { edges.push_back({from, std::move(label), to}); }

  std::set<Symbol> symbols() const {
    std::set<Symbol> out;
    for (const auto& e : edges) out.insert(e.label.begin(), e.label.end());
    return out;
  }
};

namespace detail {

/// Letter-level view of an Nfa: every edge split into single-letter steps.
struct LetterNfa {
  int states = 0;
  std::vector<std::vector<int>> eps;
  std::vector<std::map<Symbol, std::vector<int>>> step;
  std::vector<bool> accepting;
  int initial = 0;

  explicit LetterNfa(const Nfa& a) {
    states = a.states;
    auto grow = [&](int n) {
      eps.resize(n);
      step.resize(n);
      accepting.resize(n, false);
    };
    grow(states);
    initial = a.initial;
    for (int q : a.accepting) accepting[q] = true;
    for (const auto& e : a.edges) {
      if (e.label.empty()) {
        eps[e.from].push_back(e.to);
        continue;
      }
      int cur = e.from;
      for (std::size_t i = 0; i < e.label.size(); ++i) {
        int nxt = e.to;
        if (i + 1 < e.label.size()) {
          nxt = states++;
          grow(states);
        }
        step[cur][e.label[i]].push_back(nxt);
        cur = nxt;
      }
    }
  }

  std::set<int> closure(std::set<int> s) const {
    std::vector<int> stack(s.begin(), s.end());
    while (!stack.empty()) {
      int q = stack.back();
      stack.pop_back();
      for (int t : eps[q]) {
        if (s.insert(t).second) stack.push_back(t);
      }
    }
    return s;
  }

  std::set<int> move(const std::set<int>& s, Symbol a) const {
    std::set<int> out;
    for (int q : s) {
      auto it = step[q].find(a);
      if (it != step[q].end()) out.insert(it->second.begin(), it->second.end());
    }
    return closure(out);
  }

  bool any_accepting(const std::set<int>& s) const {
    return std::any_of(s.begin(), s.end(), [&](int q) { return accepting[q]; });
  }

  /// Letters needed from each state to reach acceptance (-1 if impossible).
  std::vector<int> distance_to_accept() const {
    std::vector<int> dist(states, -1);
    for (int q = 0; q < states; ++q) {
      if (accepting[q]) dist[q] = 0;
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (int q = 0; q < states; ++q) {
        auto relax = [&](int t, int w) {
          if (dist[t] >= 0 && (dist[q] < 0 || dist[t] + w < dist[q])) {
            dist[q] = dist[t] + w;
            changed = true;
          }
        };
        for (int t : eps[q]) relax(t, 0);
        for (const auto& [a, ts] : step[q]) {
          for (int t : ts) relax(t, 1);
        }
      }
    }
    return dist;
  }
};

}  // namespace detail

inline bool accepts(const Nfa& a, const Word& w) {
  detail::LetterNfa n(a);
  auto s = n.closure({n.initial});
  for (Symbol c : w) {
    s = n.move(s, c);
    if (s.empty()) return false;
  }
  return n.any_accepting(s);
}

/// Accepted words of length <= max_len in shortlex order.
inline std::vector<Word> enumerate_nfa(const Nfa& a, std::size_t max_len) {
  detail::LetterNfa n(a);
  auto dist = n.distance_to_accept();
  auto letter_set = a.symbols();
  std::vector<Symbol> letters(letter_set.begin(), letter_set.end());
  std::sort(letters.begin(), letters.end(), symbol_less);
  std::vector<Word> out;
  auto min_dist = [&](const std::set<int>& s) {
    int best = -1;
    for (int q : s) {
      if (dist[q] >= 0 && (best < 0 || dist[q] < best)) best = dist[q];
    }
    return best;
  };
  Word cur;
  auto rec = [&](auto&& self, const std::set<int>& s) -> void {
    if (n.any_accepting(s)) out.push_back(cur);
    if (cur.size() == max_len) return;
    for (Symbol c : letters) {
      auto t = n.move(s, c);
      int d = min_dist(t);
      if (d < 0 || cur.size() + 1 + static_cast<std::size_t>(d) > max_len) continue;
      cur.push_back(c);
      self(self, t);
      cur.pop_back();
    }
  };
  auto s0 = n.closure({n.initial});
  int d0 = min_dist(s0);
  if (d0 >= 0 && static_cast<std::size_t>(d0) <= max_len) rec(rec, s0);
  sort_shortlex(out);
  return out;
}

inline Nfa single_word_nfa(const Word& w) {
  Nfa a;
  a.states = 2;
  a.initial = 0;
  a.accepting = {1};
  a.add_edge(0, w, 1);
  return a;
}

inline Nfa finite_nfa(const std::vector<Word>& words) {
  Nfa a;
  a.states = 2;
  a.accepting = {1};
  for (const auto& w : words) a.add_edge(0, w, 1);
  return a;
}

/// Regular expressions: single characters are symbols, <name> is a
/// multi-character symbol, () is the empty word, with | * + ? and grouping.
/// Whitespace is ignored.
inline Nfa parse_regex(const std::string& text) {
  Nfa a;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  auto peek = [&]() -> char {
    skip();
    return pos < text.size() ? text[pos] : '\0';
  };
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::precondition, "regex: " + why + " at offset " + std::to_string(pos) + " in '" + text + "'");
  };
  struct Frag {
    int in, out;
  };
  std::function<Frag()> alt;
  auto atom = [&]() -> Frag {
    char c = peek();
    if (c == '(') {
      ++pos;
      if (peek() == ')') {
        ++pos;
        int s = a.add_state(), t = a.add_state();
        a.add_edge(s, {}, t);
        return {s, t};
      }
      Frag f = alt();
      if (peek() != ')') fail("expected ')'");
      ++pos;
      return f;
    }
    std::string name;
    if (c == '<') {
      auto close = text.find('>', pos);
      if (close == std::string::npos) fail("unterminated <name>");
      name = text.substr(pos + 1, close - pos - 1);
      pos = close + 1;
    } else if (c == '\0' || c == '|' || c == ')' || c == '*' || c == '+' || c == '?') {
      fail("unexpected token");
    } else {
      name = std::string(1, c);
      ++pos;
    }
    int s = a.add_state(), t = a.add_state();
    a.add_edge(s, Word(1, sym(name)), t);
    return {s, t};
  };
  auto postfix = [&]() -> Frag {
    Frag f = atom();
    while (true) {
      char c = peek();
      if (c != '*' && c != '+' && c != '?') break;
      ++pos;
      int s = a.add_state(), t = a.add_state();
      a.add_edge(s, {}, f.in);
      a.add_edge(f.out, {}, t);
      if (c != '+') a.add_edge(s, {}, t);
      if (c != '?') a.add_edge(f.out, {}, f.in);
      f = {s, t};
    }
    return f;
  };
  auto concat = [&]() -> Frag {
    char c = peek();
    if (c == '\0' || c == '|' || c == ')') {
      int s = a.add_state(), t = a.add_state();
      a.add_edge(s, {}, t);
      return {s, t};
    }
    Frag f = postfix();
    while (true) {
      c = peek();
      if (c == '\0' || c == '|' || c == ')') break;
      Frag g = postfix();
      a.add_edge(f.out, {}, g.in);
      f.out = g.out;
    }
    return f;
  };
  alt = [&]() -> Frag {
    Frag f = concat();
    while (peek() == '|') {
      ++pos;
      Frag g = concat();
      int s = a.add_state(), t = a.add_state();
      a.add_edge(s, {}, f.in);
      a.add_edge(s, {}, g.in);
      a.add_edge(f.out, {}, t);
      a.add_edge(g.out, {}, t);
      f = {s, t};
    }
    return f;
  };
  Frag f = alt();
  if (peek() != '\0') fail("trailing input");
  a.initial = f.in;
  a.accepting = {f.out};
  a.provenance = "regex " + text;
  return a;
}

/// Tab-separated transition table in the same layout as vector automaton
/// dumps: header lines, then "from label to" rows.
inline std::string dump_tsv(const Nfa& a) {
  std::ostringstream os;
  os << "states\t" << a.states << "\n";
  os << "initial\t" << a.initial << "\n";
  os << "accepting";
  for (int q : a.accepting) os << "\t" << q;
  os << "\n";
  for (const auto& e : a.edges) os << e.from << "\t" << (e.label.empty() ? std::string("-") : to_string(e.label)) << "\t" << e.to << "\n";
  return os.str();
}

}  // namespace flw
