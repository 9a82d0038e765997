#pragma once

// Interned symbols, words over them, and ordered alphabets.
//
// A symbol is a char32_t. Single-character ASCII names map to their own code
// point, so U"abb" is the word a b b. Longer names (constructed nonterminals
// such as "[AB,1]" or "a'") are interned on first use and receive ids from
// the supplementary planes. Words are std::u32string values.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "flw/error.hpp"

namespace flw {

using Symbol = char32_t;
using Word = std::u32string;

namespace detail {

class SymbolTable {
 public:
  static SymbolTable& instance() {
    static SymbolTable table;
    return table;
  }

  Symbol intern(std::string_view name) {
    if (name.empty()) throw Error(ErrorKind::precondition, "empty symbol name");
    for (char c : name) {
      if (c == ' ' || c == '\t' || c == '\n')
        throw Error(ErrorKind::precondition, "symbol name contains whitespace: '" + std::string(name) + "'");
    }
    if (name.size() == 1 && static_cast<unsigned char>(name[0]) < 0x80) return static_cast<Symbol>(name[0]);
    std::lock_guard lock(mutex_);
    auto it = ids_.find(std::string(name));
    if (it != ids_.end()) return it->second;
    Symbol id = kFirstLongId + static_cast<Symbol>(names_.size());
    names_.emplace_back(name);
    ids_.emplace(std::string(name), id);
    return id;
  }

  std::string name(Symbol s) const {
    if (s < 0x80) return std::string(1, static_cast<char>(s));
    std::lock_guard lock(mutex_);
    std::size_t idx = s - kFirstLongId;
    if (s < kFirstLongId || idx >= names_.size()) return "<?" + std::to_string(static_cast<std::uint32_t>(s)) + ">";
    return names_[idx];
  }

 private:
  static constexpr Symbol kFirstLongId = 0x10000;
  mutable std::mutex mutex_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, Symbol> ids_;
};

}  // namespace detail

inline Symbol sym(std::string_view name) { return detail::SymbolTable::instance().intern(name); }

inline std::string name_of(Symbol s) { return detail::SymbolTable::instance().name(s); }

/// Builds a word from symbol names.
inline Word word_of(std::initializer_list<std::string_view> names) {
  Word w;
  for (auto n : names) w.push_back(sym(n));
  return w;
}

inline Word word_of(const std::vector<std::string>& names) {
  Word w;
  for (const auto& n : names) w.push_back(sym(n));
  return w;
}

inline std::vector<std::string> names_of(const Word& w) {
  std::vector<std::string> out;
  out.reserve(w.size());
  for (Symbol s : w) out.push_back(name_of(s));
  return out;
}

/// Renders a word; multi-character symbol names are separated by spaces so
/// the rendering stays unambiguous. The empty word renders as "λ".
inline std::string to_string(const Word& w) {
  if (w.empty()) return "λ";
  bool all_short = std::all_of(w.begin(), w.end(), [](Symbol s) { return s < 0x80; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!all_short && i > 0) out += ' ';
    out += name_of(w[i]);
  }
  return out;
}

inline Word power(const Word& w, std::size_t n) {
  Word out;
  out.reserve(w.size() * n);
  for (std::size_t i = 0; i < n; ++i) out += w;
  return out;
}

/// Compares symbols by name so orderings do not depend on interning order.
inline bool symbol_less(Symbol a, Symbol b) {
  if (a == b) return false;
  if (a < 0x80 && b < 0x80) return a < b;
  return name_of(a) < name_of(b);
}

/// Length-then-lexicographic order (lexicographic on symbol names).
inline bool shortlex_less(const Word& u, const Word& v) {
  if (u.size() != v.size()) return u.size() < v.size();
  return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end(), symbol_less);
}

struct ShortlexLess {
  bool operator()(const Word& u, const Word& v) const { return shortlex_less(u, v); }
};

inline void sort_shortlex(std::vector<Word>& words) {
  std::sort(words.begin(), words.end(), shortlex_less);
  words.erase(std::unique(words.begin(), words.end()), words.end());
}

/// Ordered list of distinct symbols. The order fixes Parikh coordinates.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw Error(ErrorKind::precondition, "alphabet must be nonempty");
    std::set<Symbol> seen;
    for (Symbol s : symbols_) {
      if (!seen.insert(s).second) throw Error(ErrorKind::precondition, "duplicate symbol in alphabet: " + name_of(s));
    }
  }

  Alphabet(std::initializer_list<std::string_view> names) {
    std::vector<Symbol> v;
    for (auto n : names) v.push_back(sym(n));
    *this = Alphabet(std::move(v));
  }

  /// Distinct symbols of the given words, sorted by name.
  static Alphabet of_words(const std::vector<Word>& words) {
    std::set<Symbol> s;
    for (const auto& w : words) s.insert(w.begin(), w.end());
    std::vector<Symbol> v(s.begin(), s.end());
    std::sort(v.begin(), v.end(), symbol_less);
    return Alphabet(std::move(v));
  }

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  auto begin() const { return symbols_.begin(); }
  auto end() const { return symbols_.end(); }

  bool contains(Symbol s) const { return std::find(symbols_.begin(), symbols_.end(), s) != symbols_.end(); }

  std::size_t index_of(Symbol s) const {
    auto it = std::find(symbols_.begin(), symbols_.end(), s);
    if (it == symbols_.end()) throw Error(ErrorKind::precondition, "symbol not in alphabet: " + name_of(s));
    return static_cast<std::size_t>(it - symbols_.begin());
  }

  bool covers(const Word& w) const {
    return std::all_of(w.begin(), w.end(), [this](Symbol s) { return contains(s); });
  }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<Symbol> symbols_;
};

/// Returns a symbol named `base` (or base', base'', ...) not in `taken`.
inline Symbol fresh_symbol(const std::string& base, const std::set<Symbol>& taken) {
  std::string name = base;
  while (taken.count(sym(name))) name += '\'';
  return sym(name);
}

}  // namespace flw
