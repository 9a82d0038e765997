#pragma once

// JSON description files: one document per object with a top-level "kind".
// Symbols are strings and words are arrays of symbol names. serialize()
// emits the canonical form, so parse followed by serialize reproduces a
// canonical file byte for byte.

#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "flw/commutative.hpp"
#include "flw/counter.hpp"
#include "flw/etol.hpp"
#include "flw/matrix.hpp"
#include "flw/nfa.hpp"
#include "flw/oracle.hpp"
#include "flw/semilinear.hpp"

namespace flw {

using Json = nlohmann::ordered_json;

/// Everything a description file can hold.
using Object = std::variant<SemilinearSet, BoundedSpec, CounterMachine, EtolSystem, MatrixGrammar, FiniteSpec, RegexSpec,
                            Nfa, CodeAssignment, EtolCodes>;

inline std::string kind_of(const Object& o) {
  static const char* names[] = {"semilinear", "bounded", "counter", "etol", "matrix", "finite", "regex", "nfa", "codes", "etol-codes"};
  return names[o.index()];
}

namespace detail {

inline constexpr const char* kEps = "<eps>";
inline constexpr const char* kEnd = "<end>";

template <class T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::precondition, std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::precondition, std::string("bad field \"") + key + "\": " + e.what());
  }
}

inline Json symbols_json(const std::vector<Symbol>& s) {
  Json a = Json::array();
  for (Symbol x : s) a.push_back(name_of(x));
  return a;
}

inline Json word_json(const Word& w) { return symbols_json(std::vector<Symbol>(w.begin(), w.end())); }

inline Json words_json(const std::vector<Word>& ws) {
  Json a = Json::array();
  for (const auto& w : ws) a.push_back(word_json(w));
  return a;
}

inline std::vector<Symbol> symbols_from(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::precondition, "expected an array of symbol names");
  std::vector<Symbol> out;
  for (const auto& s : j) {
    if (!s.is_string()) throw Error(ErrorKind::precondition, "symbol names must be strings");
    out.push_back(sym(s.get<std::string>()));
  }
  return out;
}

inline Word word_from(const Json& j) {
  auto s = symbols_from(j);
  return Word(s.begin(), s.end());
}

inline std::vector<Word> words_from(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::precondition, "expected an array of words");
  std::vector<Word> out;
  for (const auto& w : j) out.push_back(word_from(w));
  return out;
}

inline Json semilinear_body(const SemilinearSet& q) {
  Json comps = Json::array();
  for (const auto& c : q.components) comps.push_back(Json{{"constant", c.constant}, {"periods", c.periods}});
  return comps;
}

inline SemilinearSet semilinear_from(const Json& comps) {
  if (!comps.is_array()) throw Error(ErrorKind::precondition, "components must be an array");
  std::vector<LinearSet> out;
  for (const auto& c : comps) out.emplace_back(field<Vec>(c, "constant"), field<std::vector<Vec>>(c, "periods"));
  return SemilinearSet(std::move(out));
}

inline Json production_json(const Production& p) { return Json{{"lhs", name_of(p.lhs)}, {"rhs", word_json(p.rhs)}}; }

inline Production production_from(const Json& j) {
  return {sym(field<std::string>(j, "lhs")), word_from(j.contains("rhs") ? j.at("rhs") : Json::array())};
}

inline BoundedKind bounded_kind_from(const std::string& s) {
  if (s == "ginsburg") return BoundedKind::ginsburg;
  if (s == "parikh") return BoundedKind::parikh;
  if (s == "ginsburg-parikh") return BoundedKind::ginsburg_parikh;
  throw Error(ErrorKind::precondition, "unknown bounded type " + s);
}

inline std::string state_name(const CounterMachine& m, int q) { return m.states.at(static_cast<std::size_t>(q)); }

inline int state_index(const CounterMachine& m, const std::string& name) {
  for (std::size_t i = 0; i < m.states.size(); ++i) {
    if (m.states[i] == name) return static_cast<int>(i);
  }
  throw Error(ErrorKind::precondition, "unknown state " + name);
}

}  // namespace detail

inline Json to_json(const Object& o) {
  using namespace detail;
  Json j;
  j["kind"] = kind_of(o);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SemilinearSet>) {
          j["components"] = semilinear_body(x);
        } else if constexpr (std::is_same_v<T, BoundedSpec>) {
          j["type"] = to_string(x.kind);
          j["words"] = words_json(x.words);
          j["alphabet"] = symbols_json(x.alphabet.symbols());
          if (x.q1) j["q1"] = semilinear_body(*x.q1);
          if (x.q2) j["q2"] = semilinear_body(*x.q2);
        } else if constexpr (std::is_same_v<T, CounterMachine>) {
          j["counters"] = x.counters;
          j["reversal_bound"] = x.reversal_bound;
          j["alphabet"] = symbols_json(x.alphabet.symbols());
          j["states"] = x.states;
          j["initial"] = state_name(x, x.initial);
          Json acc = Json::array();
          for (int q : x.accepting) acc.push_back(state_name(x, q));
          j["accepting"] = acc;
          Json ts = Json::array();
          for (const auto& t : x.transitions) {
            std::string in = t.input.kind == CounterInput::symbol ? name_of(t.input.letter)
                             : t.input.kind == CounterInput::lambda ? kEps
                                                                    : kEnd;
            ts.push_back(Json::array({state_name(x, t.from), in, t.pattern, state_name(x, t.to), t.moves}));
          }
          j["transitions"] = ts;
        } else if constexpr (std::is_same_v<T, EtolSystem>) {
          j["reduced"] = x.reduced;
          j["nonterminals"] = symbols_json(x.nonterminals);
          j["terminals"] = symbols_json(x.terminals);
          j["axiom"] = name_of(x.axiom);
          Json ts = Json::array();
          for (const auto& t : x.tables) {
            Json ps = Json::array();
            for (const auto& p : t.productions) ps.push_back(production_json(p));
            ts.push_back(Json{{"name", t.name}, {"productions", ps}});
          }
          j["tables"] = ts;
        } else if constexpr (std::is_same_v<T, MatrixGrammar>) {
          j["nonterminals"] = symbols_json(x.nonterminals);
          j["terminals"] = symbols_json(x.terminals);
          j["start"] = name_of(x.start);
          Json ms = Json::array();
          for (const auto& m : x.matrices) {
            Json rs = Json::array();
            for (const auto& p : m.rules) rs.push_back(production_json(p));
            ms.push_back(Json{{"name", m.name}, {"rules", rs}});
          }
          j["matrices"] = ms;
        } else if constexpr (std::is_same_v<T, FiniteSpec>) {
          j["words"] = words_json(x.words);
        } else if constexpr (std::is_same_v<T, RegexSpec>) {
          j["source"] = x.source;
        } else if constexpr (std::is_same_v<T, Nfa>) {
          j["states"] = x.states;
          j["initial"] = x.initial;
          j["accepting"] = x.accepting;
          Json es = Json::array();
          for (const auto& e : x.edges) es.push_back(Json::array({e.from, word_json(e.label), e.to}));
          j["edges"] = es;
          if (!x.provenance.empty()) j["provenance"] = x.provenance;
        } else if constexpr (std::is_same_v<T, CodeAssignment>) {
          j["words"] = words_json(x.words);
        } else {
          Json cs = Json::array();
          for (const auto& [lhs, m] : x) {
            for (const auto& [rhs, code] : m)
              cs.push_back(Json{{"lhs", name_of(lhs)}, {"rhs", word_json(rhs)}, {"code", word_json(code)}});
          }
          j["codes"] = cs;
        }
      },
      o);
  return j;
}

inline Object from_json(const Json& j) {
  using namespace detail;
  std::string kind = field<std::string>(j, "kind");
  if (kind == "semilinear") return semilinear_from(j.at("components"));
  if (kind == "bounded") {
    std::optional<SemilinearSet> q1, q2;
    if (j.contains("q1")) q1 = semilinear_from(j.at("q1"));
    if (j.contains("q2")) q2 = semilinear_from(j.at("q2"));
    std::optional<Alphabet> alpha;
    if (j.contains("alphabet")) alpha = Alphabet(symbols_from(j.at("alphabet")));
    return BoundedSpec(words_from(j.at("words")), bounded_kind_from(field<std::string>(j, "type")), q1, q2, alpha);
  }
  if (kind == "counter") {
    CounterMachine m;
    m.counters = field<std::size_t>(j, "counters");
    m.reversal_bound = field<std::size_t>(j, "reversal_bound");
    m.alphabet = Alphabet(symbols_from(j.at("alphabet")));
    m.states = field<std::vector<std::string>>(j, "states");
    m.initial = state_index(m, field<std::string>(j, "initial"));
    for (const auto& q : field<std::vector<std::string>>(j, "accepting")) m.accepting.insert(state_index(m, q));
    for (const auto& t : j.at("transitions")) {
      if (!t.is_array() || t.size() != 5) throw Error(ErrorKind::precondition, "transitions are 5-field records");
      auto in = t[1].get<std::string>();
      CounterInput input = in == kEps ? CounterInput::eps() : in == kEnd ? CounterInput::end_marker() : CounterInput::of(sym(in));
      m.add(state_index(m, t[0].get<std::string>()), input, t[2].get<std::string>(), state_index(m, t[3].get<std::string>()),
            t[4].get<std::vector<int>>());
    }
    m.validate();
    return m;
  }
  if (kind == "etol") {
    EtolSystem g;
    g.reduced = j.value("reduced", false);
    g.nonterminals = symbols_from(j.at("nonterminals"));
    g.terminals = symbols_from(j.at("terminals"));
    g.axiom = sym(field<std::string>(j, "axiom"));
    for (const auto& t : j.at("tables")) {
      Table tab{field<std::string>(t, "name"), {}};
      for (const auto& p : t.at("productions")) tab.productions.push_back(production_from(p));
      g.tables.push_back(std::move(tab));
    }
    g.validate();
    return g;
  }
  if (kind == "matrix") {
    MatrixGrammar g;
    g.nonterminals = symbols_from(j.at("nonterminals"));
    g.terminals = symbols_from(j.at("terminals"));
    g.start = sym(field<std::string>(j, "start"));
    std::size_t i = 0;
    for (const auto& m : j.at("matrices")) {
      ++i;
      // a bare array of rules is accepted and named by position
      Matrix mat{m.is_array() ? "m" + std::to_string(i) : field<std::string>(m, "name"), {}};
      for (const auto& p : m.is_array() ? m : m.at("rules")) mat.rules.push_back(production_from(p));
      g.matrices.push_back(std::move(mat));
    }
    g.validate();
    return g;
  }
  if (kind == "finite") return FiniteSpec{words_from(j.at("words"))};
  if (kind == "regex") return RegexSpec::parse(field<std::string>(j, "source"));
  if (kind == "nfa") {
    Nfa a;
    a.states = field<int>(j, "states");
    a.initial = field<int>(j, "initial");
    a.accepting = field<std::set<int>>(j, "accepting");
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw Error(ErrorKind::precondition, "edges are [from, word, to]");
      int from = e[0].get<int>(), to = e[2].get<int>();
      require(from >= 0 && from < a.states && to >= 0 && to < a.states, "edge state out of range");
      a.add_edge(from, word_from(e[1]), to);
    }
    require(a.initial >= 0 && a.initial < a.states, "initial state out of range");
    a.provenance = j.value("provenance", "");
    return a;
  }
  if (kind == "codes") return make_code_assignment(words_from(j.at("words")));
  if (kind == "etol-codes") {
    EtolCodes c;
    for (const auto& e : j.at("codes")) c[sym(field<std::string>(e, "lhs"))][word_from(e.at("rhs"))] = word_from(e.at("code"));
    return c;
  }
  throw Error(ErrorKind::precondition, "unknown kind \"" + kind + "\"");
}

namespace detail {

inline std::string one_line(const Json& j) {
  if (j.is_object()) {
    std::string out = "{";
    std::size_t i = 0;
    for (const auto& [k, v] : j.items()) out += (i++ ? ", " : "") + Json(k).dump() + ": " + one_line(v);
    return out + "}";
  }
  if (j.is_array()) {
    std::string out = "[";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + one_line(j[i]);
    return out + "]";
  }
  return j.dump();
}

inline std::size_t depth(const Json& j) {
  std::size_t d = 0;
  if (j.is_structured()) {
    for (const auto& x : j) d = std::max(d, depth(x));
    ++d;
  }
  return d;
}

/// Two-space indentation; shallow values that fit in 80 columns stay on
/// one line.
inline void pretty(const Json& j, std::string& out, std::size_t indent) {
  std::string flat = one_line(j);
  if (!j.is_structured() || j.empty() || (depth(j) <= 3 && indent + flat.size() <= 80)) {
    out += flat;
    return;
  }
  std::string pad(indent + 2, ' ');
  if (j.is_object()) {
    out += "{\n";
    std::size_t i = 0;
    for (const auto& [k, v] : j.items()) {
      out += pad + Json(k).dump() + ": ";
      pretty(v, out, indent + 2);
      out += ++i < j.size() ? ",\n" : "\n";
    }
    out += std::string(indent, ' ') + "}";
  } else {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      pretty(j[i], out, indent + 2);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(indent, ' ') + "]";
  }
}

}  // namespace detail

inline std::string serialize(const Object& o) {
  std::string out;
  detail::pretty(to_json(o), out, 0);
  return out + "\n";
}

inline Object parse(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::precondition, std::string("invalid JSON: ") + e.what());
  }
  return from_json(j);
}

inline Object load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::precondition, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

/// The language-defining view of an object, when it has one.
inline std::optional<LanguageSpec> as_language(const Object& o) {
  return std::visit(
      [](const auto& x) -> std::optional<LanguageSpec> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_constructible_v<LanguageSpec, T> && !std::is_same_v<T, SemilinearSet>) {
          return LanguageSpec(x);
        } else {
          return std::nullopt;
        }
      },
      o);
}

}  // namespace flw
