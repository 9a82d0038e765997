// workbench: command-line front end over the flw library.
//
// Exit codes: 0 success or verdict true, 1 verdict false or failed check,
// 2 precondition error, 3 budget exhausted.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "flw/commutative.hpp"
#include "flw/series.hpp"
#include "flw/serialize.hpp"

using namespace flw;

namespace {

struct Config {
  std::size_t max_len = 10;
  std::size_t steps = 100000;
  std::size_t audit_len = 10;
  std::size_t k = 2;
  std::string out;

  OracleBudget oracle() const {
    OracleBudget b;
    b.derivation.max_forms = steps;
    b.run.max_configs = steps;
    return b;
  }

  std::string header(const std::string& cmd) const {
    std::ostringstream os;
    os << "# workbench " << cmd << " max_len=" << max_len << " steps=" << steps << " audit_len=" << audit_len << " k=" << k;
    return os.str();
  }
};

void add_config(CLI::App* sub, Config& c) {
  sub->add_option("--max-len", c.max_len, "length bound for oracle checks and enumeration")->capture_default_str();
  sub->add_option("--steps", c.steps, "search budget: sentential forms or machine configurations")->capture_default_str();
  sub->add_option("--audit-len", c.audit_len, "length bound for unambiguity audits")->capture_default_str();
  sub->add_option("-k,--index", c.k, "index bound k")->capture_default_str();
  sub->add_option("--out", c.out, "write the produced object to this path");
}

const char* pass(bool ok) { return ok ? "PASS" : "FAIL"; }

void emit(const Config& c, const Object& o) {
  if (c.out.empty()) {
    std::cout << serialize(o);
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw Error(ErrorKind::precondition, "cannot write " + c.out);
  f << serialize(o);
  std::cout << "wrote " << kind_of(o) << " to " << c.out << "\n";
}

template <class T>
const T& expect(const Object& o, const std::string& what) {
  if (!std::holds_alternative<T>(o)) throw Error(ErrorKind::precondition, what + " expected, got " + kind_of(o));
  return std::get<T>(o);
}

LanguageSpec language(const Object& o) {
  auto s = as_language(o);
  if (!s) throw Error(ErrorKind::precondition, kind_of(o) + " does not describe a language");
  return *s;
}

std::vector<Symbol> letters_for(const std::vector<std::string>& names, std::size_t n) {
  std::vector<Symbol> out;
  if (names.empty()) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(static_cast<Symbol>(U'a' + i));
  } else {
    for (const auto& s : names) out.push_back(sym(s));
  }
  require(out.size() == n, "need " + std::to_string(n) + " letters, got " + std::to_string(out.size()));
  return out;
}

/// Oracle comparison line; returns whether the slices agree.
bool report_oracle(const Config& c, const LanguageSpec& produced, const LanguageSpec& reference) {
  auto a = enumerate_exact(produced, c.max_len, c.oracle());
  auto b = enumerate_exact(reference, c.max_len, c.oracle());
  bool ok = a == b;
  std::cout << "oracle-equal <= " << c.max_len << ": " << pass(ok) << " (" << a.size() << " vs " << b.size() << " words)\n";
  return ok;
}

/// Per-word derivation counts of two specs agree on every word of the slice.
bool report_counts(const Config& c, const LanguageSpec& produced, const LanguageSpec& reference) {
  auto count = [&](const LanguageSpec& s, const Word& w) -> BigInt {
    if (auto* g = std::get_if<MatrixGrammar>(&s)) return count_derivations(*g, w, c.oracle().derivation).count;
    return count_trees(std::get<EtolSystem>(s), w, c.oracle().derivation).count;
  };
  bool ok = true;
  std::size_t n = 0;
  for (const auto& w : enumerate_exact(reference, c.max_len, c.oracle())) {
    ++n;
    BigInt x = count(produced, w), y = count(reference, w);
    if (x != y) {
      std::cout << "count mismatch at " << to_string(w) << ": " << x << " vs " << y << "\n";
      ok = false;
    }
  }
  std::cout << "derivation counts preserved on " << n << " words: " << pass(ok) << "\n";
  return ok;
}

int cmd_convert(const Config& c, const std::string& input, const std::string& target, const std::vector<std::string>& letters) {
  Object in = load(input);
  std::cout << c.header("convert") << " to=" << target << "\n";
  const std::string from = kind_of(in);
  bool ok = true;
  if (from == "semilinear") {
    const auto& q = std::get<SemilinearSet>(in);
    auto ls = letters_for(letters, q.dimension());
    if (target == "ncm") {
      auto m = from_semilinear(q, Alphabet(ls));
      // words whose Parikh vector lies in Q
      std::vector<Word> ref;
      for (const auto& w : words_upto(ls, c.max_len)) {
        if (member(q, parikh(w, Alphabet(ls)))) ref.push_back(w);
      }
      ok = report_oracle(c, m, FiniteSpec{ref});
      emit(c, m);
    } else if (target == "etol") {
      auto g = semilinear_to_etol(q, ls);
      std::vector<Word> words;
      for (Symbol s : ls) words.emplace_back(1, s);
      ok = report_oracle(c, g, FiniteSpec{phi_image(words, q, c.max_len)});
      auto audit = index_audit(g, c.max_len, c.oracle().derivation);
      std::cout << "index " << audit.max_index << " <= " << q.dimension() << " over explored region: "
                << pass(audit.max_index <= q.dimension()) << "\n";
      ok = ok && audit.max_index <= q.dimension();
      emit(c, g);
    } else {
      throw Error(ErrorKind::precondition, "unsupported conversion semilinear -> " + target);
    }
  } else if (from == "bounded") {
    const auto& s = std::get<BoundedSpec>(in);
    require(s.kind == BoundedKind::ginsburg, "conversion needs a Ginsburg spec");
    if (target == "dcm") {
      auto cert = find_echelon_certificate(*s.q1);
      if (!cert) throw Error(ErrorKind::precondition, "no echelon certificate for Q");
      auto m = dcm_for_bounded(s, *cert);
      ok = report_oracle(c, m, s);
      emit(c, m);
    } else if (target == "etol") {
      auto g = unambiguous_bounded_etol(s.words, *s.q1);
      ok = report_oracle(c, g, s);
      BigInt worst = 0;
      for (const auto& w : enumerate_exact(g, c.max_len, c.oracle())) worst = std::max(worst, count_trees(g, w).count);
      std::cout << "max tree count " << worst << ": " << pass(worst <= 1) << "\n";
      ok = ok && worst <= 1;
      emit(c, g);
    } else {
      throw Error(ErrorKind::precondition, "unsupported conversion bounded -> " + target);
    }
  } else if (from == "matrix") {
    const auto& g = std::get<MatrixGrammar>(in);
    if (target == "reduced-etol") {
      auto e = matrix_to_reduced_etol(g, c.k);
      ok = report_oracle(c, e, g);
      ok = report_counts(c, e, g) && ok;
      emit(c, e);
    } else if (target == "normal-form") {
      auto nf = normal_form(g, c.k);
      std::cout << "normal form: " << (nf.cert.already_normal ? "already normal" : "constructed") << ", "
                << nf.cert.profiles.size() << " profiles\n";
      ok = report_oracle(c, nf.grammar, g);
      ok = report_counts(c, nf.grammar, g) && ok;
      emit(c, nf.grammar);
    } else {
      throw Error(ErrorKind::precondition, "unsupported conversion matrix -> " + target);
    }
  } else if (from == "etol") {
    const auto& g = std::get<EtolSystem>(in);
    if (g.reduced && target == "matrix") {
      auto m = reduced_etol_to_matrix(g, c.k);
      ok = report_oracle(c, m, g);
      ok = report_counts(c, m, g) && ok;
      emit(c, m);
    } else if (g.reduced && target == "edtol") {
      auto d = reduced_etol_to_edtol(g, c.k);
      ok = report_oracle(c, d, g);
      ok = report_counts(c, d, g) && ok;
      emit(c, d);
    } else if (g.reduced && target == "etol") {
      auto p = from_reduced(g);
      ok = report_oracle(c, p, g);
      emit(c, p);
    } else if (!g.reduced && target == "reduced-etol") {
      auto r = to_reduced(g);
      ok = report_oracle(c, r, g);
      emit(c, r);
    } else if (!g.reduced && target == "active-normal-form") {
      auto a = active_normal_form(g);
      ok = report_oracle(c, a, g);
      emit(c, a);
    } else {
      throw Error(ErrorKind::precondition, std::string("unsupported conversion ") + (g.reduced ? "reduced " : "") + "etol -> " + target);
    }
  } else {
    throw Error(ErrorKind::precondition, "unsupported conversion " + from + " -> " + target);
  }
  return ok ? 0 : 1;
}

int cmd_decide(const Config& c, const std::string& a, const std::string& b, const std::string& rel, bool injective) {
  const auto s1 = expect<BoundedSpec>(load(a), "bounded spec");
  const auto s2 = expect<BoundedSpec>(load(b), "bounded spec");
  Relation r = rel == "equal" ? Relation::equal : rel == "subset" ? Relation::subset : Relation::disjoint;
  if (rel != "equal" && rel != "subset" && rel != "disjoint") throw Error(ErrorKind::precondition, "unknown relation " + rel);
  DecideOptions opt;
  opt.assert_injective = injective;
  std::cout << c.header("decide") << " relation=" << rel << "\n";
  auto res = decide_bounded(s1, s2, r, opt);
  std::cout << (res.holds ? "true" : "false") << "\n";
  if (res.witness) std::cout << "witness " << to_string(*res.witness) << " tuple " << to_string(*res.witness_tuple) << "\n";
  return res.holds ? 0 : 1;
}

int cmd_enumerate(const Config& c, const std::string& input) {
  auto spec = language(load(input));
  auto slice = enumerate(spec, c.max_len, c.oracle());
  std::cout << c.header("enumerate") << "\n";
  for (const auto& w : slice.words) std::cout << to_string(w) << "\n";
  std::cout << "# " << slice.words.size() << " words" << (slice.complete ? "" : ", incomplete") << "\n";
  return slice.complete ? 0 : 3;
}

int cmd_series(const Config& c, const std::string& input, std::size_t n, const std::string& mode, std::size_t max_order) {
  Object in = load(input);
  std::cout << c.header("series") << " n=" << n << " mode=" << mode << " max_order=" << max_order << "\n";
  if (mode != "length" && mode != "parikh") throw Error(ErrorKind::precondition, "mode must be length or parikh");
  CoefficientTable table;
  if (auto* g0 = std::get_if<MatrixGrammar>(&in)) {
    MatrixGrammar g = *g0;
    if (auto v = normal_form_violation(g, c.k)) {
      std::cout << "normal form missing (" << *v << "); applying normal_form\n";
      g = normal_form(g, c.k).grammar;
    }
    if (mode == "parikh") {
      auto p = parikh_multiplicities(g, n, c.k);
      std::cout << "letters";
      for (Symbol s : p.letters) std::cout << " " << name_of(s);
      std::cout << "\n";
      for (const auto& [v, x] : p.terms) std::cout << to_string(v) << " " << to_string(x) << "\n";
      return 0;
    }
    table = counting_coefficients(g, n, c.k);
    std::cout << "source: derivation counts over the Szilard automaton\n";
  } else {
    require(mode == "length", "parikh mode needs a matrix grammar");
    auto* m = std::get_if<CounterMachine>(&in);
    if (m && is_deterministic(*m)) {
      table.terms.resize(n + 1);
      auto counts = count_accepted_words(*m, n);
      for (std::size_t i = 0; i <= n; ++i) table.terms[i].value = counts[i];
      std::cout << "source: deterministic machine word counts\n";
    } else {
      table = brute_counting(language(in), n, c.oracle());
      std::cout << "source: oracle enumeration\n";
    }
  }
  std::cout << table.rows();
  bool finite = std::none_of(table.terms.begin(), table.terms.end(), [](const Coefficient& x) { return x.infinite; });
  if (!finite) {
    std::cout << "fit: skipped, infinite coefficient\n";
    return 0;
  }
  auto seq = table.values();
  // the fit runs on the support subsequence, so count its terms before picking the order
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] != 0) support.push_back(i);
  }
  std::size_t stride = 0;
  for (std::size_t i = 1; i < support.size(); ++i) stride = std::gcd(stride, support[i] - support[i - 1]);
  std::size_t usable = support.empty() ? seq.size() : (seq.size() - support.front() + std::max<std::size_t>(stride, 1) - 1) / std::max<std::size_t>(stride, 1);
  std::size_t order = std::min(max_order, usable >= 4 ? (usable - 2) / 2 : std::size_t{0});
  if (order == 0) {
    std::cout << "fit: insufficient terms\n";
    return 0;
  }
  auto s = fit_support(seq, order);
  if (!s.fit) {
    std::cout << "fit: no recurrence <= " << order << " (offset " << s.offset << ", stride " << s.stride << ")\n";
    return 0;
  }
  std::cout << "fit: order " << s.fit->order << ", c =";
  for (const auto& x : s.fit->coefficients) std::cout << " " << x;
  std::cout << " (offset " << s.offset << ", stride " << s.stride << ", " << s.fit->validated_terms << " held-out terms)\n";
  return 0;
}

int cmd_audit(const Config& c, const std::string& input, const std::string& kind, std::int64_t box) {
  Object in = load(input);
  std::cout << c.header("audit") << " kind=" << kind << "\n";
  if (kind == "index") {
    if (auto* g = std::get_if<EtolSystem>(&in)) {
      auto a = index_audit(*g, c.max_len, c.oracle().derivation);
      std::cout << "max index " << a.max_index << " over " << a.per_word.size() << " words of length <= " << c.max_len
                << (a.complete ? "" : " (incomplete)") << "\n";
      bool ok = a.max_index <= c.k;
      std::cout << "index <= " << c.k << " over explored region: " << pass(ok) << "\n";
      return a.complete ? (ok ? 0 : 1) : 3;
    }
    const auto& g = expect<MatrixGrammar>(in, "etol or matrix");
    auto pg = detail::matrix_profiles(g, c.k);
    std::cout << "max profile " << pg.max_profile << " over " << pg.profiles.size() << " reachable profiles\n";
    std::cout << "index <= " << c.k << " over explored region: PASS\n";
    return 0;
  }
  if (kind == "ambiguity") {
    auto spec = language(in);
    BigInt worst = 0;
    std::size_t n = 0;
    for (const auto& w : enumerate_exact(spec, c.max_len, c.oracle())) {
      ++n;
      TreeCount t;
      if (auto* g = std::get_if<MatrixGrammar>(&in)) {
        t = count_derivations(*g, w, c.oracle().derivation);
      } else {
        t = count_trees(expect<EtolSystem>(in, "etol or matrix"), w, c.oracle().derivation);
      }
      if (t.count > 1) std::cout << "ambiguous " << to_string(w) << " " << t.count << (t.complete ? "" : "+") << "\n";
      worst = std::max(worst, t.count);
    }
    std::cout << "max derivation count " << worst << " over " << n << " words of length <= " << c.max_len << "\n";
    return worst <= 1 ? 0 : 1;
  }
  if (kind == "normal-form") {
    const auto& g = expect<MatrixGrammar>(in, "matrix grammar");
    auto v = normal_form_violation(g, c.k);
    std::cout << (v ? "violation: " + *v : std::string("normal form holds")) << "\n";
    return v ? 1 : 0;
  }
  if (kind == "semi-simple") {
    SemilinearSet q;
    if (auto* s = std::get_if<BoundedSpec>(&in)) {
      require(s->q1.has_value(), "bounded spec has no Q1");
      q = *s->q1;
    } else {
      q = expect<SemilinearSet>(in, "semilinear set or bounded spec");
    }
    auto r = validate_semi_simple(q, box);
    for (std::size_t i = 0; i < r.independent.size(); ++i)
      std::cout << "component " << i << (r.independent[i] ? " simple" : " periods dependent") << "\n";
    for (const auto& col : r.collisions)
      std::cout << "components " << col.first << " and " << col.second << " share " << to_string(col.point) << "\n";
    std::cout << "semi-simple within box " << r.box << ": " << pass(r.verdict) << "\n";
    return r.verdict ? 0 : 1;
  }
  throw Error(ErrorKind::precondition, "unknown audit kind " + kind);
}

int cmd_regularize(const Config& c, const std::string& input, const std::string& codes_path, std::size_t verify_len) {
  Object in = load(input);
  std::cout << c.header("regularize") << " verify_len=" << verify_len << "\n";
  RegularWitness w;
  LanguageSpec source = language(in);
  if (auto* g = std::get_if<MatrixGrammar>(&in)) {
    CodeAssignment f = codes_path.empty() ? cor2_code(*g) : expect<CodeAssignment>(load(codes_path), "codes");
    if (codes_path.empty()) std::cout << "codes: built from theta images\n";
    w = regularize_matrix(*g, f, c.k, c.audit_len, c.oracle().derivation);
  } else {
    const auto& e = expect<EtolSystem>(in, "matrix grammar or etol system");
    if (e.reduced) {
      EtolCodes f = codes_path.empty() ? cor2_etol_codes(e) : expect<EtolCodes>(load(codes_path), "etol-codes");
      if (codes_path.empty()) std::cout << "codes: built per nonterminal\n";
      w = regularize_etol(e, f, c.k, c.audit_len, c.oracle().derivation);
    } else {
      auto rep = edol_analyze(e, 20);
      if (rep.finite) {
        std::cout << "edol: finite language, " << rep.language.size() << " words\n";
      } else if (rep.commutative_repeat) {
        std::cout << "edol: gamma_" << rep.commutative_repeat->second << " ~ gamma_" << rep.commutative_repeat->first << "\n";
      } else {
        std::cout << "edol: no commutative repeat within 20 steps\n";
      }
      w = edol_regularize(e, c.k, 20, c.audit_len, c.oracle().derivation);
    }
  }
  std::cout << "witness: " << w.provenance << "\n";
  auto v = verify_comm_equivalence(source, w.automaton, verify_len, c.oracle());
  std::cout << "comm-equivalent <= " << verify_len << ": " << pass(v.equivalent) << "\n";
  if (v.witness) std::cout << "differs at " << to_string(*v.witness) << ": " << v.left << " vs " << v.right << "\n";
  if (c.out.empty()) {
    std::cout << dump_tsv(w.automaton);
  } else {
    emit(c, w.automaton);
  }
  return v.equivalent ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench: finite-index languages, conversions, counting series and regularization"};
  app.require_subcommand(1);
  Config cfg;
  std::string input, second, target, relation = "equal", mode = "length", kind, codes;
  std::vector<std::string> letters;
  std::size_t terms = 17, max_order = 8, verify_len = 12;
  std::int64_t box = 12;
  bool injective = false;

  auto* convert = app.add_subcommand("convert", "convert an object and cross-check it against the oracle");
  convert->add_option("input", input, "description file")->required();
  convert->add_option("--to", target, "ncm, etol, dcm, reduced-etol, normal-form, matrix, edtol, active-normal-form")->required();
  convert->add_option("--letters", letters, "letters for semilinear conversions")->delimiter(',');
  add_config(convert, cfg);

  auto* decide = app.add_subcommand("decide", "decide equal, subset or disjoint for bounded specs");
  decide->add_option("spec1", input)->required();
  decide->add_option("spec2", second)->required();
  decide->add_option("--relation", relation)->check(CLI::IsMember({"equal", "subset", "disjoint"}))->capture_default_str();
  decide->add_flag("--assert-injective", injective, "assert phi is injective for non-letter words");
  add_config(decide, cfg);

  auto* enumerate_cmd = app.add_subcommand("enumerate", "list the language up to --max-len");
  enumerate_cmd->add_option("input", input)->required();
  add_config(enumerate_cmd, cfg);

  auto* series = app.add_subcommand("series", "coefficient table and recurrence fit");
  series->add_option("input", input)->required();
  series->add_option("-n,--terms", terms, "largest length n")->capture_default_str();
  series->add_option("--mode", mode, "length or parikh")->capture_default_str();
  series->add_option("--max-order", max_order)->capture_default_str();
  add_config(series, cfg);

  auto* audit = app.add_subcommand("audit", "bounded-evidence audits");
  audit->add_option("input", input)->required();
  audit->add_option("--kind", kind, "index, ambiguity, normal-form, semi-simple")->required();
  audit->add_option("--box", box, "box bound for the semi-simple check")->capture_default_str();
  add_config(audit, cfg);

  auto* regularize = app.add_subcommand("regularize", "regular witness commutatively equivalent to the language");
  regularize->add_option("input", input)->required();
  regularize->add_option("--codes", codes, "codes or etol-codes file; built automatically when omitted");
  regularize->add_option("--verify-len", verify_len)->capture_default_str();
  add_config(regularize, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*convert) return cmd_convert(cfg, input, target, letters);
    if (*decide) return cmd_decide(cfg, input, second, relation, injective);
    if (*enumerate_cmd) return cmd_enumerate(cfg, input);
    if (*series) return cmd_series(cfg, input, terms, mode, max_order);
    if (*audit) return cmd_audit(cfg, input, kind, box);
    if (*regularize) return cmd_regularize(cfg, input, codes, verify_len);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::precondition: return 2;
      case ErrorKind::budget_exhausted: return 3;
      case ErrorKind::audit_failed: return 1;
    }
  }
  return 2;
}
