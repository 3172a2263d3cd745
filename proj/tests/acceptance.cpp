// One line per acceptance criterion. Exit status is non-zero when any fails.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "hiord/analysis.hpp"
#include "hiord/conformance.hpp"
#include "hiord/oracle.hpp"
#include "hiord/parser.hpp"
#include "hiord/verifier.hpp"

using namespace hiord;

namespace {

// time limits, seconds
constexpr double kTablesLimit = 1.0;
constexpr double kSyntheticLimit = 5.0;
constexpr double kCaseStudiesLimit = 5.0;
constexpr double kTheoremLimit = 120.0;
constexpr double kLemmaLimit = 60.0;
constexpr double kDomainLimit = 60.0;
constexpr double kAnalysisLimit = 120.0;

constexpr int kMicroPrograms = 500;
constexpr int kLemmaTriples = 1000;
constexpr int kLatticeTriples = 10000;
constexpr std::uint32_t kSeed = 20240917;

const char* kCorpusFiles[] = {"fig1.pl",   "synthetic.pl",   "qsort.pl",    "t_sort.pl",    "http.pl", "dutch_v1.pl",
                              "dutch_v2.pl", "dutch_v3.pl", "dutch_final.pl", "even.pl"};

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(HIORD_CORPUS) + "/" + name);
  if (!in) throw std::runtime_error("missing corpus file " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Program corpus_program(const std::string& name) {
  Program p = parse_program(slurp(name), name);
  apply_wrappers(p);
  return p;
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

void report(int n, const std::string& title, double limit, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.pass && secs > limit) o.fail("took longer than " + std::to_string(limit) + " s");
  if (!o.pass) ++failures;
  std::printf("criterion %d: %s  %-28s %7.3f s  %s\n", n, o.pass ? "PASS" : "FAIL", title.c_str(), secs,
              o.detail.c_str());
  std::fflush(stdout);
}

const PropertyVerdict* find(const VerifyResult& r, const std::string& pred, const std::string& prop) {
  for (const auto& v : r.conformance)
    if (v.pred.name == pred && v.property == prop) return &v;
  return nullptr;
}

std::string tri(TriState t) { return to_string(t); }

// ---- 1 ----

Outcome tables() {
  Outcome o;
  Program p = corpus_program("fig1.pl");
  FiniteLatticeDomain d(FiniteLattice::parse(slurp("fig1.lat")));
  AssertionSet a = AssertionSet::from_program(p);
  const PredicateProperty& pp = *p.find_pred_prop("p_nat_nat");
  int label = 0;
  auto anon = assertion_conditions(instantiate_property(pp, "_", 2), label);
  struct Row {
    const char* pred;
    TriState calls, success;
  };
  const Row expected[] = {{"n2n", TriState::Yes, TriState::Yes},
                          {"a2n", TriState::No, TriState::Maybe},
                          {"i2z", TriState::Maybe, TriState::Yes},
                          {"z2i", TriState::Maybe, TriState::Maybe},
                          {"nz2n", TriState::Maybe, TriState::Maybe}};
  for (const auto& r : expected) {
    PredKey k{r.pred, 2};
    TriState c = conf_calls(d, {}, a.calls(k), anon[0]);
    TriState s = conf_success(d, {}, a.successes(k), anon[1]);
    if (c != r.calls) o.fail(std::string(r.pred) + " calls " + tri(c) + ", expected " + tri(r.calls));
    if (s != r.success) o.fail(std::string(r.pred) + " success " + tri(s) + ", expected " + tri(r.success));
  }
  VerifyOptions vo;
  vo.lattice = d.lattice();
  VerifyResult res = verify(corpus_program("fig1.pl"), vo);
  std::set<std::string> yes;
  for (const auto& v : res.conformance)
    if (v.verdict == TriState::Yes) yes.insert(v.pred.name);
  if (yes != std::set<std::string>{"n2n"}) o.fail("Yes set differs from {n2n}");
  if (o.pass) o.detail = "10 condition verdicts exact; Yes = {n2n}";
  return o;
}

// ---- 2 ----

Outcome synthetic() {
  Outcome o;
  std::string detail;
  for (bool lattice : {true, false}) {
    VerifyOptions vo;
    if (lattice) vo.lattice = FiniteLattice::parse(slurp("fig1.lat"));
    VerifyResult r = conformance_only(corpus_program("synthetic.pl"), vo);
    int y = 0, n = 0, m = 0;
    for (const auto& v : r.conformance) (v.verdict == TriState::Yes ? y : v.verdict == TriState::No ? n : m)++;
    std::string counts = std::to_string(y) + "/" + std::to_string(n) + "/" + std::to_string(m);
    detail += std::string(lattice ? "lattice " : "regtypes ") + counts + " ";
    if (y != 2 || n != 7 || m != 16) o.fail("expected 2/7/16, got " + counts + (lattice ? " (lattice)" : " (regtypes)"));
  }
  if (o.pass) o.detail = detail + "(yes/no/maybe)";
  return o;
}

// ---- 3 ----

Outcome case_studies() {
  Outcome o;
  auto run = [](const std::string& file, const std::vector<std::string>& entries = {}) {
    VerifyOptions vo;
    for (const auto& e : entries) vo.entries.push_back(parse_entry(e));
    return verify(corpus_program(file), vo);
  };
  {
    VerifyResult r = run("qsort.pl", {"qsort(Xs, lex, Ys)"});
    bool warned = false;
    for (const auto& w : r.warnings) warned = warned || w.find("lex/2") != std::string::npos;
    if (r.exit_code() != 2 || !warned) o.fail("qsort/lex: expected check with a warning");
  }
  {
    VerifyResult r = run("qsort.pl", {"qsort(Xs, lex_t, Ys)"});
    if (r.exit_code() != 0) o.fail("qsort/lex_t: expected all checked");
  }
  {
    VerifyResult r = run("t_sort.pl");
    auto it = r.first_yes.find({"t_sort", "qsort"});
    if (it == r.first_yes.end() || it->second != 2) o.fail("t_sort: qsort must enter the strong set at iteration 2");
  }
  {
    VerifyResult r = run("http.pl");
    const auto* h = find(r, "h", "handler");
    bool cited = false;
    if (h)
      for (const auto& c : h->culprits) cited = cited || c.find("'BAD_REQ'") != std::string::npos;
    if (!h || h->verdict != TriState::Maybe || !cited) o.fail("http: h/2 must be maybe citing the BAD_REQ clause");
    if (r.tables["handler"].plus.count("h") != 1 || r.tables["handler"].minus.count("h") != 0)
      o.fail("http: h/2 must be a weak member only");
  }
  const std::pair<const char*, std::pair<TriState, int>> dutch[] = {{"dutch_v1.pl", {TriState::No, 1}},
                                                                    {"dutch_v2.pl", {TriState::Maybe, 2}},
                                                                    {"dutch_v3.pl", {TriState::Maybe, 2}},
                                                                    {"dutch_final.pl", {TriState::Yes, 0}}};
  for (const auto& [file, want] : dutch) {
    VerifyResult r = run(file);
    const auto* v = find(r, "cmp", "dutch_cmp");
    if (!v || v->verdict != want.first || r.exit_code() != want.second)
      o.fail(std::string(file) + ": got " + (v ? tri(v->verdict) : "nothing") + " exit " +
             std::to_string(r.exit_code()));
  }
  if (o.pass) o.detail = "qsort, t_sort, http, 4 Dutch flag versions";
  return o;
}

// ---- micro-programs ----

struct Micro {
  std::string text;
  Program prog;
  std::vector<Term> universe;
  bool lattice = false;
};

class MicroGen {
 public:
  explicit MicroGen(std::uint32_t seed) : rng_(seed) {}

  Micro next() {
    Micro m;
    m.lattice = chance(0.3);
    std::vector<std::string> pool = {"a", "b", "c", "0", "1", "-1", "2", "f(a)"};
    std::shuffle(pool.begin(), pool.end(), rng_);
    consts_.assign(pool.begin(), pool.begin() + pick(4, 6));
    std::ostringstream out;
    types_ = {"int", "nat", "atm", "term"};
    if (m.lattice) {
      out << ":- prop zero/1.\nzero(0).\n:- prop negz/1.\nnegz(X) :- int(X), X =< 0.\n";
      types_.push_back("zero");
      types_.push_back("negz");
    } else {
      for (const char* t : {"ta", "tb"}) {
        out << ":- regtype " << t << "/1.\n";
        std::vector<std::string> cs = consts_;
        std::shuffle(cs.begin(), cs.end(), rng_);
        for (int i = 0, n = pick(1, 3); i < n; ++i) out << t << "(" << cs[i] << ").\n";
        types_.push_back(t);
      }
      out << ":- prop small/1.\nsmall(X) :- int(X), X < 1.\n";
      types_.push_back("small");
    }
    const int arity = pick(1, 2);
    const std::vector<std::string> params = arity == 1 ? std::vector<std::string>{"X"} : std::vector<std::string>{"X", "Y"};
    out << "pi := {";
    for (int i = 0, n = pick(1, 2); i < n; ++i) out << " :- pred _(" << join(params) << ")" << conds(params) << ".";
    out << " }.\n";
    const int preds = pick(1, 4);
    for (int k = 1; k <= preds; ++k) {
      std::vector<std::string> head;
      for (int i = 0; i < arity; ++i) head.push_back("A" + std::to_string(i + 1));
      if (chance(0.75))
        for (int i = 0, n = pick(1, 2); i < n; ++i)
          out << ":- pred p" << k << "(" << join(head) << ")" << conds(head) << ".\n";
      for (int c = 0, n = pick(1, 3); c < n; ++c) out << clause(k, preds, arity) << "\n";
    }
    m.text = out.str();
    m.prog = parse_program(m.text, "micro");
    for (const auto& c : consts_) m.universe.push_back(parse_query("X = " + c).goals[0].args[1]);
    return m;
  }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <class T>
  const T& any_of(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(pick(0, static_cast<int>(v.size()) - 1))];
  }
  static std::string join(const std::vector<std::string>& xs) {
    std::string s;
    for (const auto& x : xs) s += (s.empty() ? "" : ",") + x;
    return s;
  }

  std::string conj(const std::vector<std::string>& vars) {
    std::vector<std::string> lits;
    for (const auto& v : vars)
      if (chance(0.6)) lits.push_back(any_of(types_) + "(" + v + ")");
    return join(lits);
  }
  std::string formula(const std::vector<std::string>& vars) {
    std::string f = conj(vars);
    if (f.empty() || !chance(0.2)) return f;
    std::string g = conj(vars);
    return g.empty() ? f : "(" + f + ") ; (" + g + ")";
  }
  std::string conds(const std::vector<std::string>& vars) {
    std::string s;
    std::string pre = formula(vars), post = formula(vars);
    if (!pre.empty()) s += " : (" + pre + ")";
    if (!post.empty()) s += " => (" + post + ")";
    return s;
  }

  std::string clause(int k, int preds, int arity) {
    std::vector<std::string> head, vars;
    int fresh = 0;
    for (int i = 0; i < arity; ++i) {
      if (chance(0.35)) {
        head.push_back(any_of(consts_));
      } else {
        head.push_back("V" + std::to_string(fresh++));
        vars.push_back(head.back());
      }
    }
    std::vector<std::string> body;
    for (int i = 0, n = pick(0, 2); i < n; ++i) {
      const int kind = pick(0, 2);
      if (kind == 0 && !vars.empty()) {
        body.push_back(any_of(vars) + " = " + any_of(consts_));
      } else if (kind == 1 && !vars.empty()) {
        body.push_back(any_of(std::vector<std::string>{"int", "atm", "nat"}) + "(" + any_of(vars) + ")");
      } else if (k < preds) {
        std::vector<std::string> args;
        for (int j = 0; j < arity; ++j) {
          if (!vars.empty() && chance(0.6)) {
            args.push_back(any_of(vars));
          } else if (chance(0.5)) {
            args.push_back(any_of(consts_));
          } else {
            args.push_back("V" + std::to_string(fresh++));
            vars.push_back(args.back());
          }
        }
        body.push_back("p" + std::to_string(pick(k + 1, preds)) + "(" + join(args) + ")");
      }
    }
    std::string s = "p" + std::to_string(k) + "(" + join(head) + ")";
    if (!body.empty()) s += " :- " + join(body);
    return s + ".";
  }

  std::mt19937 rng_;
  std::vector<std::string> consts_, types_;
};

EngineOptions micro_engine() {
  EngineOptions eo;
  eo.depth = 200;
  eo.tree_budget = 20000;
  return eo;
}

// ---- 4 ----

Outcome theorem() {
  Outcome o;
  MicroGen gen(kSeed);
  FiniteLattice lat = FiniteLattice::parse(slurp("fig1.lat"));
  int yes = 0, no = 0, maybe = 0, unknown = 0;
  for (int i = 0; i < kMicroPrograms; ++i) {
    Micro m = gen.next();
    std::unique_ptr<Domain> d;
    if (m.lattice) d = std::make_unique<FiniteLatticeDomain>(lat);
    else d = std::make_unique<RegTypeDomain>(m.prog);
    AssertionSet a = AssertionSet::from_program(m.prog);
    ConformanceContext ctx;
    ctx.program = &m.prog;
    ctx.domain = d.get();
    ctx.conditions = &a;
    ctx.engine = micro_engine();
    const PredicateProperty& pp = *m.prog.find_pred_prop("pi");
    for (const auto& k : candidate_predicates(m.prog, pp.arity)) {
      PropertyVerdict v = conf_property(k, pp, ctx);
      if (v.verdict == TriState::Yes) {
        ++yes;
        RedundanceOptions ro;
        ro.universe = m.universe;
        ro.engine = micro_engine();
        RedundanceResult r = redundance_oracle(m.prog, a, k, pp, ro);
        if (r.kind == RedundanceResult::Kind::Unknown) ++unknown;
        if (r.kind != RedundanceResult::Kind::Redundant)
          o.fail("program " + std::to_string(i) + ": " + k.str() + " yes but the oracle finds " +
                 (r.kind == RedundanceResult::Kind::Unknown ? "unknown" : "a witness") + "\n" + m.text);
      } else if (v.verdict == TriState::No) {
        ++no;
        AssertionSet a_prime = strengthened_conditions(a, k, pp);
        if (redundance_query(m.prog, a, a_prime, k, v.witness, micro_engine()) != QueryVerdict::Violation)
          o.fail("program " + std::to_string(i) + ": " + k.str() + " no but its witness does not replay\n" + m.text);
      } else {
        ++maybe;
      }
    }
  }
  std::string counts = std::to_string(kMicroPrograms) + " programs; yes " + std::to_string(yes) + ", no " +
                       std::to_string(no) + ", maybe " + std::to_string(maybe);
  if (o.pass) o.detail = counts;
  else o.detail = counts + "; " + o.detail;
  return o;
}

// ---- random terms and stores ----

struct CorpusFormulas {
  Program prog;
  PPTables pp;
  std::vector<std::pair<PropFormula, std::vector<Term>>> formulas;  // formula and its head
  std::vector<Term> universe;
  std::vector<std::string> unary;  // property names usable on one argument
};

std::vector<CorpusFormulas> load_corpus() {
  std::vector<CorpusFormulas> out;
  for (const char* f : kCorpusFiles) {
    CorpusFormulas c;
    c.prog = corpus_program(f);
    VerifyResult r = conformance_only(c.prog);
    for (const auto& [name, s] : r.tables) {
      c.pp.minus[name] = s.minus;
      c.pp.plus[name] = s.plus;
    }
    const AssertionSet conds = AssertionSet::from_program(c.prog);
    for (const auto& cond : conds.all()) {
      c.formulas.push_back({cond.pre, cond.head});
      if (cond.kind == AssertionCondition::Kind::Success) c.formulas.push_back({cond.post, cond.head});
    }
    for (const auto& pp : c.prog.pred_props) {
      int label = 0;
      for (const auto& cond : assertion_conditions(instantiate_property(pp, "_", pp.arity), label)) {
        c.formulas.push_back({cond.pre, cond.head});
        if (cond.kind == AssertionCondition::Kind::Success) c.formulas.push_back({cond.post, cond.head});
      }
    }
    RegTypeDomain d(c.prog);
    c.universe = witness_universe(c.prog, d, {}, 2);
    std::set<std::string> unary = {"int", "nat", "atm", "term"};
    for (const auto& k : c.prog.props)
      if (k.arity == 1) unary.insert(k.name);
    for (const auto& k : c.prog.regtypes)
      if (k.arity == 1) unary.insert(k.name);
    for (const auto& pp : c.prog.pred_props) unary.insert(pp.name);
    for (const auto& n : unary)
      if (auto t = d.definitions().lookup(n); t || c.prog.props.count({n, 1}) || c.prog.find_pred_prop(n))
        c.unary.push_back(n);
    // values of the named types, up to height 4
    for (const auto& n : c.unary)
      if (auto t = d.definitions().lookup(n)) {
        auto ts = t->enumerate(4, 6);
        c.universe.insert(c.universe.end(), ts.begin(), ts.end());
      }
    out.push_back(std::move(c));
  }
  return out;
}

class TermGen {
 public:
  explicit TermGen(std::uint32_t seed) : rng_(seed) {}
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <class T>
  const T& any_of(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(pick(0, static_cast<int>(v.size()) - 1))];
  }

  /// A term of height <= depth over the universe, lists and fresh variables.
  Term term(const std::vector<Term>& universe, int depth) {
    if (depth <= 1 || chance(0.5)) return chance(0.1) ? Term::fresh("_") : any_of(universe);
    if (chance(0.6)) {
      std::vector<Term> items;
      for (int i = 0, n = pick(0, 3); i < n; ++i) items.push_back(term(universe, depth - 1));
      return Term::list(items, chance(0.1) ? Term::fresh("T") : Term::nil());
    }
    return Term::compound("f", {term(universe, depth - 1)});
  }

 private:
  std::mt19937 rng_;
};

// ---- 5 ----

Outcome lemma() {
  Outcome o;
  auto corpus = load_corpus();
  TermGen g(kSeed + 5);
  int true_both = 0;
  for (int i = 0; i < kLemmaTriples; ++i) {
    const CorpusFormulas& c = g.any_of(corpus);
    Term x = Term::fresh("X"), y = Term::fresh("Y");
    auto formula = [&] {
      PropFormula f;
      f.disjuncts.clear();
      for (int d = 0, nd = g.pick(1, 2); d < nd; ++d) {
        std::vector<PropLit> conj;
        for (int l = 0, nl = g.pick(1, 2); l < nl; ++l)
          conj.push_back(PropLit{g.any_of(c.unary), {g.chance(0.5) ? x : y}, nullptr});
        f.disjuncts.push_back(conj);
      }
      return f;
    };
    PropFormula f1 = formula(), f2 = formula();
    Store theta;
    if (g.chance(0.9)) theta.unify(x, g.term(c.universe, 4));
    if (g.chance(0.9)) theta.unify(y, g.term(c.universe, 4));
    EngineOptions eo;
    for (const auto& [n, s] : c.pp.plus) eo.pp_members[n] = s;
    Engine e(c.prog, nullptr, eo);
    Truth both = e.trivially_succeeds(f1.conjoin(f2), theta);
    Truth t1 = e.trivially_succeeds(f1, theta), t2 = e.trivially_succeeds(f2, theta);
    if (both == Truth::Unknown || t1 == Truth::Unknown || t2 == Truth::Unknown) {
      o.fail("undecided trivial success for " + f1.to_string() + " / " + f2.to_string());
      continue;
    }
    const bool lhs = both == Truth::True, rhs = t1 == Truth::True && t2 == Truth::True;
    true_both += lhs;
    if (lhs != rhs)
      o.fail(c.prog.source_name + ": " + f1.to_string() + " and " + f2.to_string() + " under X = " +
             theta.resolve(x).to_string() + ", Y = " + theta.resolve(y).to_string());
  }
  if (o.pass)
    o.detail = std::to_string(kLemmaTriples) + " triples, " + std::to_string(true_both) + " in the intersection";
  return o;
}

// ---- 6 ----

template <class MakeElem>
void lattice_laws(Outcome& o, const Domain& d, const std::string& name, int n, MakeElem&& make) {
  auto eq = [&](const Elem& a, const Elem& b) { return d.leq(a, b) && d.leq(b, a); };
  for (int i = 0; i < n; ++i) {
    Elem a = make(), b = make(), c = make();
    auto bad = [&](const char* law) { o.fail(name + ": " + law + " fails on " + d.str(a) + ", " + d.str(b) + ", " + d.str(c)); };
    if (!eq(d.meet(a, b), d.meet(b, a))) bad("meet commutes");
    if (!eq(d.join(a, b), d.join(b, a))) bad("join commutes");
    if (!eq(d.meet(a, d.meet(b, c)), d.meet(d.meet(a, b), c))) bad("meet associates");
    if (!eq(d.join(a, d.join(b, c)), d.join(d.join(a, b), c))) bad("join associates");
    if (!eq(d.meet(a, d.join(a, b)), a)) bad("absorption of meet");
    if (!eq(d.join(a, d.meet(a, b)), a)) bad("absorption of join");
    if (!eq(d.meet(a, a), a) || !eq(d.join(a, a), a)) bad("idempotence");
    if (d.leq(a, b) != eq(d.meet(a, b), a)) bad("order agrees with meet");
    if (!d.leq(a, d.top_elem()) || !d.leq(d.meet(a, b), a) || !d.leq(a, d.join(a, b))) bad("bounds");
    if (!o.pass) return;
  }
}

Outcome domain() {
  Outcome o;
  auto corpus = load_corpus();
  TermGen g(kSeed + 6);
  std::size_t stores = 0, formulas = 0, in_sub = 0, in_trivial = 0;
  FiniteLattice lat = FiniteLattice::parse(slurp("fig1.lat"));
  for (const auto& c : corpus) {
    std::vector<std::unique_ptr<Domain>> domains;
    domains.push_back(std::make_unique<RegTypeDomain>(c.prog));
    if (c.prog.source_name == "fig1.pl" || c.prog.source_name == "synthetic.pl")
      domains.push_back(std::make_unique<FiniteLatticeDomain>(lat));
    EngineOptions eo;
    for (const auto& [n, s] : c.pp.plus) eo.pp_members[n] = s;
    Engine e(c.prog, nullptr, eo);
    std::vector<Term> values = c.universe;
    for (int i = 0; i < 12; ++i) values.push_back(g.term(c.universe, 4));
    for (const auto& [f, head] : c.formulas) {
      ++formulas;
      for (const auto& dom : domains) {
        AbsVal sub = triv_sub(*dom, f, head, c.pp), sup = triv_sup(*dom, f, head, c.pp);
        if (!dom->leq(sub, sup)) o.fail(c.prog.source_name + ": sub not below sup for " + f.to_string());
        for (const auto& args : enumerate_queries(values, head.size(), true, 400)) {
          ++stores;
          Store theta;
          bool ok = true;
          for (std::size_t i = 0; i < head.size() && ok; ++i) ok = theta.unify(head[i], args[i]);
          if (!ok) continue;
          std::vector<Term> resolved;
          for (const auto& h : head) resolved.push_back(theta.resolve(h));
          Truth ts = e.trivially_succeeds(f, theta);
          if (ts == Truth::Unknown) continue;
          const bool in_ts = ts == Truth::True;
          const bool below = gamma_contains(*dom, sub, resolved, e);
          in_sub += below;
          in_trivial += in_ts;
          if (below && !in_ts)
            o.fail(c.prog.source_name + " (" + dom->name() + "): store in sub outside TS of " + f.to_string());
          if (in_ts && !gamma_contains(*dom, sup, resolved, e))
            o.fail(c.prog.source_name + " (" + dom->name() + "): store in TS outside sup of " + f.to_string());
        }
      }
    }
  }
  // lattice laws per instance
  FiniteLatticeDomain ld(lat);
  if (!lat.check_laws().empty()) o.fail("fig1 lattice breaks a law");
  lattice_laws(o, ld, "fig1 lattice", kLatticeTriples,
               [&]() -> Elem { return g.pick(0, static_cast<int>(lat.size()) - 1); });
  for (const auto& c : corpus) {
    RegTypeDomain d(c.prog);
    std::vector<RegType> pool = {RegType::any(), RegType::empty(), RegType::leaf(BaseType::Int),
                                 RegType::leaf(BaseType::Nat), RegType::leaf(BaseType::Atm)};
    for (const auto& n : c.unary)
      if (auto t = d.definitions().lookup(n)) pool.push_back(*t);
    for (const auto& v : c.universe) pool.push_back(RegType::of_term(v));
    std::function<RegType(int)> make = [&](int depth) -> RegType {
      const int k = depth > 0 ? g.pick(0, 4) : 0;
      if (k == 0) return g.any_of(pool);
      if (k == 1) return unite(make(depth - 1), make(depth - 1));
      if (k == 2) return RegType::list_of(make(depth - 1));
      if (k == 3) return RegType::constructor("f", {make(depth - 1)});
      return make(depth - 1).widen();
    };
    lattice_laws(o, d, "regtypes of " + c.prog.source_name, kLatticeTriples,
                 [&]() -> Elem { return make(3); });
    for (int i = 0; i < 200; ++i) {
      RegType t = make(3);
      if (!subset(t, t.widen())) o.fail("widening lost values of " + t.to_string());
    }
  }
  if (o.pass)
    o.detail = std::to_string(formulas) + " formulas, " + std::to_string(stores) + " stores (" +
               std::to_string(in_sub) + " in sub, " + std::to_string(in_trivial) + " in TS); " +
               std::to_string(kLatticeTriples) + " lattice triples per instance";
  return o;
}

// ---- 7 ----

struct Observed {
  PredKey pred;
  std::vector<Term> args;
};

/// Every predicate call reached from `goal`, in the plain semantics.
std::vector<Observed> observe_calls(const Program& prog, const Engine& e, const Literal& goal) {
  std::vector<Observed> out;
  std::vector<ExtState> stack{ExtState{push_goals({goal}, nullptr), Store{}, 0, false}};
  std::size_t steps = 0;
  while (!stack.empty() && steps++ < 5000) {
    ExtState s = std::move(stack.back());
    stack.pop_back();
    if (!s.goal) continue;
    const Literal& l = s.goal->lit;
    if (l.kind == Literal::Kind::Atom || l.kind == Literal::Kind::HigherOrder) {
      std::string name = l.name;
      std::vector<Term> args;
      for (const auto& a : l.args) args.push_back(s.store.resolve(a));
      if (l.kind == Literal::Kind::HigherOrder) {
        Term c = s.store.resolve(l.callee);
        name = c.is_compound() ? c.name() : "";
        if (c.is_compound()) args.insert(args.begin(), c.args().begin(), c.args().end());
      }
      if (prog.defines({name, static_cast<int>(args.size())}))
        out.push_back({{name, static_cast<int>(args.size())}, args});
    }
    auto succ = e.reduce(s);
    for (auto it = succ.rbegin(); it != succ.rend(); ++it) stack.push_back(std::move(it->state));
  }
  return out;
}

bool in_pattern(const Pattern& p, const std::vector<Term>& args) {
  for (std::size_t i = 0; i < args.size(); ++i)
    if (!p[i].contains(args[i])) return false;
  return true;
}

Outcome analysis() {
  Outcome o;
  MicroGen gen(kSeed);
  std::size_t calls = 0, answers = 0;
  for (int i = 0; i < kMicroPrograms && o.pass; ++i) {
    Micro m = gen.next();
    RegTypeDomain d(m.prog);
    Analyzer an(m.prog, d);
    auto entries = entry_queries(m.prog, d, {});
    for (const auto& q : entries) an.add_query(q);
    an.run();
    Engine e(m.prog, nullptr, micro_engine());
    for (const auto& q : entries) {
      for (const auto& args : enumerate_queries(m.universe, static_cast<std::size_t>(q.pred.arity), true, 400)) {
        if (!in_pattern(q.call, args)) continue;
        for (const auto& obs : observe_calls(m.prog, e, Literal::atom(q.pred.name, args))) {
          ++calls;
          std::vector<const Triple*> covering;
          for (const auto& t : an.triples())
            if (t.pred == obs.pred && in_pattern(t.call, obs.args)) covering.push_back(&t);
          auto text = [&] {
            std::string s = obs.pred.name + "(";
            for (std::size_t k = 0; k < obs.args.size(); ++k) s += (k ? "," : "") + obs.args[k].to_string(true);
            return s + ")";
          };
          if (covering.empty()) {
            o.fail("program " + std::to_string(i) + ": call " + text() + " outside every call pattern\n" + m.text +
                   an.dump());
            break;
          }
          std::vector<Term> vars;
          for (int k = 0; k < obs.pred.arity; ++k) vars.push_back(Term::fresh("R"));
          std::vector<Literal> goal{Literal::atom(obs.pred.name, vars)};
          Store st;
          for (std::size_t k = 0; k < vars.size(); ++k) st.unify(vars[k], obs.args[k]);
          for (const auto& ans : e.answers(goal, st, vars)) {
            ++answers;
            bool ok = false;
            for (const auto* t : covering) ok = ok || (t->success && in_pattern(*t->success, ans));
            if (!ok) {
              o.fail("program " + std::to_string(i) + ": an answer of " + text() + " is outside the success pattern\n" +
                     m.text + an.dump());
              break;
            }
          }
        }
      }
    }
  }
  if (o.pass)
    o.detail = std::to_string(calls) + " observed calls, " + std::to_string(answers) + " answers covered";
  return o;
}

}  // namespace

int main() {
  report(1, "tables (fig1)", kTablesLimit, tables);
  report(2, "synthetic grid", kSyntheticLimit, synthetic);
  report(3, "case studies", kCaseStudiesLimit, case_studies);
  report(4, "abstract conformance", kTheoremLimit, theorem);
  report(5, "conjunction identity", kLemmaLimit, lemma);
  report(6, "domain soundness", kDomainLimit, domain);
  report(7, "analysis soundness", kAnalysisLimit, analysis);
  return failures ? 1 : 0;
}
