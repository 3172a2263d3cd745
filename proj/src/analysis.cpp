#include "hiord/analysis.hpp"

#include <algorithm>
#include <functional>

#include "hiord/assertions.hpp"
#include "hiord/builtins.hpp"
#include "hiord/store.hpp"

namespace hiord {

std::string pattern_string(const Pattern& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + p[i].display_name();
  return s;
}

bool pattern_leq(const Pattern& a, const Pattern& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!b[i].is_any() && !subset(a[i], b[i])) return false;
  return true;
}

namespace {

bool pattern_equiv(const Pattern& a, const Pattern& b) { return pattern_leq(a, b) && pattern_leq(b, a); }

Pattern widen(const Pattern& p) {
  Pattern out;
  for (const auto& t : p) out.push_back(t.is_any() ? t : t.widen());
  return out;
}

Pattern unite(const Pattern& a, const Pattern& b) {
  Pattern out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_any() || b[i].is_any()) out.push_back(RegType::any());
    else if (subset(a[i], b[i])) out.push_back(b[i]);
    else if (subset(b[i], a[i])) out.push_back(a[i]);
    else out.push_back(unite(a[i], b[i]));
  }
  return out;
}

Pattern all_any(int n) { return Pattern(static_cast<std::size_t>(n), RegType::any()); }

RegType meet(const RegType& a, const RegType& b) {
  if (a.is_any()) return b;
  if (b.is_any()) return a;
  return intersect(a, b);
}

}  // namespace

/// Herbrand structure of the clause variables plus a type for each free one.
struct Analyzer::State {
  Store st;
  std::map<VarId, RegType> types;

  RegType type_of(const Term& t0) const {
    Term t = st.walk(t0);
    if (t.is_var()) {
      auto it = types.find(t.var_id());
      return it == types.end() ? RegType::any() : it->second;
    }
    if (t.is_int()) return RegType::integer(t.int_value());
    if (t.is_atom()) return RegType::atom(t.name());
    std::vector<RegType> ch;
    for (const auto& a : t.args()) ch.push_back(type_of(a));
    return RegType::constructor(t.name(), ch);
  }

  Pattern pattern(const std::vector<Term>& args) const {
    Pattern p;
    for (const auto& a : args) p.push_back(type_of(a));
    return p;
  }

  bool narrow(const Term& t0, const RegType& ty) {
    if (ty.is_any()) return true;
    Term t = st.walk(t0);
    if (t.is_var()) {
      auto it = types.find(t.var_id());
      RegType m = it == types.end() ? ty : meet(it->second, ty);
      if (m.is_empty()) return false;
      types[t.var_id()] = m;
      return true;
    }
    if (t.is_int() || t.is_atom()) return ty.contains(t);
    if (!ty.admits_functor(t.name(), t.arity())) return false;
    for (std::size_t i = 0; i < t.arity(); ++i)
      if (!narrow(t.arg(i), ty.children_of(t.name(), t.arity(), i))) return false;
    return true;
  }

  bool unify(const Term& a, const Term& b) {
    if (!st.unify(a, b)) return false;
    auto old = types;
    for (const auto& [v, ty] : old) {
      Term w = st.walk(Term::var(v));
      if (w.is_var() && w.var_id() == v) continue;
      types.erase(v);
      if (!narrow(w, ty)) return false;
    }
    return true;
  }

  bool arith(const Term& e) {
    for (VarId v : st.resolve(e).vars())
      if (!narrow(Term::var(v), RegType::leaf(BaseType::Int))) return false;
    return true;
  }
};

Analyzer::Analyzer(const Program& p, const RegTypeDomain& d, AnalysisOptions o) : prog_(p), dom_(d), opts_(std::move(o)) {
  for (const auto& r : prog_.rules) rules_[r.key()].push_back(&r);
}

bool Analyzer::has_clauses(const PredKey& k) const { return rules_.count(k) != 0; }

void Analyzer::add_query(const AbstractQuery& q) {
  queries_.push_back(q);
  lookup(q.pred, widen(q.call));
}

std::size_t Analyzer::lookup(const PredKey& pred, Pattern call) {
  auto& vs = variants_[pred];
  for (std::size_t i : vs)
    if (pattern_equiv(table_[i].call, call)) return i;
  if (vs.size() >= opts_.max_variants) {
    incomplete_ = true;
    call = all_any(pred.arity);
    for (std::size_t i : vs)
      if (pattern_equiv(table_[i].call, call)) {
        table_[i].incomplete = true;
        return i;
      }
  }
  Triple t;
  t.pred = pred;
  t.call = std::move(call);
  t.clause_success.resize(rules_.count(pred) ? rules_.at(pred).size() : 0);
  table_.push_back(std::move(t));
  vs.push_back(table_.size() - 1);
  changed_ = true;
  return table_.size() - 1;
}

std::optional<std::set<std::string>> Analyzer::resolve_higher_order(const RegType& t, int arity) const {
  if (t.is_any()) return std::nullopt;
  auto names = t.constant_names();
  if (!names) return std::nullopt;
  std::set<std::string> out;
  for (const auto& n : *names) {
    PredKey k{n, arity};
    if (has_clauses(k) || is_builtin(k) || (arity == 1 && prog_.find_pred_prop(n))) out.insert(n);
  }
  return out;
}

bool Analyzer::call_pred(State& s, const PredKey& k, const std::vector<Term>& args, const Rule& r, int line,
                         bool record) {
  if (k.arity == 1 && prog_.regtypes.count(k))
    if (auto t = dom_.definitions().lookup(k.name)) return s.narrow(args[0], *t);
  if (has_clauses(k)) {
    Pattern call = s.pattern(args);
    if (record) sites_.push_back({k, call, r.key().str(), line});
    std::size_t idx = lookup(k, widen(call));
    const auto& succ = table_[idx].success;
    if (!succ) return false;
    Pattern sp = *succ;
    for (std::size_t i = 0; i < args.size(); ++i)
      if (!s.narrow(args[i], sp[i])) return false;
    return true;
  }
  if (k.arity == 1 && prog_.find_pred_prop(k.name)) {
    if (auto it = opts_.pp.plus.find(k.name); it != opts_.pp.plus.end()) return s.narrow(args[0], names_type(it->second));
    return true;
  }
  if (!is_builtin(k)) return false;
  if (k.arity == 0) return k.name == "true";
  if (is_standard_order_test(k.name)) return true;
  if (k.name == "list" && k.arity == 1) return s.narrow(args[0], RegType::list_of(RegType::any()));
  if (k.name == "list" && k.arity == 2) {
    RegType elem = RegType::any();
    if (auto names = s.type_of(args[0]).constant_names()) {
      elem = RegType::empty();
      for (const auto& n : *names) {
        auto t = dom_.definitions().lookup(n);
        if (!t) {
          elem = RegType::any();
          break;
        }
        elem = elem.is_empty() ? *t : unite(elem, *t);
      }
    }
    return s.narrow(args[1], RegType::list_of(elem));
  }
  if (auto l = builtin_type_leaf(k.name)) return s.narrow(args[0], RegType::leaf(*l));
  return true;
}

bool Analyzer::body(State& s, const Rule& r, bool record) {
  for (const auto& l : r.body) {
    switch (l.kind) {
      case Literal::Kind::Eq:
        if (!s.unify(l.args[0], l.args[1])) return false;
        break;
      case Literal::Kind::Is:
        if (!s.arith(l.args[1]) || !s.narrow(l.args[0], RegType::leaf(BaseType::Int))) return false;
        break;
      case Literal::Kind::Cmp:
        if (!s.arith(l.args[0]) || !s.arith(l.args[1])) return false;
        break;
      case Literal::Kind::Check:
        break;
      case Literal::Kind::Atom:
        if (!call_pred(s, l.key(), l.args, r, l.line, record)) return false;
        break;
      case Literal::Kind::HigherOrder: {
        const int n = static_cast<int>(l.args.size());
        Term callee = s.st.walk(l.callee);
        if (!callee.is_var() && !callee.is_atom()) return false;
        HigherOrderSite site{r.key().str(), l.line, l.to_string(), n, {}, false};
        std::optional<std::set<std::string>> names;
        if (callee.is_atom()) names = std::set<std::string>{callee.name()};
        else names = resolve_higher_order(s.type_of(callee), n);
        if (!names) {
          site.unknown = true;
          if (record) ho_sites_.push_back(site);
          if (!s.narrow(callee, RegType::leaf(BaseType::Atm))) return false;
          break;
        }
        std::optional<Pattern> joined;
        std::set<std::string> ok;
        for (const auto& name : *names) {
          State c = s;
          if (!c.unify(callee, Term::atom(name))) continue;
          if (!call_pred(c, {name, n}, l.args, r, l.line, record)) continue;
          Pattern p = c.pattern(l.args);
          joined = joined ? unite(*joined, p) : p;
          ok.insert(name);
        }
        site.targets = *names;
        if (record) ho_sites_.push_back(site);
        if (!joined) return false;
        if (!s.narrow(callee, names_type(ok))) return false;
        for (std::size_t i = 0; i < l.args.size(); ++i)
          if (!s.narrow(l.args[i], (*joined)[i])) return false;
        break;
      }
    }
  }
  return true;
}

void Analyzer::analyze(std::size_t entry, bool record) {
  const PredKey pred = table_[entry].pred;
  const Pattern call = table_[entry].call;
  auto rit = rules_.find(pred);
  std::optional<Pattern> result;
  std::vector<std::optional<Pattern>> per_clause;
  if (rit != rules_.end())
    for (const Rule* r : rit->second) {
      State s;
      bool ok = true;
      for (std::size_t i = 0; ok && i < r->head.size(); ++i) ok = s.narrow(r->head[i], call[i]);
      ok = ok && body(s, *r, record);
      if (!ok) {
        per_clause.push_back(std::nullopt);
        continue;
      }
      Pattern p = s.pattern(r->head);
      per_clause.push_back(p);
      result = result ? unite(*result, p) : p;
    }
  Triple& t = table_[entry];
  if (record) t.clause_success = per_clause;
  if (!result) return;
  if (!t.success) {
    t.success = widen(*result);
    changed_ = true;
  } else if (!pattern_leq(*result, *t.success)) {
    t.success = widen(unite(*t.success, *result));
    changed_ = true;
  }
}

void Analyzer::run() {
  for (int attempt = 0; attempt < 4; ++attempt) {
    int rounds = 0;
    do {
      changed_ = false;
      for (std::size_t i = 0; i < table_.size(); ++i) analyze(i, false);
      if (++rounds > opts_.max_rounds) {
        for (auto& t : table_) {
          t.success = all_any(t.pred.arity);
          t.incomplete = true;
        }
        incomplete_ = true;
        break;
      }
    } while (changed_);
    sites_.clear();
    ho_sites_.clear();
    for (const auto& q : queries_) sites_.push_back({q.pred, q.call, q.where, q.line, q.assumed});
    changed_ = false;
    for (std::size_t i = 0; i < table_.size(); ++i) analyze(i, true);
    if (!changed_) return;
  }
}

std::optional<Pattern> Analyzer::success(const PredKey& pred, const Pattern& call) {
  std::size_t idx = lookup(pred, widen(call));
  run();
  return table_[idx].success;
}

std::vector<std::pair<const Rule*, std::optional<Pattern>>> Analyzer::clause_successes(const PredKey& pred) const {
  std::vector<std::pair<const Rule*, std::optional<Pattern>>> out;
  auto rit = rules_.find(pred);
  if (rit == rules_.end()) return out;
  for (const Rule* r : rit->second) out.emplace_back(r, std::nullopt);
  auto vit = variants_.find(pred);
  if (vit == variants_.end()) return out;
  for (std::size_t i : vit->second) {
    const auto& cs = table_[i].clause_success;
    for (std::size_t c = 0; c < cs.size() && c < out.size(); ++c)
      if (cs[c]) out[c].second = out[c].second ? unite(*out[c].second, *cs[c]) : *cs[c];
  }
  return out;
}

std::string Analyzer::dump() const {
  std::string s;
  for (const auto& t : table_) {
    s += t.pred.str() + " call(" + pattern_string(t.call) + ") success(" +
         (t.success ? pattern_string(*t.success) : std::string("bot")) + ")";
    if (t.incomplete) s += " incomplete";
    s += "\n";
  }
  return s;
}

AbstractQuery entry_query(const EntryDecl& e, const Program& p, const RegTypeDomain& d, const PPTables& pp) {
  AbstractQuery q;
  q.line = e.line;
  std::vector<Term> args = e.goal.is_var() ? std::vector<Term>{} : e.goal.args();
  q.pred = {e.goal.name(), static_cast<int>(args.size())};
  std::optional<PropFormula> pre = e.pre;
  if (!pre) {
    AssertionSet a = AssertionSet::from_program(p);
    if (const AssertionCondition* c = a.calls(q.pred)) pre = instantiate_formula(c->pre, c->head, args);
  }
  std::map<VarId, RegType> types;
  std::vector<Term> vars;
  for (VarId v : e.goal.vars()) vars.push_back(Term::var(v));
  bool bottom = false;
  if (pre) {
    AbsVal sup = triv_sup(d, *pre, vars, pp);
    bottom = sup.bottom;
    for (const auto& [pos, el] : sup.env) types.emplace(vars[static_cast<std::size_t>(pos)].var_id(), std::get<RegType>(el));
  }
  std::function<RegType(const Term&)> ty = [&](const Term& t) -> RegType {
    if (t.is_var()) {
      auto it = types.find(t.var_id());
      return it == types.end() ? RegType::any() : it->second;
    }
    if (t.is_int()) return RegType::integer(t.int_value());
    if (t.is_atom()) return RegType::atom(t.name());
    std::vector<RegType> ch;
    for (const auto& a : t.args()) ch.push_back(ty(a));
    return RegType::constructor(t.name(), ch);
  };
  for (const auto& a : args) q.call.push_back(bottom ? RegType::empty() : ty(a));
  return q;
}

std::vector<AbstractQuery> entry_queries(const Program& p, const RegTypeDomain& d, const PPTables& pp) {
  std::vector<AbstractQuery> out;
  for (const auto& e : p.entries) out.push_back(entry_query(e, p, d, pp));
  if (!out.empty()) return out;
  for (const auto& k : p.asserted_order) {
    if (!p.defines(k)) continue;
    std::vector<Term> vars;
    for (int i = 0; i < k.arity; ++i) vars.push_back(Term::fresh("A" + std::to_string(i + 1)));
    EntryDecl e{k.arity ? Term::compound(k.name, vars) : Term::atom(k.name), std::nullopt, 0};
    if (!p.assertions.at(k).empty()) e.line = p.assertions.at(k).front().line;
    out.push_back(entry_query(e, p, d, pp));
    out.back().assumed = true;
  }
  if (!out.empty()) return out;
  for (const auto& k : p.defined_predicates()) {
    if (p.props.count(k) || p.regtypes.count(k)) continue;
    out.push_back({k, all_any(k.arity), "entry", 0});
  }
  return out;
}

std::set<std::size_t> output_positions(const Program& prog, int arity) {
  std::set<std::size_t> out, blocked;
  for (const auto& pp : prog.pred_props) {
    if (pp.arity != arity) continue;
    for (const auto& m : pp.members) {
      auto pre = m.pre.vars();
      auto post = m.post.vars();
      for (std::size_t i = 0; i < m.params.size(); ++i) {
        if (!m.params[i].is_var()) continue;
        VarId v = m.params[i].var_id();
        if (pre.count(v)) blocked.insert(i);
        else if (post.count(v)) out.insert(i);
      }
    }
  }
  for (auto i : blocked) out.erase(i);
  return out;
}

std::optional<PropLit> TypeNamer::literal(const RegType& t, const Term& v, const Program& prog, const RegTypeDomain& d) {
  if (t.is_any()) return std::nullopt;
  for (const auto& k : prog.regtypes)
    if (k.arity == 1)
      if (auto u = d.definitions().lookup(k.name); u && equivalent(*u, t)) return PropLit{k.name, {v}, nullptr};
  for (const char* b : {"int", "nat", "atm"})
    if (auto u = d.definitions().lookup(b); u && equivalent(*u, t)) return PropLit{b, {v}, nullptr};
  for (std::size_t i = 0; i < fresh.size(); ++i)
    if (equivalent(fresh[i], t)) return PropLit{fresh[i].name(), {v}, std::make_shared<RegType>(fresh[i])};
  RegType named = t.named("rt" + std::to_string(next++));
  fresh.push_back(named);
  return PropLit{named.name(), {v}, std::make_shared<RegType>(named)};
}

PredAssertion infer_pred_assertion(const PredKey& p, const Program& prog, const RegTypeDomain& d,
                                   const AnalysisOptions& o, TypeNamer& namer) {
  const auto outs = output_positions(prog, p.arity);
  std::optional<Pattern> shapes;
  int line = 0;
  for (const Rule* r : prog.rules_of(p)) {
    if (!line) line = r->line;
    Store st;
    for (const auto& l : r->body)
      if (l.kind == Literal::Kind::Eq && l.from_head) st.unify(l.args[0], l.args[1]);
    Pattern shape;
    for (const auto& h : r->head) shape.push_back(RegType::of_term(st.resolve(h)));
    shapes = shapes ? unite(*shapes, shape) : shape;
  }
  Pattern pre = shapes ? widen(*shapes) : all_any(p.arity);
  for (auto i : outs) pre[i] = RegType::any();

  PredAssertion a;
  a.pred = p.name;
  a.line = line;
  a.inferred = true;
  for (int i = 0; i < p.arity; ++i) {
    std::string n(1, static_cast<char>('A' + i % 26));
    if (i >= 26) n += std::to_string(i / 26);
    a.head.push_back(Term::fresh(n));
  }
  std::vector<PropLit> pre_lits, post_lits;
  for (std::size_t i = 0; i < pre.size(); ++i)
    if (auto l = namer.literal(pre[i], a.head[i], prog, d)) pre_lits.push_back(*l);
  a.pre.disjuncts = {pre_lits};

  Analyzer an(prog, d, o);
  auto succ = an.success(p, pre);
  if (!succ) {
    a.post.disjuncts.clear();
    return a;
  }
  for (std::size_t i = 0; i < succ->size(); ++i) {
    if (!outs.empty() && !outs.count(i)) continue;
    if (auto l = namer.literal((*succ)[i], a.head[i], prog, d)) post_lits.push_back(*l);
  }
  a.post.disjuncts = {post_lits};
  return a;
}

}  // namespace hiord
