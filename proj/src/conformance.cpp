#include "hiord/conformance.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "hiord/builtins.hpp"

namespace hiord {

std::string to_string(TriState t) {
  switch (t) {
    case TriState::Yes: return "yes";
    case TriState::No: return "no";
    case TriState::Maybe: return "maybe";
  }
  return "?";
}

std::string PropertyVerdict::basis() const {
  std::string s;
  for (const auto& c : conditions) {
    if (!s.empty()) s += "; ";
    s += c.condition + " " + to_string(c.verdict) + ": " + c.basis;
  }
  if (!witness.empty() || verdict == TriState::No) {
    std::string w = quote_atom(pred.name);
    if (!witness.empty()) {
      w += "(";
      for (std::size_t i = 0; i < witness.size(); ++i) w += (i ? "," : "") + witness[i].to_string(true);
      w += ")";
    }
    s += "; witness " + w;
  }
  for (const auto& c : culprits) s += "; clause " + c;
  return s;
}

namespace {

std::vector<std::string> var_names(const std::vector<Term>& head) {
  std::vector<std::string> out;
  for (const auto& h : head) out.push_back(h.name().empty() ? "_" : h.name());
  return out;
}

}  // namespace

TriState conf_calls(const Domain& d, const PPTables& pp, const AssertionCondition* p_calls,
                    const AssertionCondition& anon_calls, std::string* basis) {
  const PropFormula pre = p_calls ? p_calls->pre : PropFormula::truth();
  const std::vector<Term> head = p_calls ? p_calls->head : anon_calls.head;
  AbsVal sup_pre = triv_sup(d, pre, head, pp);
  AbsVal sub_pre = triv_sub(d, pre, head, pp);
  AbsVal sub_a = triv_sub(d, anon_calls.pre, anon_calls.head, pp);
  AbsVal sup_a = triv_sup(d, anon_calls.pre, anon_calls.head, pp);
  const auto names = var_names(anon_calls.head);
  const bool le = d.leq(sup_pre, sub_a);
  const bool ge = d.leq(sup_a, sub_pre);
  TriState out = TriState::Maybe;
  if (le && ge) out = TriState::Yes;
  else if (d.meet(sup_pre, sup_a).bottom) out = TriState::No;
  if (basis) {
    if (out == TriState::No)
      *basis = "sup(Pre) " + d.str(sup_pre, names) + " meet sup(Pre_a) " + d.str(sup_a, names) + " = bot";
    else
      *basis = "sup(Pre) " + d.str(sup_pre, names) + (le ? " <= " : " </= ") + "sub(Pre_a) " + d.str(sub_a, names) +
               ", sub(Pre) " + d.str(sub_pre, names) + (ge ? " >= " : " >/= ") + "sup(Pre_a) " + d.str(sup_a, names);
  }
  return out;
}

TriState conf_success(const Domain& d, const PPTables& pp, const std::vector<const AssertionCondition*>& p_success,
                      const AssertionCondition& anon_success, std::string* basis) {
  const auto names = var_names(anon_success.head);
  AbsVal sub_post_a = triv_sub(d, anon_success.post, anon_success.head, pp);
  AbsVal sup_pre_a = triv_sup(d, anon_success.pre, anon_success.head, pp);
  AbsVal sub_pre_a = triv_sub(d, anon_success.pre, anon_success.head, pp);
  AbsVal sup_post_a = triv_sup(d, anon_success.post, anon_success.head, pp);
  if (!sub_post_a.bottom && sub_post_a.env.empty()) {
    if (basis) *basis = "Post_a is true";
    return TriState::Yes;
  }
  struct Row {
    AbsVal sub_pre, sup_pre, sup_post;
  };
  std::vector<Row> rows;
  for (const auto* c : p_success)
    rows.push_back({triv_sub(d, c->pre, c->head, pp), triv_sup(d, c->pre, c->head, pp), triv_sup(d, c->post, c->head, pp)});
  const std::size_t m = std::min<std::size_t>(rows.size(), 12);
  for (unsigned long mask = 1; mask < (1ul << m); ++mask) {
    AbsVal pre = AbsVal::bot(), post = AbsVal::bot();
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1ul << i)) {
        pre = d.join(pre, rows[i].sub_pre);
        post = d.join(post, rows[i].sup_post);
      }
    if (d.leq(sup_pre_a, pre) && d.leq(post, sub_post_a)) {
      if (basis)
        *basis = "sub(Pre) " + d.str(pre, names) + " >= sup(Pre_a) " + d.str(sup_pre_a, names) + ", sup(Post) " +
                 d.str(post, names) + " <= sub(Post_a) " + d.str(sub_post_a, names);
      return TriState::Yes;
    }
  }
  for (const auto& r : rows)
    if (d.leq(r.sup_pre, sub_pre_a) && !r.sup_post.bottom && d.meet(r.sup_post, sup_post_a).bottom) {
      if (basis)
        *basis = "sup(Pre) " + d.str(r.sup_pre, names) + " <= sub(Pre_a) " + d.str(sub_pre_a, names) + ", sup(Post) " +
                 d.str(r.sup_post, names) + " meet sup(Post_a) " + d.str(sup_post_a, names) + " = bot";
      return TriState::No;
    }
  if (basis) {
    AbsVal post = AbsVal::bot();
    for (const auto& r : rows) post = d.join(post, r.sup_post);
    *basis = rows.empty() ? "no success conditions"
                          : "sup(Post) " + d.str(post, names) + " vs sub(Post_a) " + d.str(sub_post_a, names);
  }
  return TriState::Maybe;
}

std::vector<PredKey> candidate_predicates(const Program& prog, int arity) {
  std::vector<PredKey> out;
  auto consider = [&](const PredKey& k) {
    if (k.arity != arity || prog.props.count(k) || prog.regtypes.count(k) || is_builtin(k)) return;
    if (prog.find_pred_prop(k.name)) return;
    if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  };
  for (const auto& r : prog.rules) consider(r.key());
  for (const auto& k : prog.asserted_order) consider(k);
  return out;
}

std::vector<Term> witness_universe(const Program& prog, const Domain& d, const std::vector<AbsVal>& hints, int depth) {
  std::vector<Term> out = {Term::integer(-1), Term::integer(0), Term::integer(1), Term::integer(2), Term::atom("a")};
  std::function<void(const Term&)> collect = [&](const Term& t) {
    if (t.is_int() || t.is_atom()) out.push_back(t);
    else
      for (const auto& a : t.args()) collect(a);
  };
  for (const auto& r : prog.rules)
    for (const auto& l : r.body) {
      for (const auto& a : l.args) collect(a);
    }
  for (const auto& k : prog.defined_predicates()) out.push_back(Term::atom(k.name));
  for (const auto& h : hints)
    for (const auto& [k, e] : h.env)
      if (const auto* t = std::get_if<RegType>(&e))
        for (const auto& x : t->enumerate(depth, 6)) out.push_back(x);
  (void)d;
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.to_string() < b.to_string();
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.size() > 48) out.resize(48);
  return out;
}

namespace {

/// Candidate argument tuples for the witness search. Each position prefers
/// values admitted by p's own calls pre-condition, so that the query passes
/// p's checks and can only fail on the property's.
std::vector<std::vector<Term>> witness_queries(const Program& prog, const Domain& d, const AbsVal& sub_p,
                                               const AbsVal& sup_a, int arity, const ConformanceContext& ctx,
                                               const EngineOptions& eo) {
  const std::size_t per_position = 12;
  Engine plain(prog, nullptr, eo);
  auto universe = witness_universe(prog, d, {}, ctx.witness_depth);
  std::vector<std::vector<Term>> lists;
  for (int i = 0; i < arity; ++i) {
    std::vector<Term> first, rest;
    const long long key = i;
    auto typed = [&](const AbsVal& a) {
      if (a.bottom || !a.env.count(key)) return;
      if (const auto* t = std::get_if<RegType>(&a.env.at(key)))
        for (const auto& x : t->enumerate(ctx.witness_depth, 6)) first.push_back(x);
    };
    typed(sub_p);
    typed(sup_a);
    const bool constrained = !sub_p.bottom && sub_p.env.count(key);
    for (const auto& v : universe) {
      if (constrained && d.contains(sub_p.env.at(key), v, plain)) first.push_back(v);
      else rest.push_back(v);
    }
    std::vector<Term> all = first;
    all.push_back(Term::fresh("_"));
    all.insert(all.end(), rest.begin(), rest.end());
    std::vector<Term> uniq;
    for (const auto& t : all) {
      if (uniq.size() >= per_position) break;
      if (std::none_of(uniq.begin(), uniq.end(), [&](const Term& u) { return u == t; })) uniq.push_back(t);
    }
    lists.push_back(std::move(uniq));
  }
  // index tuples ordered by the sum of their indices
  std::vector<std::vector<std::size_t>> idx{{}};
  for (const auto& l : lists) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& t : idx)
      for (std::size_t j = 0; j < l.size(); ++j) {
        auto x = t;
        x.push_back(j);
        next.push_back(std::move(x));
      }
    idx = std::move(next);
  }
  auto sum = [](const std::vector<std::size_t>& v) { return std::accumulate(v.begin(), v.end(), std::size_t{0}); };
  std::stable_sort(idx.begin(), idx.end(), [&](const auto& a, const auto& b) { return sum(a) < sum(b); });
  if (idx.size() > ctx.max_witness_queries) idx.resize(ctx.max_witness_queries);
  std::vector<std::vector<Term>> out;
  for (const auto& t : idx) {
    std::vector<Term> q;
    for (std::size_t i = 0; i < t.size(); ++i) q.push_back(lists[i][t[i]]);
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace

PropertyVerdict conf_property(const PredKey& p, const PredicateProperty& pp, const ConformanceContext& ctx) {
  if (p.arity != pp.arity)
    throw std::invalid_argument(p.str() + " cannot conform to " + pp.name + ": arity differs");
  const Domain& d = *ctx.domain;
  const AssertionSet& conds = *ctx.conditions;
  PropertyVerdict out;
  out.pred = p;
  out.property = pp.name;

  int label = 0;
  auto anon = assertion_conditions(instantiate_property(pp, p.name, p.arity), label);
  const AssertionCondition* p_calls = conds.calls(p);
  auto p_success = conds.successes(p);
  out.inferred = p_calls && p_calls->inferred;

  bool yes = true, no = false;
  ConditionVerdict cv{"calls", TriState::Maybe, {}};
  cv.verdict = conf_calls(d, ctx.pp, p_calls, anon.front(), &cv.basis);
  out.conditions.push_back(cv);
  for (std::size_t i = 1; i < anon.size(); ++i) {
    ConditionVerdict sv{"success #" + std::to_string(i), TriState::Maybe, {}};
    sv.verdict = conf_success(d, ctx.pp, p_success, anon[i], &sv.basis);
    out.conditions.push_back(sv);
  }
  for (const auto& c : out.conditions) {
    yes = yes && c.verdict == TriState::Yes;
    no = no || c.verdict == TriState::No;
  }

  if (ctx.clause_successes)
    for (std::size_t i = 1; i < anon.size(); ++i) {
      if (out.conditions[i].verdict == TriState::Yes) continue;
      AbsVal sub_post = triv_sub(d, anon[i].post, anon[i].head, ctx.pp);
      for (const auto& [rule, succ] : ctx.clause_successes(p))
        if (!succ.bottom && !d.leq(succ, sub_post))
          out.culprits.push_back("line " + std::to_string(rule->line) + ": " + rule->to_string());
    }

  if (yes) {
    out.verdict = TriState::Yes;
  } else if (no) {
    AssertionSet a_prime = strengthened_conditions(conds, p, pp);
    EngineOptions eo = ctx.engine;
    eo.pp_members = ctx.pp.plus;
    out.verdict = TriState::Maybe;
    AbsVal sub_p = p_calls ? triv_sub(d, p_calls->pre, p_calls->head, ctx.pp) : AbsVal::top();
    AbsVal sup_a = triv_sup(d, anon.front().pre, anon.front().head, ctx.pp);
    for (const auto& q : witness_queries(*ctx.program, d, sub_p, sup_a, p.arity, ctx, eo)) {
      int l = 0;
      if (redundance_query(*ctx.program, conds, a_prime, p, q, eo, &l) == QueryVerdict::Violation) {
        out.verdict = TriState::No;
        out.witness = q;
        out.witness_label = l;
        break;
      }
    }
  }
  return out;
}

Wrapper make_wrapper(const Program& prog, const PredKey& p, const PredicateProperty& pp, const std::string& name) {
  if (p.arity != pp.arity)
    throw std::invalid_argument("cannot wrap " + p.str() + " with " + pp.name + ": arity differs");
  const PredKey w{name, p.arity};
  if (prog.defines(w) || prog.assertions.count(w) || prog.find_pred_prop(name) || is_builtin(w))
    throw std::invalid_argument("wrapper name " + w.str() + " is already in use");
  Wrapper out;
  out.rule.pred = name;
  std::vector<Term> vars;
  for (int i = 0; i < p.arity; ++i) vars.push_back(Term::fresh("V" + std::to_string(i + 1)));
  out.rule.head = vars;
  out.rule.body.push_back(Literal::atom(p.name, vars));
  int label = 0;
  auto anon = assertion_conditions(instantiate_property(pp, name, p.arity), label);
  std::map<VarId, Term> onto;
  for (std::size_t i = 0; i < vars.size(); ++i) onto.emplace(anon.front().head[i].var_id(), vars[i]);
  out.assertion.pred = name;
  out.assertion.head = vars;
  out.assertion.pre = substitute(anon.front().pre, onto);
  return out;
}

void apply_wrappers(Program& prog) {
  for (const auto& w : prog.wraps) {
    const PredicateProperty* pp = prog.find_pred_prop(w.property);
    if (!pp) throw std::invalid_argument("wrap directive names unknown predicate property '" + w.property + "'");
    Wrapper wr = make_wrapper(prog, w.target, *pp, w.name);
    wr.rule.line = w.line;
    wr.assertion.line = w.line;
    prog.rules.push_back(wr.rule);
    const PredKey k = wr.assertion.key();
    prog.asserted_order.push_back(k);
    prog.assertions[k].push_back(wr.assertion);
  }
  prog.wraps.clear();
}

PiSets regtype_repr(const std::vector<PropertyVerdict>& verdicts) {
  PiSets s;
  for (const auto& v : verdicts) {
    if (v.verdict == TriState::Yes) s.minus.insert(v.pred.name);
    if (v.verdict != TriState::No) s.plus.insert(v.pred.name);
  }
  return s;
}

std::vector<Rule> pi_rules(const std::string& property, const PiSets& sets) {
  std::vector<Rule> out;
  auto fact = [&](const std::string& pred, const std::string& member) {
    Rule r;
    r.pred = pred;
    Term v = Term::fresh("X");
    r.head = {v};
    r.body.push_back(Literal::eq(v, Term::atom(member), true));
    out.push_back(std::move(r));
  };
  for (const auto& m : sets.minus) fact(property + "-", m);
  for (const auto& m : sets.plus) fact(property + "+", m);
  return out;
}

}  // namespace hiord
