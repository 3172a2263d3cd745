#include "hiord/oracle.hpp"

#include <algorithm>

namespace hiord {

AssertionSet strengthened_conditions(const AssertionSet& a, const PredKey& p, const PredicateProperty& pp) {
  int label = a.max_label() + 1;
  std::vector<Term> head;
  PropFormula pre;
  std::vector<AssertionCondition> conds;
  const AssertionCondition* c = a.calls(p);
  if (c) {
    head = c->head;
    pre = c->pre;
  } else {
    for (int i = 0; i < p.arity; ++i) head.push_back(Term::fresh("A" + std::to_string(i + 1)));
  }
  for (const auto& cond : a.all())
    if (!(c && cond.label == c->label)) conds.push_back(cond);

  auto inst = instantiate_property(pp, p.name, p.arity);
  int pi_label = 0;
  auto pi_conds = assertion_conditions(inst, pi_label);
  const AssertionCondition& pi_calls = pi_conds.front();
  std::map<VarId, Term> onto;
  for (std::size_t i = 0; i < head.size(); ++i) onto.emplace(pi_calls.head[i].var_id(), head[i]);

  AssertionCondition strengthened;
  strengthened.kind = AssertionCondition::Kind::Calls;
  strengthened.label = label++;
  strengthened.pred = p.name;
  strengthened.head = head;
  strengthened.pre = pre.conjoin(substitute(pi_calls.pre, onto));
  strengthened.line = c ? c->line : 0;
  conds.push_back(strengthened);
  for (std::size_t i = 1; i < pi_conds.size(); ++i) {
    AssertionCondition s = pi_conds[i];
    s.label = label++;
    conds.push_back(std::move(s));
  }
  return AssertionSet(std::move(conds));
}

namespace {

/// Follow `path` under A, reducing check literals on the way. True when A
/// also errs along the aligned derivation.
bool a_side_errs(const Engine& engine, const std::vector<Literal>& goals, const std::vector<int>& path,
                 bool err_at_check) {
  ExtState s{push_goals(goals, nullptr), Store{}, 0, false};
  std::size_t idx = 0;
  for (;;) {
    if (s.err) return true;
    if (!s.goal) return false;
    if (s.goal->lit.kind == Literal::Kind::Check) {
      auto succ = engine.reduce(s);
      if (succ.empty()) return false;
      s = std::move(succ.front().state);
      continue;
    }
    if (idx == path.size()) break;
    auto succ = engine.reduce(s);
    const Successor* next = nullptr;
    for (const auto& x : succ) {
      if (x.state.err) return true;
      if (x.choice == path[idx]) next = &x;
    }
    if (!next) return false;
    s = next->state;
    ++idx;
  }
  if (err_at_check) return false;
  for (const auto& x : engine.reduce(s))
    if (x.state.err) return true;
  return false;
}

std::size_t arg_size(const Term& t) { return t.size(); }

}  // namespace

QueryVerdict redundance_query(const Program& prog, const AssertionSet& a, const AssertionSet& a_prime,
                              const PredKey& p, const std::vector<Term>& args, const EngineOptions& opts,
                              int* label) {
  Engine with_a(prog, &a, opts);
  Engine with_a_prime(prog, &a_prime, opts);
  std::vector<Literal> goals{Literal::atom(p.name, args)};
  QueryVerdict verdict = QueryVerdict::Clean;
  auto stats = with_a_prime.derive(goals, Store{}, [&](const Leaf& leaf) {
    if (leaf.kind != Leaf::Kind::Error) return false;
    if (a_side_errs(with_a, goals, leaf.path, leaf.state.err_at_check)) return false;
    verdict = QueryVerdict::Violation;
    if (label) *label = leaf.state.err;
    return true;
  });
  if (verdict == QueryVerdict::Clean && (stats.exhausted || with_a_prime.unknown_checks() || with_a.unknown_checks()))
    return QueryVerdict::Unknown;
  return verdict;
}

std::vector<std::vector<Term>> enumerate_queries(const std::vector<Term>& universe, std::size_t arity,
                                                 bool include_variable, std::size_t cap) {
  std::vector<Term> cands = universe;
  std::sort(cands.begin(), cands.end(), [](const Term& x, const Term& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x.to_string() < y.to_string();
  });
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  const Term placeholder = Term::fresh("_");
  if (include_variable) cands.insert(cands.begin(), placeholder);
  std::vector<std::vector<Term>> out;
  if (arity == 0) return {{}};
  if (cands.empty()) return out;
  std::vector<std::size_t> idx(arity, 0);
  for (;;) {
    std::vector<Term> t;
    for (std::size_t k = 0; k < arity; ++k) t.push_back(cands[idx[k]]);
    out.push_back(std::move(t));
    std::size_t k = 0;
    while (k < arity && ++idx[k] == cands.size()) idx[k++] = 0;
    if (k == arity) break;
    if (out.size() > 200000) break;
  }
  auto key = [](const std::vector<Term>& t) {
    std::size_t s = 0;
    std::string text;
    for (const auto& x : t) {
      s += arg_size(x);
      text += x.is_var() ? "_" : x.to_string();
      text += ',';
    }
    return std::make_pair(s, text);
  };
  std::stable_sort(out.begin(), out.end(), [&](const auto& x, const auto& y) { return key(x) < key(y); });
  if (out.size() > cap) out.resize(cap);
  for (auto& t : out)
    for (auto& x : t)
      if (x.is_var()) x = Term::fresh("_");
  return out;
}

RedundanceResult redundance_oracle(const Program& prog, const AssertionSet& a, const PredKey& p,
                                   const PredicateProperty& pp, const RedundanceOptions& opts) {
  RedundanceResult res;
  AssertionSet a_prime = strengthened_conditions(a, p, pp);
  bool unknown = false;
  auto queries = enumerate_queries(opts.universe, p.arity, opts.include_variable, opts.max_queries);
  for (const auto& q : queries) {
    ++res.queries;
    int label = 0;
    QueryVerdict v = redundance_query(prog, a, a_prime, p, q, opts.engine, &label);
    if (v == QueryVerdict::Violation) {
      res.kind = RedundanceResult::Kind::NotRedundant;
      res.witness = q;
      res.label = label;
      return res;
    }
    if (v == QueryVerdict::Unknown) unknown = true;
  }
  res.kind = unknown ? RedundanceResult::Kind::Unknown : RedundanceResult::Kind::Redundant;
  return res;
}

}  // namespace hiord
