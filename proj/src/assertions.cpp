#include "hiord/assertions.hpp"

#include <algorithm>
#include <stdexcept>

namespace hiord {

namespace {

std::string head_string(const std::string& pred, const std::vector<Term>& head) {
  std::string s = quote_atom(pred);
  if (head.empty()) return s;
  s += "(";
  for (std::size_t i = 0; i < head.size(); ++i) s += (i ? "," : "") + head[i].to_string();
  return s + ")";
}

/// Rename `from` head variables onto `to` inside a formula.
PropFormula rename_head(const PropFormula& f, const std::vector<Term>& from, const std::vector<Term>& to) {
  std::map<VarId, Term> s;
  for (std::size_t i = 0; i < from.size(); ++i) s.emplace(from[i].var_id(), to[i]);
  return substitute(f, s);
}

}  // namespace

std::string AssertionCondition::to_string() const {
  std::string h = head_string(pred, head);
  if (kind == Kind::Calls) return "calls(" + h + ", " + pre.to_string() + ")";
  return "success(" + h + ", " + pre.to_string() + ", " + post.to_string() + ")";
}

std::vector<AssertionCondition> assertion_conditions(const std::vector<PredAssertion>& asserts, int& next_label) {
  if (asserts.empty()) throw std::invalid_argument("assertion_conditions: no assertions");
  const PredKey k = asserts.front().key();
  for (const auto& a : asserts)
    if (a.key() != k) throw std::invalid_argument("assertion_conditions: mixed predicates " + k.str() + " and " + a.key().str());
  std::vector<AssertionCondition> out;
  AssertionCondition calls;
  calls.kind = AssertionCondition::Kind::Calls;
  calls.label = next_label++;
  calls.pred = k.name;
  calls.head = asserts.front().head;
  calls.line = asserts.front().line;
  calls.pre.disjuncts.clear();
  bool inferred = true;
  for (const auto& a : asserts) {
    PropFormula pre = rename_head(a.pre, a.head, calls.head);
    calls.pre = calls.pre.disjoin(pre);
    inferred = inferred && a.inferred;
  }
  calls.inferred = inferred;
  out.push_back(calls);
  for (const auto& a : asserts) {
    AssertionCondition s;
    s.kind = AssertionCondition::Kind::Success;
    s.label = next_label++;
    s.pred = a.pred;
    s.head = a.head;
    s.pre = a.pre;
    s.post = a.post;
    s.line = a.line;
    s.inferred = a.inferred;
    out.push_back(std::move(s));
  }
  return out;
}

AssertionSet::AssertionSet(std::vector<AssertionCondition> conds) : conds_(std::move(conds)) {}

AssertionSet AssertionSet::from_program(const Program& p, int first_label) {
  int label = first_label;
  std::vector<AssertionCondition> all;
  for (const auto& k : p.asserted_order) {
    auto cs = assertion_conditions(p.assertions.at(k), label);
    all.insert(all.end(), cs.begin(), cs.end());
  }
  return AssertionSet(std::move(all));
}

void AssertionSet::add(const AssertionCondition& c) { conds_.push_back(c); }

void AssertionSet::remove_label(int label) {
  conds_.erase(std::remove_if(conds_.begin(), conds_.end(), [&](const auto& c) { return c.label == label; }),
               conds_.end());
}

const AssertionCondition* AssertionSet::calls(const PredKey& k) const {
  for (const auto& c : conds_)
    if (c.kind == AssertionCondition::Kind::Calls && c.key() == k) return &c;
  return nullptr;
}

std::vector<const AssertionCondition*> AssertionSet::successes(const PredKey& k) const {
  std::vector<const AssertionCondition*> out;
  for (const auto& c : conds_)
    if (c.kind == AssertionCondition::Kind::Success && c.key() == k) out.push_back(&c);
  return out;
}

const AssertionCondition* AssertionSet::by_label(int label) const {
  for (const auto& c : conds_)
    if (c.label == label) return &c;
  return nullptr;
}

int AssertionSet::max_label() const {
  int m = 0;
  for (const auto& c : conds_) m = std::max(m, c.label);
  return m;
}

PredAssertion instantiate_anonymous(const AnonAssertion& a, const std::string& p, int arity) {
  if (static_cast<int>(a.params.size()) != arity)
    throw std::invalid_argument("cannot instantiate a " + std::to_string(a.params.size()) +
                                "-ary anonymous assertion with " + quote_atom(p) + "/" + std::to_string(arity));
  PredAssertion out;
  out.pred = p;
  out.head = a.params;
  out.pre = a.pre;
  out.post = a.post;
  out.line = a.line;
  return out;
}

std::vector<PredAssertion> instantiate_property(const PredicateProperty& pp, const std::string& p, int arity) {
  std::vector<PredAssertion> out;
  for (const auto& m : pp.members) out.push_back(instantiate_anonymous(m, p, arity));
  return out;
}

PropFormula instantiate_formula(const PropFormula& f, const std::vector<Term>& head, const std::vector<Term>& args) {
  std::map<VarId, Term> s;
  for (std::size_t i = 0; i < head.size(); ++i) s.emplace(head[i].var_id(), args[i]);
  for (VarId v : f.vars())
    if (!s.count(v)) s.emplace(v, Term::fresh());
  return substitute(f, s);
}

}  // namespace hiord
