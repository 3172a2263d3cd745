#pragma once

#include <map>
#include <vector>

#include "hiord/syntax.hpp"

namespace hiord {

/// A labeled calls or success condition. For calls conditions `post` is
/// unused and `pre` is the disjunction of all pre-conditions.
struct AssertionCondition {
  enum class Kind { Calls, Success };
  Kind kind = Kind::Calls;
  int label = 0;
  std::string pred;
  std::vector<Term> head;
  PropFormula pre;
  PropFormula post;
  int line = 0;
  bool inferred = false;

  PredKey key() const { return {pred, static_cast<int>(head.size())}; }
  std::string to_string() const;
};

/// Calls condition followed by one success condition per assertion.
/// Labels are taken from `next_label`, which is advanced.
std::vector<AssertionCondition> assertion_conditions(const std::vector<PredAssertion>& asserts, int& next_label);

/// The conditions of a whole program, indexed by predicate.
class AssertionSet {
 public:
  AssertionSet() = default;
  explicit AssertionSet(std::vector<AssertionCondition> conds);

  static AssertionSet from_program(const Program& p, int first_label = 1);

  void add(const AssertionCondition& c);
  void remove_label(int label);
  const std::vector<AssertionCondition>& all() const { return conds_; }
  const AssertionCondition* calls(const PredKey& k) const;
  std::vector<const AssertionCondition*> successes(const PredKey& k) const;
  const AssertionCondition* by_label(int label) const;
  int max_label() const;
  bool empty() const { return conds_.empty(); }

 private:
  std::vector<AssertionCondition> conds_;
};

/// `a[p]`: replace the `_` placeholder with `p`.
PredAssertion instantiate_anonymous(const AnonAssertion& a, const std::string& p, int arity);

/// `Pi[p]`, order preserved.
std::vector<PredAssertion> instantiate_property(const PredicateProperty& pp, const std::string& p, int arity);

/// Instantiate a condition formula at a call: head variables become `args`,
/// every other variable is renamed apart.
PropFormula instantiate_formula(const PropFormula& f, const std::vector<Term>& head, const std::vector<Term>& args);

}  // namespace hiord
