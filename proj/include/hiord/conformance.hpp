#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hiord/assertions.hpp"
#include "hiord/domain.hpp"
#include "hiord/engine.hpp"
#include "hiord/oracle.hpp"

namespace hiord {

enum class TriState { Yes, No, Maybe };
std::string to_string(TriState t);

/// Everything a conformance check reads.
struct ConformanceContext {
  const Program* program = nullptr;
  const Domain* domain = nullptr;
  const AssertionSet* conditions = nullptr;  // user and inferred conditions of every predicate
  PPTables pp;                               // tables from the previous fixpoint iteration
  EngineOptions engine;                      // for the witness search
  std::size_t max_witness_queries = 600;
  int witness_depth = 3;                     // term height for universe enumeration
  /// Success abstraction of each clause of a predicate, keyed by argument
  /// position; used to name the clauses that break a success condition.
  std::function<std::vector<std::pair<const Rule*, AbsVal>>(const PredKey&)> clause_successes;
};

struct ConditionVerdict {
  std::string condition;  // "calls" or "success #k"
  TriState verdict = TriState::Maybe;
  std::string basis;      // the comparisons that decided it
};

struct PropertyVerdict {
  PredKey pred;
  std::string property;
  TriState verdict = TriState::Maybe;
  std::vector<ConditionVerdict> conditions;
  bool inferred = false;           // p's conditions came from analysis
  std::vector<Term> witness;       // set for No
  int witness_label = 0;
  std::vector<std::string> culprits;  // clauses breaking a success condition
  std::string basis() const;
};

/// Def. conf-calls. `p_calls` may be null (pre-condition true).
TriState conf_calls(const Domain& d, const PPTables& pp, const AssertionCondition* p_calls,
                    const AssertionCondition& anon_calls, std::string* basis = nullptr);

/// Def. conf-success without the success-context conjunct of the No case:
/// returns No when the abstract conditions for No hold.
TriState conf_success(const Domain& d, const PPTables& pp, const std::vector<const AssertionCondition*>& p_success,
                      const AssertionCondition& anon_success, std::string* basis = nullptr);

/// Def. abs-conf. No is reported only with a concrete query on which Pi's
/// checks raise an error that p's own conditions do not.
PropertyVerdict conf_property(const PredKey& p, const PredicateProperty& pp, const ConformanceContext& ctx);

/// Predicates that may be passed for a property of the given arity.
std::vector<PredKey> candidate_predicates(const Program& prog, int arity);

/// Ground arguments for witness queries.
std::vector<Term> witness_universe(const Program& prog, const Domain& d, const std::vector<AbsVal>& hints, int depth);

struct Wrapper {
  Rule rule;
  PredAssertion assertion;
};

/// `name(V) :- p(V).` with `:- pred name(V) : Pre_a.` Throws on a name collision.
Wrapper make_wrapper(const Program& prog, const PredKey& p, const PredicateProperty& pp, const std::string& name);

/// Add the wrappers requested by `:- wrap` directives, consuming them.
void apply_wrappers(Program& prog);

/// Strong and weak members of one property.
struct PiSets {
  std::set<std::string> minus, plus;
};
PiSets regtype_repr(const std::vector<PropertyVerdict>& verdicts);

/// Unary facts `'Pi-'(p).` and `'Pi+'(p).` for reporting.
std::vector<Rule> pi_rules(const std::string& property, const PiSets& sets);

}  // namespace hiord
