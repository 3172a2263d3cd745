#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hiord/domain.hpp"
#include "hiord/regtype.hpp"
#include "hiord/syntax.hpp"

namespace hiord {

/// One regular type per argument position.
using Pattern = std::vector<RegType>;

std::string pattern_string(const Pattern& p);
bool pattern_leq(const Pattern& a, const Pattern& b);

/// `(L, lambda)`: a predicate and the types of its arguments at call time.
struct AbstractQuery {
  PredKey pred;
  Pattern call;
  std::string where = "entry";
  int line = 0;
  bool assumed = false;  // default entry built from the predicate's own calls pre-condition
};

/// Call/success pair for one call-pattern variant. `success` is empty when
/// no success is reachable.
struct Triple {
  PredKey pred;
  Pattern call;
  std::optional<Pattern> success;
  std::vector<std::optional<Pattern>> clause_success;  // per clause, in program order
  bool incomplete = false;
};

struct CallSite {
  PredKey pred;
  Pattern call;
  std::string where;  // "entry" or the calling predicate
  int line = 0;
  bool assumed = false;
};

struct HigherOrderSite {
  std::string where;
  int line = 0;
  std::string callee;           // the literal, as written
  int arity = 0;                // of the predicates it may call
  std::set<std::string> targets;  // resolved predicate names
  bool unknown = false;
};

struct AnalysisOptions {
  PPTables pp;
  std::size_t max_variants = 12;  // per predicate; beyond that calls use the all-term pattern
  int max_rounds = 200;
};

/// Goal-dependent analysis over regular types with tabulation. Each table
/// entry is re-analyzed round-robin until no success pattern grows.
class Analyzer {
 public:
  Analyzer(const Program& p, const RegTypeDomain& d, AnalysisOptions o = {});

  void add_query(const AbstractQuery& q);
  void run();

  /// Success pattern for a call, analyzing it first when it is new.
  std::optional<Pattern> success(const PredKey& pred, const Pattern& call);

  const std::deque<Triple>& triples() const { return table_; }
  const std::vector<CallSite>& call_sites() const { return sites_; }
  const std::vector<HigherOrderSite>& higher_order_sites() const { return ho_sites_; }
  /// Per clause of `pred`, the join of its success patterns over all variants.
  std::vector<std::pair<const Rule*, std::optional<Pattern>>> clause_successes(const PredKey& pred) const;
  bool incomplete() const { return incomplete_; }
  /// One line per triple: `pred/n call(..) success(..)`.
  std::string dump() const;

  /// The predicate names a higher-order callee of type `t` may denote, or
  /// nullopt when they cannot be determined.
  std::optional<std::set<std::string>> resolve_higher_order(const RegType& t, int arity) const;

 private:
  struct State;
  std::size_t lookup(const PredKey& pred, Pattern call);
  void analyze(std::size_t entry, bool record);
  bool body(State& s, const Rule& r, bool record);
  bool call_pred(State& s, const PredKey& k, const std::vector<Term>& args, const Rule& r, int line, bool record);
  bool has_clauses(const PredKey& k) const;

  const Program& prog_;
  const RegTypeDomain& dom_;
  AnalysisOptions opts_;
  std::map<PredKey, std::vector<const Rule*>> rules_;
  std::deque<Triple> table_;
  std::map<PredKey, std::vector<std::size_t>> variants_;
  std::vector<AbstractQuery> queries_;
  std::vector<CallSite> sites_;
  std::vector<HigherOrderSite> ho_sites_;
  bool changed_ = false;
  bool incomplete_ = false;
};

/// Entry queries: `:- entry` declarations, else the calls conditions of the
/// asserted predicates, else every defined predicate with all-term calls.
/// A pre-condition constrains only the entry arguments that are variables.
std::vector<AbstractQuery> entry_queries(const Program& p, const RegTypeDomain& d, const PPTables& pp);
AbstractQuery entry_query(const EntryDecl& e, const Program& p, const RegTypeDomain& d, const PPTables& pp);

/// Argument positions of `p` treated as outputs when inferring: those left
/// unconstrained by the calls pre-condition and constrained by a post-condition
/// of some predicate property of the same arity.
std::set<std::size_t> output_positions(const Program& prog, int arity);

/// Assertion for a predicate without user assertions. The pre-condition types
/// the input positions with the join of the clause head shapes; the
/// post-condition is the analysis success pattern under that pre-condition.
/// Types without a user name become `rtN` inline types.
struct TypeNamer {
  int next = 1;
  std::vector<RegType> fresh;  // rt1, rt2, ...
  /// A property literal on `v` for `t`, or nullopt when `t` is `term`.
  std::optional<PropLit> literal(const RegType& t, const Term& v, const Program& prog, const RegTypeDomain& d);
};
PredAssertion infer_pred_assertion(const PredKey& p, const Program& prog, const RegTypeDomain& d,
                                   const AnalysisOptions& o, TypeNamer& namer);

}  // namespace hiord
