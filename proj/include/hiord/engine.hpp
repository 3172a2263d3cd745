#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <vector>

#include "hiord/assertions.hpp"
#include "hiord/store.hpp"
#include "hiord/syntax.hpp"

namespace hiord {

struct GoalNode;
using Goal = std::shared_ptr<const GoalNode>;
struct GoalNode {
  Literal lit;
  Goal next;
};

Goal push_goals(const std::vector<Literal>& lits, Goal rest);

/// A derivation state; `err` is 0 when no assertion condition failed.
struct ExtState {
  Goal goal;
  Store store;
  int err = 0;
  bool err_at_check = false;  // raised by a check literal rather than a calls check
};

enum class Truth { False, True, Unknown };

struct EngineOptions {
  std::size_t depth = 10000;         // reduction steps per derivation
  std::size_t tree_budget = 200000;  // total reductions per derive() call
  /// Predicate names accepted by each predicate property, used when a
  /// property literal names a predicate property.
  std::map<std::string, std::set<std::string>> pp_members;
};

struct Successor {
  ExtState state;
  int choice = 0;
};

struct Leaf {
  enum class Kind { Success, Error, Exhausted };
  Kind kind = Kind::Success;
  ExtState state;
  std::vector<int> path;  // choices at non-check steps
};

struct DeriveStats {
  bool exhausted = false;
  std::size_t steps = 0;
  std::size_t successes = 0;
  std::size_t errors = 0;
};

/// Operational semantics, plain or with assertions.
class Engine {
 public:
  Engine(const Program& p, const AssertionSet* a = nullptr, EngineOptions o = {});

  const EngineOptions& options() const { return opts_; }
  bool with_assertions() const { return asserts_ != nullptr; }

  /// One reduction of the leftmost literal.
  std::vector<Successor> reduce(const ExtState& s) const;

  /// Depth-first exploration of all derivations. `visit` sees success, error
  /// and exhausted leaves; returning true stops the search.
  DeriveStats derive(const std::vector<Literal>& goals, const Store& st,
                     const std::function<bool(const Leaf&)>& visit) const;

  /// Answers of successful derivations, as resolved copies of `vars`.
  std::vector<std::vector<Term>> answers(const std::vector<Literal>& goals, const Store& st,
                                         const std::vector<Term>& vars, bool* incomplete = nullptr) const;

  Truth trivially_succeeds(const PropFormula& f, const Store& st) const;
  Truth trivially_succeeds(const PropLit& l, const Store& st) const;

  /// Projections (resolved arguments) of the success states of `atom`.
  std::vector<std::vector<Term>> success_context(const Literal& atom, const Store& st, bool* incomplete = nullptr) const;

  /// Number of property checks that ran out of budget.
  std::size_t unknown_checks() const { return unknowns_; }

 private:
  std::vector<Successor> reduce_impl(const ExtState& s, bool assertions) const;
  DeriveStats derive_impl(const std::vector<Literal>& goals, const Store& st, bool assertions,
                          const std::function<bool(const Leaf&)>& visit,
                          const std::function<bool(const Store&)>& prune = nullptr) const;
  bool builtin_step(const Literal& l, Store& st, std::vector<Literal>& pushed, bool& handled) const;

  const Program& prog_;
  const AssertionSet* asserts_;
  EngineOptions opts_;
  std::map<PredKey, std::vector<const Rule*>> rules_;
  std::set<std::string> pred_props_;
  mutable std::size_t unknowns_ = 0;
};

/// Evaluate a ground integer expression.
std::optional<long long> eval_arith(const Term& t);

}  // namespace hiord
