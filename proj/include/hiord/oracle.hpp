#pragma once

#include <optional>
#include <vector>

#include "hiord/engine.hpp"

namespace hiord {

struct RedundanceOptions {
  std::vector<Term> universe;  // ground candidate arguments
  bool include_variable = true;  // also try an unbound argument
  std::size_t max_queries = 4000;
  EngineOptions engine;
};

struct RedundanceResult {
  enum class Kind { Redundant, NotRedundant, Unknown };
  Kind kind = Kind::Redundant;
  std::vector<Term> witness;  // arguments of the offending query
  int label = 0;              // condition violated under A'
  std::size_t queries = 0;
};

/// A' from the redundance definition: p's calls condition strengthened with
/// Pi's calls pre-condition, plus Pi's success conditions instantiated for p.
AssertionSet strengthened_conditions(const AssertionSet& a, const PredKey& p, const PredicateProperty& pp);

/// Outcome of one query `p(args)`.
enum class QueryVerdict { Clean, Violation, Unknown };
QueryVerdict redundance_query(const Program& prog, const AssertionSet& a, const AssertionSet& a_prime,
                              const PredKey& p, const std::vector<Term>& args, const EngineOptions& opts,
                              int* label = nullptr);

/// Bounded check of "Pi is redundant for p under A" over queries built from
/// the universe, in order of total size then text.
RedundanceResult redundance_oracle(const Program& prog, const AssertionSet& a, const PredKey& p,
                                   const PredicateProperty& pp, const RedundanceOptions& opts);

/// Argument tuples for `arity`-ary queries in the oracle's enumeration order.
std::vector<std::vector<Term>> enumerate_queries(const std::vector<Term>& universe, std::size_t arity,
                                                 bool include_variable, std::size_t cap);

}  // namespace hiord
