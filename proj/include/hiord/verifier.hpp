#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hiord/analysis.hpp"
#include "hiord/conformance.hpp"
#include "hiord/domain.hpp"
#include "hiord/syntax.hpp"

namespace hiord {

enum class Status { Checked, False, Check };
std::string to_string(Status s);

struct AssertionVerdict {
  PredKey pred;
  std::string kind;  // "calls" or "success"
  int label = 0;
  int line = 0;
  std::string text;  // the assertion condition
  Status status = Status::Check;
  std::string reason;
};

struct VerifyOptions {
  std::optional<FiniteLattice> lattice;  // conformance domain; regular types otherwise
  std::vector<EntryDecl> entries;        // replace the program's entry declarations when non-empty
  std::size_t max_iterations = 16;
  EngineOptions engine;
  bool run_checks = false;
  std::size_t run_check_queries = 64;  // concrete queries per entry
};

struct VerifyResult {
  std::string program;
  std::vector<AssertionVerdict> assertions;
  std::vector<PropertyVerdict> conformance;
  /// Iteration at which each (property, predicate) first became Yes.
  std::map<std::pair<std::string, std::string>, int> first_yes;
  std::map<std::string, PiSets> tables;
  std::vector<Rule> generated;
  std::vector<PredAssertion> inferred;
  std::vector<std::string> warnings;
  std::size_t iterations = 0;
  bool fixpoint = true;
  std::string analysis_dump;

  /// 0 all checked, 1 some false, 2 some check.
  int exit_code() const;
};

/// Fixpoint over the predicate properties, then analysis of the program and
/// first-order checking of every user assertion.
VerifyResult verify(Program prog, const VerifyOptions& opts = {});

/// Conformance of every candidate to every predicate property, with the
/// tables of the final fixpoint iteration. Used by `hiord conformance`.
VerifyResult conformance_only(Program prog, const VerifyOptions& opts = {});

/// The conformance matrix laid out one row per predicate and property.
std::string conformance_matrix(const VerifyResult& r);

}  // namespace hiord
