#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hiord/term.hpp"

namespace hiord {

class RegType;

struct PredKey {
  std::string name;
  int arity = 0;

  std::string str() const { return quote_atom(name) + "/" + std::to_string(arity); }
  friend auto operator<=>(const PredKey&, const PredKey&) = default;
};

/// A body literal. Check literals are produced only by the engine that runs
/// programs under their assertion conditions.
struct Literal {
  enum class Kind { Eq, Is, Cmp, Atom, HigherOrder, Check };

  Kind kind = Kind::Atom;
  std::string name;         // predicate symbol (Atom, Check) or operator (Cmp)
  std::vector<Term> args;   // Eq/Is/Cmp: {lhs, rhs}
  Term callee;              // HigherOrder: the variable in predicate position
  int label = -1;           // Check
  bool from_head = false;   // Eq introduced by head normalization
  int line = 0;

  static Literal eq(Term a, Term b, bool from_head = false);
  static Literal atom(std::string pred, std::vector<Term> args);
  static Literal higher_order(Term callee, std::vector<Term> args);
  static Literal check(std::string pred, std::vector<Term> args, int label);

  PredKey key() const { return {name, static_cast<int>(args.size())}; }
  std::string to_string() const;
};

struct Rule {
  std::string pred;
  std::vector<Term> head;  // distinct variables
  std::vector<Literal> body;
  int line = 0;

  PredKey key() const { return {pred, static_cast<int>(head.size())}; }
  std::string to_string() const;
};

/// A property literal. `inline_type`, when set, is a regular type produced by
/// inference and stands in for a named regtype applied to `args[0]`.
struct PropLit {
  std::string pred;
  std::vector<Term> args;
  std::shared_ptr<const RegType> inline_type;

  PredKey key() const { return {pred, static_cast<int>(args.size())}; }
  std::string to_string() const;
};

/// Disjunctive normal form over property literals. A single empty conjunct
/// is `true`.
struct PropFormula {
  std::vector<std::vector<PropLit>> disjuncts{{}};

  static PropFormula truth() { return {}; }
  bool is_true() const;
  std::set<VarId> vars() const;
  PropFormula conjoin(const PropFormula& other) const;
  PropFormula disjoin(const PropFormula& other) const;
  std::string to_string() const;
};

struct PredAssertion {
  std::string pred;
  std::vector<Term> head;
  PropFormula pre;
  PropFormula post;
  int line = 0;
  bool inferred = false;

  PredKey key() const { return {pred, static_cast<int>(head.size())}; }
  std::string to_string() const;
};

/// `:- pred _(v1..vn) : Pre => Post.` inside a predicate property.
struct AnonAssertion {
  std::vector<Term> params;
  PropFormula pre;
  PropFormula post;
  int line = 0;
};

struct PredicateProperty {
  std::string name;
  int arity = 0;
  std::vector<AnonAssertion> members;
  int line = 0;
};

struct EntryDecl {
  Term goal;
  std::optional<PropFormula> pre;
  int line = 0;
};

struct WrapDecl {
  PredKey target;
  std::string property;
  std::string name;
  int line = 0;
};

struct Diagnostic {
  int line = 0;
  int column = 0;
  std::string message;
  std::string str() const;
};

struct Program {
  std::string source_name;
  std::vector<Rule> rules;
  std::set<PredKey> props;
  std::set<PredKey> regtypes;
  std::vector<PredicateProperty> pred_props;
  std::vector<PredKey> asserted_order;
  std::map<PredKey, std::vector<PredAssertion>> assertions;
  std::vector<EntryDecl> entries;
  std::vector<WrapDecl> wraps;
  std::vector<Diagnostic> warnings;

  bool defines(const PredKey& k) const;
  std::vector<PredKey> defined_predicates() const;
  const PredicateProperty* find_pred_prop(const std::string& name) const;
  std::vector<const Rule*> rules_of(const PredKey& k) const;
  std::string to_source() const;
};

/// Renamed-apart copies of the clauses of `pred/arity(args)`.
/// Fresh variables come from the process-wide generator.
std::vector<Rule> defn(const Literal& atom, const Program& program);

/// Replace variables according to `subst`; unmapped variables are kept.
Term substitute(const Term& t, const std::map<VarId, Term>& subst);
Literal substitute(const Literal& l, const std::map<VarId, Term>& subst);
PropFormula substitute(const PropFormula& f, const std::map<VarId, Term>& subst);

/// Rename every variable of the rule to a fresh one.
Rule rename_apart(const Rule& r);

}  // namespace hiord
