#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace hiord {

using VarId = std::int64_t;

/// Process-wide source of fresh variable ids. Thread-safe.
VarId fresh_var_id();

/// Immutable first-order term: a variable, an integer, or a compound
/// (atoms are zero-arity compounds). Copies share structure.
class Term {
 public:
  enum class Kind : std::uint8_t { Var, Int, Compound };

  Term();  // the atom '[]'

  static Term var(VarId id, std::string name = {});
  static Term fresh(std::string name = {});
  static Term integer(long long value);
  static Term atom(std::string name);
  static Term compound(std::string functor, std::vector<Term> args);
  static Term list(const std::vector<Term>& items, const Term& tail = Term::nil());
  static Term nil() { return atom("[]"); }
  static Term cons(Term head, Term tail) { return compound(".", {std::move(head), std::move(tail)}); }

  Kind kind() const { return node_->kind; }
  bool is_var() const { return node_->kind == Kind::Var; }
  bool is_int() const { return node_->kind == Kind::Int; }
  bool is_compound() const { return node_->kind == Kind::Compound; }
  bool is_atom() const { return is_compound() && node_->args.empty(); }
  bool is_nil() const { return is_atom() && node_->name == "[]"; }
  bool is_cons() const { return is_compound() && node_->args.size() == 2 && node_->name == "."; }

  VarId var_id() const { return node_->id; }
  long long int_value() const { return node_->value; }
  /// Functor symbol for compounds, display name for variables.
  const std::string& name() const { return node_->name; }
  std::size_t arity() const { return node_->args.size(); }
  const std::vector<Term>& args() const { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args[i]; }

  bool ground() const;
  void collect_vars(std::vector<VarId>& out) const;
  std::set<VarId> vars() const;
  bool occurs(VarId id) const;
  std::size_t size() const;

  /// Structural identity (variables compared by id).
  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

  /// Variables print as their source name, or `_` when `anonymous_vars`.
  std::string to_string(bool anonymous_vars = false) const;

 private:
  struct Node {
    Kind kind = Kind::Compound;
    VarId id = 0;
    long long value = 0;
    std::string name;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Standard order of terms: Var < Int < Atom < Compound (by arity, name, args).
int compare_terms(const Term& a, const Term& b);

struct TermLess {
  bool operator()(const Term& a, const Term& b) const { return compare_terms(a, b) < 0; }
};

/// Quote an atom name when it would not read back as a plain atom.
std::string quote_atom(const std::string& name);

}  // namespace hiord
