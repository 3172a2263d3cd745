#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hiord/regtype.hpp"
#include "hiord/syntax.hpp"
#include "hiord/typedefs.hpp"

namespace hiord {

class Engine;

/// A finite lattice given by its Hasse diagram.
class FiniteLattice {
 public:
  /// `lattice { elems: [a, b, ...]; edges: [a < b, ...] }`. Throws
  /// std::runtime_error when the order is not a lattice.
  static FiniteLattice parse(std::string_view text);

  std::size_t size() const { return names_.size(); }
  const std::string& name(int e) const { return names_.at(e); }
  std::optional<int> find(const std::string& name) const;
  int top() const { return top_; }
  int bottom() const { return bottom_; }
  bool leq(int a, int b) const { return leq_[a][b]; }
  int meet(int a, int b) const { return meet_[a][b]; }
  int join(int a, int b) const { return join_[a][b]; }
  /// Violations of the lattice laws over all triples; empty when sound.
  std::vector<std::string> check_laws() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<int>> meet_, join_;
  int top_ = 0, bottom_ = 0;
};

using Elem = std::variant<int, RegType>;

/// An abstract store: bottom, or a map from keys (argument positions or
/// variable ids) to elements; a missing key means top.
struct AbsVal {
  bool bottom = false;
  std::map<long long, Elem> env;

  static AbsVal top() { return {}; }
  static AbsVal bot() { return {true, {}}; }
};

/// Strong and weak members of each predicate property.
struct PPTables {
  std::map<std::string, std::set<std::string>> minus, plus;
};

/// Bounds a single property literal contributes to its argument.
/// `sub` absent: the literal adds nothing to the under-approximation (the
/// conjunct becomes bottom). `sup` absent: no information.
struct LitBounds {
  std::optional<Elem> sub;
  std::optional<Elem> sup;
};

class Domain {
 public:
  virtual ~Domain() = default;
  virtual std::string name() const = 0;

  virtual Elem top_elem() const = 0;
  virtual bool is_top(const Elem& e) const = 0;
  virtual bool is_bottom(const Elem& e) const = 0;
  virtual bool leq(const Elem& a, const Elem& b) const = 0;
  virtual Elem meet(const Elem& a, const Elem& b) const = 0;
  virtual Elem join(const Elem& a, const Elem& b) const = 0;
  virtual std::string str(const Elem& e) const = 0;

  /// Index of the argument a unary-type literal constrains, if any.
  virtual std::optional<std::size_t> subject(const PropLit& lit) const = 0;
  /// Whether `join` of values differing in one position is their exact union.
  virtual bool exact_join() const = 0;
  /// Bounds of a unary property literal on its subject.
  virtual LitBounds unary_bounds(const PropLit& lit, const PPTables& pp) const = 0;
  /// Membership of a (resolved) argument in the concretization.
  virtual bool contains(const Elem& e, const Term& arg, const Engine& engine) const = 0;

  bool leq(const AbsVal& a, const AbsVal& b) const;
  AbsVal meet(const AbsVal& a, const AbsVal& b) const;
  AbsVal join(const AbsVal& a, const AbsVal& b) const;
  bool equal(const AbsVal& a, const AbsVal& b) const { return leq(a, b) && leq(b, a); }
  bool is_bottom(const AbsVal& a) const { return a.bottom; }
  AbsVal normalize(AbsVal a) const;
  Elem get(const AbsVal& a, long long key) const;
  std::string str(const AbsVal& a, const std::vector<std::string>& key_names = {}) const;
};

class FiniteLatticeDomain : public Domain {
 public:
  explicit FiniteLatticeDomain(FiniteLattice l) : lat_(std::move(l)) {}
  const FiniteLattice& lattice() const { return lat_; }

  std::string name() const override { return "lattice"; }
  Elem top_elem() const override { return lat_.top(); }
  bool is_top(const Elem& e) const override { return std::get<int>(e) == lat_.top(); }
  bool is_bottom(const Elem& e) const override { return std::get<int>(e) == lat_.bottom(); }
  bool leq(const Elem& a, const Elem& b) const override { return lat_.leq(std::get<int>(a), std::get<int>(b)); }
  Elem meet(const Elem& a, const Elem& b) const override { return lat_.meet(std::get<int>(a), std::get<int>(b)); }
  Elem join(const Elem& a, const Elem& b) const override { return lat_.join(std::get<int>(a), std::get<int>(b)); }
  std::string str(const Elem& e) const override { return lat_.name(std::get<int>(e)); }
  std::optional<std::size_t> subject(const PropLit& lit) const override;
  bool exact_join() const override { return false; }
  LitBounds unary_bounds(const PropLit& lit, const PPTables& pp) const override;
  bool contains(const Elem& e, const Term& arg, const Engine& engine) const override;
  using Domain::join;
  using Domain::leq;
  using Domain::meet;
  using Domain::str;

 private:
  FiniteLattice lat_;
};

class RegTypeDomain : public Domain {
 public:
  explicit RegTypeDomain(const Program& p) : defs_(p), prog_(&p) {}
  const TypeDefinitions& definitions() const { return defs_; }

  std::string name() const override { return "regtypes"; }
  Elem top_elem() const override { return RegType::any(); }
  bool is_top(const Elem& e) const override { return std::get<RegType>(e).is_any(); }
  bool is_bottom(const Elem& e) const override { return std::get<RegType>(e).is_empty(); }
  bool leq(const Elem& a, const Elem& b) const override { return subset(std::get<RegType>(a), std::get<RegType>(b)); }
  Elem meet(const Elem& a, const Elem& b) const override;
  Elem join(const Elem& a, const Elem& b) const override;
  std::string str(const Elem& e) const override { return std::get<RegType>(e).display_name(); }
  std::optional<std::size_t> subject(const PropLit& lit) const override;
  bool exact_join() const override { return true; }
  LitBounds unary_bounds(const PropLit& lit, const PPTables& pp) const override;
  bool contains(const Elem& e, const Term& arg, const Engine& engine) const override;
  using Domain::join;
  using Domain::leq;
  using Domain::meet;
  using Domain::str;

  /// Type of a property literal applied to its (last) argument, if exact.
  std::optional<RegType> literal_type(const PropLit& lit, const std::set<std::string>* pp_members) const;

 private:
  TypeDefinitions defs_;
  const Program* prog_;
};

/// The atoms type of a set of predicate names.
RegType names_type(const std::set<std::string>& names);

/// Under- and over-approximations of the trivial success set of `f`, as
/// abstract values keyed by the position of each variable in `head`.
AbsVal triv_sub(const Domain& d, const PropFormula& f, const std::vector<Term>& head, const PPTables& pp);
AbsVal triv_sup(const Domain& d, const PropFormula& f, const std::vector<Term>& head, const PPTables& pp);

/// Whether the resolved arguments lie in the concretization of `a`.
bool gamma_contains(const Domain& d, const AbsVal& a, const std::vector<Term>& args, const Engine& engine);

/// Ground terms of the element, for witness search and oracles.
std::vector<Term> enumerate_terms(const RegType& t, int depth, std::size_t cap = 4096);

}  // namespace hiord
