#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hiord/builtins.hpp"
#include "hiord/term.hpp"

namespace hiord {

/// A regular tree grammar with a distinguished root. Each node denotes the
/// union of its leaf types, constants and constructor alternatives.
/// Values are immutable and kept normalized (no empty or unreachable nodes).
class RegType {
 public:
  struct Ctor {
    std::string functor;
    std::vector<int> children;
  };
  struct Node {
    unsigned leaves = 0;  // bitmask of Leaf
    std::set<std::string> atoms;
    std::set<long long> ints;
    std::vector<Ctor> ctors;
  };

  RegType();  // the empty type

  static RegType empty() { return {}; }
  static RegType any();
  static RegType leaf(BaseType l);
  static RegType atom(const std::string& name);
  static RegType integer(long long v);
  /// The exact type of a ground term; variables become `any`.
  static RegType of_term(const Term& t);
  static RegType constructor(const std::string& functor, const std::vector<RegType>& children);
  static RegType list_of(const RegType& elem);
  /// Build from raw nodes; the result is normalized.
  static RegType from_nodes(std::vector<Node> nodes, int root);

  bool is_empty() const { return nodes_.empty(); }
  bool is_any() const;
  bool contains(const Term& t) const;
  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  int root() const { return 0; }

  /// Union of the k-th argument types over `f/n` alternatives of the root.
  RegType children_of(const std::string& f, std::size_t n, std::size_t k) const;
  /// True when the root admits some `f/n` term.
  bool admits_functor(const std::string& f, std::size_t n) const;
  /// The atoms of the type when it denotes a finite set of atoms only.
  std::optional<std::set<std::string>> constant_names() const;

  /// Ground terms of height <= depth, ordered by size then text. Infinite
  /// leaves contribute a few sample values.
  std::vector<Term> enumerate(int depth, std::size_t cap = 4096) const;

  /// Determinize and collapse nodes with equal constructor signatures.
  RegType widen() const;

  std::string display_name() const { return name_.empty() ? to_string() : name_; }
  const std::string& name() const { return name_; }
  RegType named(std::string n) const;
  /// Compact one-line rendering, e.g. `list(int)` or `r|w|b`.
  std::string to_string() const;
  /// `name := alt | alt.` lines, one per grammar node.
  std::string definition(const std::string& name) const;

  friend RegType unite(const RegType& a, const RegType& b);
  friend RegType intersect(const RegType& a, const RegType& b);
  friend bool subset(const RegType& a, const RegType& b);
  friend bool equivalent(const RegType& a, const RegType& b) { return subset(a, b) && subset(b, a); }

 private:
  std::vector<Node> nodes_;
  std::string name_;
};

}  // namespace hiord
