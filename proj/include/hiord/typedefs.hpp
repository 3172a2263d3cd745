#pragma once

#include <map>
#include <optional>
#include <string>

#include "hiord/regtype.hpp"
#include "hiord/syntax.hpp"

namespace hiord {

/// Grammars for the unary predicates of a program whose clauses have
/// regular-type shape: `X = t` with linear variables, at most one unary type
/// call per variable, `list(T, V)`, and builtin leaf types. Other predicates
/// have no entry and are treated as inexact properties.
class TypeDefinitions {
 public:
  TypeDefinitions() = default;
  explicit TypeDefinitions(const Program& p);

  /// Exact grammar of the unary predicate `name`, builtins included.
  std::optional<RegType> lookup(const std::string& name) const;

 private:
  std::map<std::string, RegType> types_;
  bool user_list_ = false;
};

}  // namespace hiord
