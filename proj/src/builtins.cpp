#include "hiord/builtins.hpp"

namespace hiord {

std::optional<BaseType> builtin_type_leaf(const std::string& name) {
  if (name == "int" || name == "integer" || name == "num" || name == "number") return BaseType::Int;
  if (name == "nat") return BaseType::Nat;
  if (name == "atm" || name == "atom") return BaseType::Atm;
  if (name == "term" || name == "any") return BaseType::Any;
  return std::nullopt;
}

bool is_standard_order_test(const std::string& name) {
  return name == "@<" || name == "@>" || name == "@=<" || name == "@>=" || name == "==" || name == "\\==";
}

bool is_builtin_property(const PredKey& k) {
  if (k.arity == 1 && (builtin_type_leaf(k.name) || k.name == "list")) return true;
  if (k.arity == 2 && k.name == "list") return true;
  return false;
}

bool is_builtin(const PredKey& k) {
  if (is_builtin_property(k)) return true;
  if (k.arity == 0 && (k.name == "true" || k.name == "fail" || k.name == "false")) return true;
  if (k.arity == 2 && is_standard_order_test(k.name)) return true;
  return false;
}

}  // namespace hiord
