#pragma once

#include <optional>

#include "hiord/syntax.hpp"

namespace hiord {

/// Leaf types that builtin type tests accept.
enum class BaseType : unsigned { Int = 1, Nat = 2, Atm = 4, Any = 8 };

/// Builtin predicates the engine evaluates natively. `list/1` counts as a
/// builtin only when the program does not define it.
bool is_builtin(const PredKey& k);

/// Builtins usable inside property formulas (type tests and `list/1,2`).
bool is_builtin_property(const PredKey& k);

/// The leaf accepted by a unary builtin type test (`int`, `nat`, ...).
std::optional<BaseType> builtin_type_leaf(const std::string& name);

bool is_standard_order_test(const std::string& name);

}  // namespace hiord
