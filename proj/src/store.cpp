#include "hiord/store.hpp"

#include <set>

namespace hiord {

Term Store::walk(const Term& t) const {
  Term cur = t;
  while (cur.is_var()) {
    auto it = bindings_.find(cur.var_id());
    if (it == bindings_.end()) break;
    cur = it->second;
  }
  return cur;
}

Term Store::resolve(const Term& t) const {
  Term w = walk(t);
  if (!w.is_compound() || w.arity() == 0) return w;
  std::vector<Term> args;
  args.reserve(w.arity());
  bool changed = false;
  for (const auto& a : w.args()) {
    args.push_back(resolve(a));
    if (!(args.back() == a)) changed = true;
  }
  return changed ? Term::compound(w.name(), std::move(args)) : w;
}

bool Store::unify(const Term& a, const Term& b) {
  Term x = walk(a);
  Term y = walk(b);
  if (x.is_var() && y.is_var() && x.var_id() == y.var_id()) return true;
  if (x.is_var()) {
    if (resolve(y).occurs(x.var_id())) return false;
    bindings_.emplace(x.var_id(), y);
    return true;
  }
  if (y.is_var()) return unify(y, x);
  if (x.kind() != y.kind()) return false;
  if (x.is_int()) return x.int_value() == y.int_value();
  if (x.name() != y.name() || x.arity() != y.arity()) return false;
  for (std::size_t i = 0; i < x.arity(); ++i)
    if (!unify(x.arg(i), y.arg(i))) return false;
  return true;
}

bool Store::entails_extension(const Store& other, const std::vector<Term>& literal_args) const {
  std::set<VarId> vars;
  for (const auto& a : literal_args) {
    auto vs = resolve(a).vars();
    vars.insert(vs.begin(), vs.end());
  }
  std::set<VarId> images;
  for (VarId v : vars) {
    Term w = other.walk(Term::var(v));
    if (!w.is_var() || !images.insert(w.var_id()).second) return false;
  }
  return true;
}

}  // namespace hiord
