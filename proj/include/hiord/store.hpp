#pragma once

#include <map>
#include <vector>

#include "hiord/term.hpp"

namespace hiord {

/// Herbrand constraint store in solved form: a triangular substitution with
/// the occurs check on. Copies are independent.
class Store {
 public:
  /// Follow variable bindings at the top of `t`.
  Term walk(const Term& t) const;
  /// Apply the substitution everywhere in `t`.
  Term resolve(const Term& t) const;
  bool unify(const Term& a, const Term& b);
  bool is_bound(VarId v) const { return bindings_.count(v) != 0; }
  std::size_t size() const { return bindings_.size(); }

  /// `*this |= exists_L other` where `other` extends this store and `vars`
  /// are the variables of L: the extension adds no constraint on them.
  bool entails_extension(const Store& other, const std::vector<Term>& literal_args) const;

 private:
  std::map<VarId, Term> bindings_;
};

}  // namespace hiord
