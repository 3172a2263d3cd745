#include "hiord/engine.hpp"

#include <algorithm>
#include <optional>

#include "hiord/builtins.hpp"
#include "hiord/regtype.hpp"

namespace hiord {

Goal push_goals(const std::vector<Literal>& lits, Goal rest) {
  for (auto it = lits.rbegin(); it != lits.rend(); ++it)
    rest = std::make_shared<const GoalNode>(GoalNode{*it, std::move(rest)});
  return rest;
}

std::optional<long long> eval_arith(const Term& t) {
  if (t.is_int()) return t.int_value();
  if (!t.is_compound()) return std::nullopt;
  if (t.arity() == 1 && t.name() == "-") {
    auto v = eval_arith(t.arg(0));
    if (!v) return std::nullopt;
    return -*v;
  }
  if (t.arity() != 2) return std::nullopt;
  auto a = eval_arith(t.arg(0));
  auto b = eval_arith(t.arg(1));
  if (!a || !b) return std::nullopt;
  const auto& op = t.name();
  if (op == "+") return *a + *b;
  if (op == "-") return *a - *b;
  if (op == "*") return *a * *b;
  if (op == "//") {
    if (*b == 0) return std::nullopt;
    return *a / *b;
  }
  if (op == "mod") {
    if (*b == 0) return std::nullopt;
    long long m = *a % *b;
    if (m != 0 && ((m < 0) != (*b < 0))) m += *b;
    return m;
  }
  return std::nullopt;
}

namespace {

bool leaf_accepts(BaseType l, const Term& t) {
  switch (l) {
    case BaseType::Any: return true;
    case BaseType::Int: return t.is_int();
    case BaseType::Nat: return t.is_int() && t.int_value() >= 0;
    case BaseType::Atm: return t.is_atom();
  }
  return false;
}

bool compare_op(const std::string& op, long long a, long long b) {
  if (op == "<") return a < b;
  if (op == ">") return a > b;
  if (op == "=<") return a <= b;
  if (op == ">=") return a >= b;
  if (op == "=:=") return a == b;
  if (op == "=\\=") return a != b;
  return false;
}

bool order_op(const std::string& op, const Term& a, const Term& b) {
  int c = compare_terms(a, b);
  if (op == "@<") return c < 0;
  if (op == "@>") return c > 0;
  if (op == "@=<") return c <= 0;
  if (op == "@>=") return c >= 0;
  if (op == "==") return c == 0;
  if (op == "\\==") return c != 0;
  return false;
}

/// Proper list elements, or nullopt for partial or non-lists.
std::optional<std::vector<Term>> list_elements(const Store& st, const Term& t) {
  std::vector<Term> out;
  Term cur = st.walk(t);
  while (cur.is_cons()) {
    out.push_back(cur.arg(0));
    cur = st.walk(cur.arg(1));
  }
  if (!cur.is_nil()) return std::nullopt;
  return out;
}

}  // namespace

Engine::Engine(const Program& p, const AssertionSet* a, EngineOptions o)
    : prog_(p), asserts_(a), opts_(std::move(o)) {
  for (const auto& r : prog_.rules) rules_[r.key()].push_back(&r);
  for (const auto& pp : prog_.pred_props) pred_props_.insert(pp.name);
}

std::vector<Successor> Engine::reduce(const ExtState& s) const { return reduce_impl(s, asserts_ != nullptr); }

bool Engine::builtin_step(const Literal& l, Store& st, std::vector<Literal>& pushed, bool& handled) const {
  handled = true;
  const PredKey k = l.key();
  if (k.arity == 0 && k.name == "true") return true;
  if (k.arity == 0 && (k.name == "fail" || k.name == "false")) return false;
  if (k.arity == 1) {
    if (auto leaf = builtin_type_leaf(k.name)) return leaf_accepts(*leaf, st.walk(l.args[0]));
    if (k.name == "list") return list_elements(st, l.args[0]).has_value();
    if (pred_props_.count(k.name)) {
      Term t = st.walk(l.args[0]);
      auto it = opts_.pp_members.find(k.name);
      return t.is_atom() && it != opts_.pp_members.end() && it->second.count(t.name());
    }
  }
  if (k.arity == 2 && k.name == "list") {
    auto elems = list_elements(st, l.args[1]);
    if (!elems) return false;
    for (const auto& e : *elems) pushed.push_back(Literal::higher_order(l.args[0], {e}));
    return true;
  }
  if (k.arity == 2 && is_standard_order_test(k.name))
    return order_op(k.name, st.resolve(l.args[0]), st.resolve(l.args[1]));
  handled = false;
  return false;
}

std::vector<Successor> Engine::reduce_impl(const ExtState& s, bool assertions) const {
  std::vector<Successor> out;
  if (!s.goal || s.err) return out;
  const Literal& lit = s.goal->lit;
  const Goal& rest = s.goal->next;
  auto simple = [&](Store st, std::vector<Literal> pushed = {}) {
    out.push_back(Successor{ExtState{push_goals(pushed, rest), std::move(st), 0, false}, 0});
  };
  switch (lit.kind) {
    case Literal::Kind::Eq: {
      Store st = s.store;
      if (st.unify(lit.args[0], lit.args[1])) simple(std::move(st));
      return out;
    }
    case Literal::Kind::Is: {
      auto v = eval_arith(s.store.resolve(lit.args[1]));
      Store st = s.store;
      if (v && st.unify(lit.args[0], Term::integer(*v))) simple(std::move(st));
      return out;
    }
    case Literal::Kind::Cmp: {
      auto a = eval_arith(s.store.resolve(lit.args[0]));
      auto b = eval_arith(s.store.resolve(lit.args[1]));
      if (a && b && compare_op(lit.name, *a, *b)) simple(s.store);
      return out;
    }
    case Literal::Kind::HigherOrder: {
      Term callee = s.store.walk(lit.callee);
      if (!callee.is_atom()) return out;
      Literal call = Literal::atom(callee.name(), lit.args);
      call.line = lit.line;
      simple(s.store, {call});
      return out;
    }
    case Literal::Kind::Check: {
      if (!assertions) {
        simple(s.store);
        return out;
      }
      const AssertionCondition* c = asserts_->by_label(lit.label);
      if (c && trivially_succeeds(instantiate_formula(c->post, c->head, lit.args), s.store) != Truth::True) {
        out.push_back(Successor{ExtState{s.goal, s.store, lit.label, true}, -1});
      } else {
        simple(s.store);
      }
      return out;
    }
    case Literal::Kind::Atom: break;
  }

  const PredKey k = lit.key();
  auto rit = rules_.find(k);
  const bool asserted = assertions && (asserts_->calls(k) || !asserts_->successes(k).empty());
  if (rit == rules_.end() && !asserted) {
    Store st = s.store;
    std::vector<Literal> pushed;
    bool handled = false;
    bool ok = builtin_step(lit, st, pushed, handled);
    if (handled && ok) simple(std::move(st), std::move(pushed));
    return out;
  }

  std::vector<Literal> checks;
  if (assertions) {
    if (const AssertionCondition* c = asserts_->calls(k)) {
      if (trivially_succeeds(instantiate_formula(c->pre, c->head, lit.args), s.store) != Truth::True) {
        out.push_back(Successor{ExtState{s.goal, s.store, c->label, false}, -1});
        return out;
      }
    }
    for (const AssertionCondition* c : asserts_->successes(k))
      if (trivially_succeeds(instantiate_formula(c->pre, c->head, lit.args), s.store) == Truth::True)
        checks.push_back(Literal::check(k.name, lit.args, c->label));
  }
  if (rit == rules_.end()) return out;
  int choice = 0;
  for (const Rule* r : rit->second) {
    Rule rr = rename_apart(*r);
    Store st = s.store;
    bool ok = true;
    for (std::size_t i = 0; i < rr.head.size() && ok; ++i) ok = st.unify(rr.head[i], lit.args[i]);
    if (ok) {
      std::vector<Literal> body = rr.body;
      body.insert(body.end(), checks.begin(), checks.end());
      out.push_back(Successor{ExtState{push_goals(body, rest), std::move(st), 0, false}, choice});
    }
    ++choice;
  }
  return out;
}

DeriveStats Engine::derive(const std::vector<Literal>& goals, const Store& st,
                           const std::function<bool(const Leaf&)>& visit) const {
  return derive_impl(goals, st, asserts_ != nullptr, visit);
}

DeriveStats Engine::derive_impl(const std::vector<Literal>& goals, const Store& st, bool assertions,
                                const std::function<bool(const Leaf&)>& visit,
                                const std::function<bool(const Store&)>& prune) const {
  struct Item {
    ExtState state;
    std::size_t depth;
    std::vector<int> path;
  };
  DeriveStats stats;
  std::vector<Item> stack;
  stack.push_back(Item{ExtState{push_goals(goals, nullptr), st, 0, false}, 0, {}});
  while (!stack.empty()) {
    Item it = std::move(stack.back());
    stack.pop_back();
    if (prune && prune(it.state.store)) continue;
    std::optional<Leaf::Kind> leaf;
    if (it.state.err) {
      leaf = Leaf::Kind::Error;
      ++stats.errors;
    } else if (!it.state.goal) {
      leaf = Leaf::Kind::Success;
      ++stats.successes;
    } else if (it.depth >= opts_.depth || stats.steps >= opts_.tree_budget) {
      leaf = Leaf::Kind::Exhausted;
      stats.exhausted = true;
    }
    if (leaf) {
      if (visit(Leaf{*leaf, std::move(it.state), std::move(it.path)})) return stats;
      if (stats.steps >= opts_.tree_budget) return stats;
      continue;
    }
    ++stats.steps;
    const bool observable = it.state.goal->lit.kind != Literal::Kind::Check;
    auto succ = reduce_impl(it.state, assertions);
    for (auto s = succ.rbegin(); s != succ.rend(); ++s) {
      std::vector<int> path = it.path;
      if (observable && s->choice >= 0) path.push_back(s->choice);
      stack.push_back(Item{std::move(s->state), it.depth + 1, std::move(path)});
    }
  }
  return stats;
}

std::vector<std::vector<Term>> Engine::answers(const std::vector<Literal>& goals, const Store& st,
                                               const std::vector<Term>& vars, bool* incomplete) const {
  std::vector<std::vector<Term>> out;
  auto stats = derive(goals, st, [&](const Leaf& l) {
    if (l.kind == Leaf::Kind::Success) {
      std::vector<Term> row;
      for (const auto& v : vars) row.push_back(l.state.store.resolve(v));
      out.push_back(std::move(row));
    }
    return false;
  });
  if (incomplete) *incomplete = stats.exhausted;
  return out;
}

Truth Engine::trivially_succeeds(const PropLit& l, const Store& st) const {
  if (l.inline_type) return l.inline_type->contains(st.resolve(l.args.at(0))) ? Truth::True : Truth::False;
  Literal goal = Literal::atom(l.pred, l.args);
  bool found = false;
  auto stats = derive_impl({goal}, st, false, [&](const Leaf& leaf) {
    if (leaf.kind == Leaf::Kind::Success && st.entails_extension(leaf.state.store, l.args)) found = true;
    return found;
  }, [&](const Store& s) { return !st.entails_extension(s, l.args); });
  if (found) return Truth::True;
  if (stats.exhausted) {
    ++unknowns_;
    return Truth::Unknown;
  }
  return Truth::False;
}

Truth Engine::trivially_succeeds(const PropFormula& f, const Store& st) const {
  bool unknown = false;
  for (const auto& conj : f.disjuncts) {
    Truth t = Truth::True;
    for (const auto& l : conj) {
      t = trivially_succeeds(l, st);
      if (t != Truth::True) break;
    }
    if (t == Truth::True) return Truth::True;
    if (t == Truth::Unknown) unknown = true;
  }
  return unknown ? Truth::Unknown : Truth::False;
}

std::vector<std::vector<Term>> Engine::success_context(const Literal& atom, const Store& st, bool* incomplete) const {
  return answers({atom}, st, atom.args, incomplete);
}

}  // namespace hiord
