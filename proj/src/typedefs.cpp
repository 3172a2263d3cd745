#include "hiord/typedefs.hpp"

#include <functional>
#include <set>

#include "hiord/builtins.hpp"

namespace hiord {

namespace {

struct Proto {
  RegType::Node content;
  std::set<int> eps;
};

class Converter {
 public:
  explicit Converter(const Program& p) : prog_(p) {
    for (const auto& r : p.rules)
      if (r.head.size() == 1 && !index_.count(r.pred)) {
        index_[r.pred] = static_cast<int>(protos_.size());
        protos_.emplace_back();
        names_.push_back(r.pred);
      }
  }

  std::map<std::string, RegType> run() {
    std::set<std::string> inexact;
    std::map<std::string, std::set<std::string>> deps;
    for (const auto& r : prog_.rules) {
      if (r.head.size() != 1) continue;
      if (!clause(r, deps[r.pred])) inexact.insert(r.pred);
    }
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& [p, ds] : deps)
        if (!inexact.count(p))
          for (const auto& d : ds)
            if (inexact.count(d)) {
              inexact.insert(p);
              changed = true;
              break;
            }
    }
    // epsilon closure
    std::vector<RegType::Node> nodes;
    for (std::size_t i = 0; i < protos_.size(); ++i) {
      RegType::Node n;
      std::set<int> seen{static_cast<int>(i)};
      std::vector<int> stack{static_cast<int>(i)};
      while (!stack.empty()) {
        int j = stack.back();
        stack.pop_back();
        const auto& c = protos_[j].content;
        n.leaves |= c.leaves;
        n.atoms.insert(c.atoms.begin(), c.atoms.end());
        n.ints.insert(c.ints.begin(), c.ints.end());
        n.ctors.insert(n.ctors.end(), c.ctors.begin(), c.ctors.end());
        for (int e : protos_[j].eps)
          if (seen.insert(e).second) stack.push_back(e);
      }
      nodes.push_back(std::move(n));
    }
    std::map<std::string, RegType> out;
    for (const auto& [name, idx] : index_)
      if (!inexact.count(name)) out.emplace(name, RegType::from_nodes(nodes, idx).named(name));
    return out;
  }

 private:
  int add(RegType::Node n) {
    protos_.push_back(Proto{std::move(n), {}});
    return static_cast<int>(protos_.size()) - 1;
  }

  int leaf_node(unsigned leaves) {
    RegType::Node n;
    n.leaves = leaves;
    return add(std::move(n));
  }

  int list_node(int elem) {
    int id = add({});
    protos_[id].content.atoms.insert("[]");
    protos_[id].content.ctors.push_back(RegType::Ctor{".", {elem, id}});
    return id;
  }

  /// Node for a unary type named `q`, or -1.
  int type_node(const std::string& q, std::set<std::string>& deps) {
    if (index_.count(q)) {
      deps.insert(q);
      return index_.at(q);
    }
    if (auto l = builtin_type_leaf(q)) return leaf_node(static_cast<unsigned>(*l));
    if (q == "list") return list_node(leaf_node(static_cast<unsigned>(BaseType::Any)));
    return -1;
  }

  bool clause(const Rule& r, std::set<std::string>& deps) {
    const Term head = r.head[0];
    std::map<VarId, Term> bind;
    std::map<VarId, int> typed;  // var -> node
    auto walk = [&](Term t) {
      while (t.is_var() && bind.count(t.var_id())) t = bind.at(t.var_id());
      return t;
    };
    for (const auto& l : r.body) {
      if (l.kind == Literal::Kind::Eq) {
        Term a = walk(l.args[0]);
        Term b = walk(l.args[1]);
        if (!a.is_var()) std::swap(a, b);
        if (!a.is_var()) return false;
        if (b.is_var() && b.var_id() == a.var_id()) continue;
        if (b.occurs(a.var_id())) return false;
        bind.emplace(a.var_id(), b);
        continue;
      }
      if (l.kind != Literal::Kind::Atom) return false;
      if (l.args.empty() && l.name == "true") continue;
      Term v;
      int node = -1;
      if (l.args.size() == 1 && l.args[0].is_var()) {
        v = l.args[0];
        node = type_node(l.name, deps);
      } else if (l.args.size() == 2 && l.name == "list" && !user_list2() && l.args[0].is_atom() && l.args[1].is_var()) {
        v = l.args[1];
        int elem = type_node(l.args[0].name(), deps);
        if (elem >= 0) node = list_node(elem);
      } else {
        return false;
      }
      if (node < 0 || typed.count(v.var_id())) return false;
      typed.emplace(v.var_id(), node);
    }
    // resolve the head pattern; bindings chained on typed variables are not supported
    for (const auto& [v, node] : typed)
      if (bind.count(v)) return false;
    std::function<Term(const Term&)> full = [&](const Term& t) -> Term {
      Term w = walk(t);
      if (!w.is_compound() || w.arity() == 0) return w;
      std::vector<Term> args;
      for (const auto& a : w.args()) args.push_back(full(a));
      return Term::compound(w.name(), std::move(args));
    };
    Term pattern = full(head);
    std::vector<VarId> occ;
    std::function<void(const Term&)> count = [&](const Term& t) {
      if (t.is_var()) occ.push_back(t.var_id());
      else
        for (const auto& a : t.args()) count(a);
    };
    count(pattern);
    std::set<VarId> uniq(occ.begin(), occ.end());
    if (uniq.size() != occ.size()) return false;
    for (const auto& [v, node] : typed)
      if (!uniq.count(v)) return false;

    const int self = index_.at(r.pred);
    if (pattern.is_var()) {
      auto it = typed.find(pattern.var_id());
      if (it == typed.end()) protos_[self].content.leaves |= static_cast<unsigned>(BaseType::Any);
      else protos_[self].eps.insert(it->second);
      return true;
    }
    std::function<int(const Term&)> build = [&](const Term& t) -> int {
      if (t.is_var()) {
        auto it = typed.find(t.var_id());
        return it == typed.end() ? leaf_node(static_cast<unsigned>(BaseType::Any)) : it->second;
      }
      RegType::Node n;
      if (t.is_int()) n.ints.insert(t.int_value());
      else if (t.is_atom()) n.atoms.insert(t.name());
      else {
        RegType::Ctor c{t.name(), {}};
        for (const auto& a : t.args()) c.children.push_back(build(a));
        n.ctors.push_back(std::move(c));
      }
      return add(std::move(n));
    };
    const int node = build(pattern);  // may grow protos_
    protos_[self].eps.insert(node);
    return true;
  }

  bool user_list2() const { return prog_.defines({"list", 2}); }

  const Program& prog_;
  std::map<std::string, int> index_;
  std::vector<Proto> protos_;
  std::vector<std::string> names_;
};

}  // namespace

TypeDefinitions::TypeDefinitions(const Program& p) {
  types_ = Converter(p).run();
  user_list_ = p.defines({"list", 1});
}

std::optional<RegType> TypeDefinitions::lookup(const std::string& name) const {
  if (auto it = types_.find(name); it != types_.end()) return it->second;
  if (name == "list" && !user_list_) return RegType::list_of(RegType::any()).named("list");
  if (auto l = builtin_type_leaf(name)) return RegType::leaf(*l).named(name == "term" ? "term" : name);
  return std::nullopt;
}

}  // namespace hiord
