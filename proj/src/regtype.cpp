#include "hiord/regtype.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <tuple>

namespace hiord {

namespace {

constexpr unsigned kInt = static_cast<unsigned>(BaseType::Int);
constexpr unsigned kNat = static_cast<unsigned>(BaseType::Nat);
constexpr unsigned kAtm = static_cast<unsigned>(BaseType::Atm);
constexpr unsigned kAny = static_cast<unsigned>(BaseType::Any);

constexpr std::size_t kMaxIntConstants = 8;

using Node = RegType::Node;
using Ctor = RegType::Ctor;

void absorb(Node& n) {
  if (n.leaves & kAny) {
    n = Node{};
    n.leaves = kAny;
    return;
  }
  if (n.leaves & kInt) {
    n.leaves &= ~kNat;
    n.ints.clear();
  } else if (n.leaves & kNat) {
    for (auto it = n.ints.begin(); it != n.ints.end();) it = *it >= 0 ? n.ints.erase(it) : std::next(it);
  }
  if (n.leaves & kAtm) n.atoms.clear();
}

bool node_is_any(const Node& n) { return (n.leaves & kAny) != 0; }

bool accepts_int(const Node& n, long long v) {
  return (n.leaves & (kAny | kInt)) || ((n.leaves & kNat) && v >= 0) || n.ints.count(v);
}

bool accepts_atom(const Node& n, const std::string& a) { return (n.leaves & (kAny | kAtm)) || n.atoms.count(a); }

std::pair<std::string, std::size_t> sig(const Ctor& c) { return {c.functor, c.children.size()}; }

/// Class of each node under the coarsest partition that separates nodes
/// with different leaves, constants or alternatives up to classes.
std::vector<int> bisimulation(const std::vector<Node>& nodes, std::size_t& classes) {
  using Alts = std::set<std::pair<std::string, std::vector<int>>>;
  using Key = std::tuple<int, unsigned, std::set<std::string>, std::set<long long>, Alts>;
  std::vector<int> cls(nodes.size(), 0);
  classes = 1;
  for (;;) {
    std::map<Key, int> ids;
    std::vector<int> next(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      Alts alts;
      for (const auto& c : nodes[i].ctors) {
        std::vector<int> ch;
        for (int x : c.children) ch.push_back(cls[x]);
        alts.emplace(c.functor, std::move(ch));
      }
      Key k{cls[i], nodes[i].leaves, nodes[i].atoms, nodes[i].ints, std::move(alts)};
      next[i] = ids.emplace(std::move(k), static_cast<int>(ids.size())).first->second;
    }
    cls = std::move(next);
    if (ids.size() == classes) return cls;
    classes = ids.size();
  }
}

/// Drop empty and unreachable nodes, merge equivalent nodes, dedupe
/// alternatives, renumber from the root.
std::vector<Node> normalize(std::vector<Node> nodes, int root) {
  if (root < 0 || nodes.empty()) return {};
  for (auto& n : nodes) absorb(n);
  const std::size_t n = nodes.size();
  std::vector<bool> nonempty(n, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (nonempty[i]) continue;
      const Node& nd = nodes[i];
      bool ok = nd.leaves || !nd.atoms.empty() || !nd.ints.empty();
      for (const auto& c : nd.ctors) {
        if (ok) break;
        ok = std::all_of(c.children.begin(), c.children.end(), [&](int ch) { return nonempty[ch]; });
      }
      if (ok) nonempty[i] = changed = true;
    }
  }
  if (!nonempty[root]) return {};
  for (auto& nd : nodes) {
    std::vector<Ctor> kept;
    for (auto& c : nd.ctors)
      if (std::all_of(c.children.begin(), c.children.end(), [&](int ch) { return nonempty[ch]; }))
        kept.push_back(std::move(c));
    nd.ctors = std::move(kept);
  }
  std::vector<int> remap(n, -1);
  std::vector<int> order;
  std::queue<int> q;
  q.push(root);
  remap[root] = 0;
  order.push_back(root);
  while (!q.empty()) {
    int i = q.front();
    q.pop();
    for (const auto& c : nodes[i].ctors)
      for (int ch : c.children)
        if (remap[ch] < 0) {
          remap[ch] = static_cast<int>(order.size());
          order.push_back(ch);
          q.push(ch);
        }
  }
  std::vector<Node> out;
  out.reserve(order.size());
  for (int i : order) {
    Node nd = nodes[i];
    for (auto& c : nd.ctors)
      for (int& ch : c.children) ch = remap[ch];
    std::sort(nd.ctors.begin(), nd.ctors.end(), [](const Ctor& a, const Ctor& b) {
      return std::tie(a.functor, a.children) < std::tie(b.functor, b.children);
    });
    nd.ctors.erase(std::unique(nd.ctors.begin(), nd.ctors.end(),
                               [](const Ctor& a, const Ctor& b) {
                                 return a.functor == b.functor && a.children == b.children;
                               }),
                   nd.ctors.end());
    out.push_back(std::move(nd));
  }
  std::size_t classes = 0;
  std::vector<int> cls = bisimulation(out, classes);
  if (classes == out.size()) return out;
  std::vector<Node> quotient(classes);
  std::vector<bool> seen(classes, false);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (seen[cls[i]]) continue;
    seen[cls[i]] = true;
    Node nd = out[i];
    for (auto& c : nd.ctors)
      for (int& ch : c.children) ch = cls[ch];
    quotient[cls[i]] = std::move(nd);
  }
  return normalize(std::move(quotient), cls[0]);
}

void merge_into(Node& dst, const Node& src, int offset) {
  dst.leaves |= src.leaves;
  dst.atoms.insert(src.atoms.begin(), src.atoms.end());
  dst.ints.insert(src.ints.begin(), src.ints.end());
  for (auto c : src.ctors) {
    for (int& ch : c.children) ch += offset;
    dst.ctors.push_back(std::move(c));
  }
}

/// Subset construction: alternatives sharing a functor are merged
/// argument-wise, which may over-approximate.
std::vector<Node> determinize(const std::vector<Node>& nodes, const std::set<int>& start) {
  std::map<std::set<int>, int> ids;
  std::vector<std::set<int>> states;
  std::vector<Node> out;
  auto intern = [&](const std::set<int>& s) {
    auto [it, fresh] = ids.emplace(s, static_cast<int>(states.size()));
    if (fresh) {
      states.push_back(s);
      out.emplace_back();
    }
    return it->second;
  };
  intern(start);
  for (std::size_t k = 0; k < states.size(); ++k) {
    const std::set<int> s = states[k];
    Node nd;
    std::map<std::pair<std::string, std::size_t>, std::vector<std::set<int>>> groups;
    for (int i : s) {
      const Node& src = nodes[i];
      nd.leaves |= src.leaves;
      nd.atoms.insert(src.atoms.begin(), src.atoms.end());
      nd.ints.insert(src.ints.begin(), src.ints.end());
      for (const auto& c : src.ctors) {
        auto& g = groups[sig(c)];
        g.resize(c.children.size());
        for (std::size_t j = 0; j < c.children.size(); ++j) g[j].insert(c.children[j]);
      }
    }
    if (nd.ints.size() > kMaxIntConstants) {
      nd.leaves |= kInt;
      nd.ints.clear();
    }
    for (auto& [key, args] : groups) {
      Ctor c;
      c.functor = key.first;
      for (const auto& a : args) c.children.push_back(intern(a));
      nd.ctors.push_back(std::move(c));
    }
    out[k] = std::move(nd);
  }
  return normalize(std::move(out), 0);
}

std::string leaf_names(unsigned leaves) {
  std::vector<std::string> parts;
  if (leaves & kAny) parts.push_back("term");
  if (leaves & kInt) parts.push_back("int");
  if (leaves & kNat) parts.push_back("nat");
  if (leaves & kAtm) parts.push_back("atm");
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : "|") + p;
  return s;
}

std::vector<Term> sample_values(unsigned leaves) {
  std::vector<Term> out;
  if (leaves & kAny) return {Term::integer(0), Term::atom("a")};
  if (leaves & kInt) out = {Term::integer(-1), Term::integer(0), Term::integer(1)};
  else if (leaves & kNat) out = {Term::integer(0), Term::integer(1)};
  if (leaves & kAtm) out.push_back(Term::atom("a"));
  return out;
}

bool term_order(const Term& a, const Term& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.to_string() < b.to_string();
}

}  // namespace

RegType::RegType() = default;

RegType RegType::from_nodes(std::vector<Node> nodes, int root) {
  RegType t;
  t.nodes_ = normalize(std::move(nodes), root);
  return t;
}

RegType RegType::any() { return leaf(BaseType::Any); }

RegType RegType::leaf(BaseType l) {
  Node n;
  n.leaves = static_cast<unsigned>(l);
  return from_nodes({n}, 0);
}

RegType RegType::atom(const std::string& name) {
  Node n;
  n.atoms.insert(name);
  return from_nodes({n}, 0);
}

RegType RegType::integer(long long v) {
  Node n;
  n.ints.insert(v);
  return from_nodes({n}, 0);
}

RegType RegType::constructor(const std::string& functor, const std::vector<RegType>& children) {
  std::vector<Node> nodes(1);
  Ctor c;
  c.functor = functor;
  for (const auto& ch : children) {
    if (ch.is_empty()) return {};
    int offset = static_cast<int>(nodes.size());
    c.children.push_back(offset);
    for (auto nd : ch.nodes_) {
      for (auto& cc : nd.ctors)
        for (int& x : cc.children) x += offset;
      nodes.push_back(std::move(nd));
    }
  }
  if (children.empty()) return atom(functor);
  nodes[0].ctors.push_back(std::move(c));
  return from_nodes(std::move(nodes), 0);
}

RegType RegType::of_term(const Term& t) {
  if (t.is_var()) return any();
  if (t.is_int()) return integer(t.int_value());
  if (t.is_atom()) return atom(t.name());
  std::vector<RegType> ch;
  for (const auto& a : t.args()) ch.push_back(of_term(a));
  return constructor(t.name(), ch);
}

RegType RegType::list_of(const RegType& elem) {
  if (elem.is_empty()) return atom("[]");
  std::vector<Node> nodes(1);
  nodes[0].atoms.insert("[]");
  nodes[0].ctors.push_back(Ctor{".", {1, 0}});
  for (auto nd : elem.nodes_) {
    for (auto& c : nd.ctors)
      for (int& x : c.children) x += 1;
    nodes.push_back(std::move(nd));
  }
  return from_nodes(std::move(nodes), 0);
}

bool RegType::is_any() const { return !nodes_.empty() && node_is_any(nodes_[0]); }

bool RegType::contains(const Term& t) const {
  if (nodes_.empty()) return false;
  std::function<bool(int, const Term&)> go = [&](int i, const Term& x) {
    const Node& n = nodes_[i];
    if (node_is_any(n)) return true;
    if (x.is_var()) return false;
    if (x.is_int()) return accepts_int(n, x.int_value());
    if (x.is_atom()) return accepts_atom(n, x.name());
    for (const auto& c : n.ctors) {
      if (c.functor != x.name() || c.children.size() != x.arity()) continue;
      bool all = true;
      for (std::size_t k = 0; k < x.arity() && all; ++k) all = go(c.children[k], x.arg(k));
      if (all) return true;
    }
    return false;
  };
  return go(0, t);
}

RegType RegType::children_of(const std::string& f, std::size_t n, std::size_t k) const {
  if (nodes_.empty()) return {};
  if (is_any()) return any();
  std::vector<Node> nodes = nodes_;
  Node merged;
  for (const auto& c : nodes_[0].ctors)
    if (c.functor == f && c.children.size() == n) merge_into(merged, nodes_[c.children[k]], 0);
  nodes.push_back(std::move(merged));
  return from_nodes(std::move(nodes), static_cast<int>(nodes_.size()));
}

bool RegType::admits_functor(const std::string& f, std::size_t n) const {
  if (nodes_.empty()) return false;
  if (is_any()) return true;
  return std::any_of(nodes_[0].ctors.begin(), nodes_[0].ctors.end(),
                     [&](const Ctor& c) { return c.functor == f && c.children.size() == n; });
}

std::optional<std::set<std::string>> RegType::constant_names() const {
  if (nodes_.empty()) return std::set<std::string>{};
  const Node& n = nodes_[0];
  if (n.leaves || !n.ints.empty() || !n.ctors.empty()) return std::nullopt;
  return n.atoms;
}

std::vector<Term> RegType::enumerate(int depth, std::size_t cap) const {
  if (nodes_.empty() || depth <= 0) return {};
  std::map<std::pair<int, int>, std::vector<Term>> memo;
  std::function<const std::vector<Term>&(int, int)> go = [&](int i, int d) -> const std::vector<Term>& {
    auto key = std::make_pair(i, d);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<Term> out;
    if (d > 0) {
      const Node& n = nodes_[i];
      out = sample_values(n.leaves);
      for (long long v : n.ints) out.push_back(Term::integer(v));
      for (const auto& a : n.atoms) out.push_back(Term::atom(a));
      for (const auto& c : n.ctors) {
        std::vector<std::vector<Term>> parts;
        bool empty = false;
        for (int ch : c.children) {
          parts.push_back(go(ch, d - 1));
          if (parts.back().empty()) empty = true;
        }
        if (empty) continue;
        std::vector<std::size_t> idx(parts.size(), 0);
        for (;;) {
          std::vector<Term> args;
          for (std::size_t k = 0; k < parts.size(); ++k) args.push_back(parts[k][idx[k]]);
          out.push_back(Term::compound(c.functor, std::move(args)));
          if (out.size() >= cap) break;
          std::size_t k = 0;
          while (k < idx.size() && ++idx[k] == parts[k].size()) idx[k++] = 0;
          if (k == idx.size()) break;
        }
      }
      std::sort(out.begin(), out.end(), term_order);
      out.erase(std::unique(out.begin(), out.end()), out.end());
      if (out.size() > cap) out.resize(cap);
    }
    return memo.emplace(key, std::move(out)).first->second;
  };
  return go(0, depth);
}

RegType RegType::widen() const {
  if (nodes_.empty()) return *this;
  std::vector<Node> g = determinize(nodes_, {0});
  for (int round = 0; round < 16 && !g.empty(); ++round) {
    std::map<std::set<std::pair<std::string, std::size_t>>, std::vector<int>> classes;
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::set<std::pair<std::string, std::size_t>> s;
      for (const auto& c : g[i].ctors) s.insert(sig(c));
      if (!s.empty()) classes[s].push_back(static_cast<int>(i));
    }
    bool merge = std::any_of(classes.begin(), classes.end(), [](const auto& kv) { return kv.second.size() > 1; });
    if (!merge) break;
    std::vector<int> cls(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) cls[i] = static_cast<int>(i);
    for (const auto& [s, members] : classes)
      for (int m : members) cls[m] = members.front();
    std::vector<Node> merged(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      Node src = g[i];
      for (auto& c : src.ctors)
        for (int& ch : c.children) ch = cls[ch];
      merge_into(merged[cls[i]], src, 0);
    }
    g = determinize(merged, {cls[0]});
  }
  RegType out;
  out.nodes_ = std::move(g);
  out.name_ = name_;
  return out;
}

RegType RegType::named(std::string n) const {
  RegType t = *this;
  t.name_ = std::move(n);
  return t;
}

std::string RegType::to_string() const {
  if (nodes_.empty()) return "bot";
  std::vector<bool> active(nodes_.size(), false);
  std::function<std::string(int)> render = [&](int i) -> std::string {
    if (active[i]) return "...";
    active[i] = true;
    const Node& n = nodes_[i];
    std::vector<std::string> parts;
    std::string leaves = leaf_names(n.leaves);
    if (!leaves.empty()) parts.push_back(leaves);
    for (long long v : n.ints) parts.push_back(std::to_string(v));
    bool list_node = false;
    for (const auto& c : n.ctors)
      if (c.functor == "." && c.children.size() == 2 && c.children[1] == i && n.atoms.count("[]")) list_node = true;
    for (const auto& a : n.atoms)
      if (!(list_node && a == "[]")) parts.push_back(quote_atom(a));
    for (const auto& c : n.ctors) {
      if (list_node && c.functor == "." && c.children.size() == 2 && c.children[1] == i) {
        parts.push_back("list(" + render(c.children[0]) + ")");
        continue;
      }
      std::string s = quote_atom(c.functor) + "(";
      for (std::size_t k = 0; k < c.children.size(); ++k) s += (k ? "," : "") + render(c.children[k]);
      parts.push_back(s + ")");
    }
    active[i] = false;
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : "|") + p;
    return out;
  };
  return render(0);
}

std::string RegType::definition(const std::string& name) const {
  if (nodes_.empty()) return name + " := bot.\n";
  auto node_name = [&](int i) { return i == 0 ? name : name + "_" + std::to_string(i); };
  std::string out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    std::vector<std::string> alts;
    std::string leaves = leaf_names(n.leaves);
    if (!leaves.empty()) alts.push_back(leaves);
    for (long long v : n.ints) alts.push_back(std::to_string(v));
    for (const auto& a : n.atoms) alts.push_back(quote_atom(a));
    for (const auto& c : n.ctors) {
      std::string s = quote_atom(c.functor) + "(";
      for (std::size_t k = 0; k < c.children.size(); ++k) s += (k ? "," : "") + node_name(c.children[k]);
      alts.push_back(s + ")");
    }
    out += node_name(static_cast<int>(i)) + " :=";
    for (std::size_t k = 0; k < alts.size(); ++k) out += (k ? " | " : " ") + alts[k];
    out += ".\n";
  }
  return out;
}

RegType unite(const RegType& a, const RegType& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  std::vector<Node> nodes(1);
  const int off_a = 1;
  const int off_b = 1 + static_cast<int>(a.nodes_.size());
  auto append = [&](const RegType& t, int off) {
    for (auto nd : t.nodes_) {
      for (auto& c : nd.ctors)
        for (int& x : c.children) x += off;
      nodes.push_back(std::move(nd));
    }
  };
  append(a, off_a);
  append(b, off_b);
  merge_into(nodes[0], a.nodes_[0], off_a);
  merge_into(nodes[0], b.nodes_[0], off_b);
  return RegType::from_nodes(std::move(nodes), 0);
}

RegType intersect(const RegType& a, const RegType& b) {
  if (a.is_empty() || b.is_empty()) return {};
  std::map<std::pair<int, int>, int> memo;
  std::vector<Node> out;
  // -1 stands for `any`
  std::function<int(int, int)> prod = [&](int i, int j) -> int {
    if (i >= 0 && node_is_any(a.nodes_[i])) i = -1;
    if (j >= 0 && node_is_any(b.nodes_[j])) j = -1;
    auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    int id = static_cast<int>(out.size());
    memo.emplace(key, id);
    out.emplace_back();
    Node nd;
    if (i < 0 && j < 0) {
      nd.leaves = kAny;
    } else if (i < 0 || j < 0) {
      const Node& src = i < 0 ? b.nodes_[j] : a.nodes_[i];
      nd.leaves = src.leaves;
      nd.atoms = src.atoms;
      nd.ints = src.ints;
      for (const auto& c : src.ctors) {
        Ctor cc{c.functor, {}};
        for (int ch : c.children) cc.children.push_back(i < 0 ? prod(-1, ch) : prod(ch, -1));
        nd.ctors.push_back(std::move(cc));
      }
    } else {
      const Node& x = a.nodes_[i];
      const Node& y = b.nodes_[j];
      if ((x.leaves & kInt) && (y.leaves & kInt)) nd.leaves |= kInt;
      if (((x.leaves & kNat) && (y.leaves & (kInt | kNat))) || ((y.leaves & kNat) && (x.leaves & (kInt | kNat))))
        nd.leaves |= kNat;
      if ((x.leaves & kAtm) && (y.leaves & kAtm)) nd.leaves |= kAtm;
      for (const auto& s : x.atoms)
        if (accepts_atom(y, s)) nd.atoms.insert(s);
      for (const auto& s : y.atoms)
        if (accepts_atom(x, s)) nd.atoms.insert(s);
      for (long long v : x.ints)
        if (accepts_int(y, v)) nd.ints.insert(v);
      for (long long v : y.ints)
        if (accepts_int(x, v)) nd.ints.insert(v);
      for (const auto& c : x.ctors)
        for (const auto& d : y.ctors) {
          if (sig(c) != sig(d)) continue;
          Ctor cc{c.functor, {}};
          for (std::size_t k = 0; k < c.children.size(); ++k) cc.children.push_back(prod(c.children[k], d.children[k]));
          nd.ctors.push_back(std::move(cc));
        }
    }
    out[id] = std::move(nd);
    return id;
  };
  prod(0, 0);
  return RegType::from_nodes(std::move(out), 0);
}

namespace {

class Inclusion {
 public:
  Inclusion(const std::vector<Node>& a, const std::vector<Node>& b) : a_(a), b_(b) {}

  bool incl(int i, const std::set<int>& bs) {
    for (int j : bs)
      if (node_is_any(b_[j])) return true;
    auto key = std::make_pair(i, bs);
    if (auto it = assumed_.find(key); it != assumed_.end()) {
      low_ = std::min(low_, it->second);
      return true;
    }
    if (refuted_.count(key)) return false;
    if (proven_.count(key)) return true;
    const Node& x = a_[i];
    auto any_b = [&](auto pred) {
      for (int j : bs)
        if (pred(b_[j])) return true;
      return false;
    };
    bool ok = true;
    if (x.leaves & kAny) ok = false;
    if (ok && (x.leaves & kInt)) ok = any_b([](const Node& n) { return (n.leaves & kInt) != 0; });
    if (ok && (x.leaves & kNat)) ok = any_b([](const Node& n) { return (n.leaves & (kInt | kNat)) != 0; });
    if (ok && (x.leaves & kAtm)) ok = any_b([](const Node& n) { return (n.leaves & kAtm) != 0; });
    for (auto it = x.atoms.begin(); ok && it != x.atoms.end(); ++it)
      ok = any_b([&](const Node& n) { return accepts_atom(n, *it); });
    for (auto it = x.ints.begin(); ok && it != x.ints.end(); ++it)
      ok = any_b([&](const Node& n) { return accepts_int(n, *it); });
    if (ok) {
      // A result resting only on assumptions made inside this call holds
      // outright and can be kept.
      const int depth = static_cast<int>(assumed_.size()) + 1;
      const int outer_low = low_;
      low_ = depth;
      assumed_.emplace(key, depth);
      for (const auto& c : x.ctors) {
        std::vector<std::vector<int>> tuples;
        for (int j : bs)
          for (const auto& d : b_[j].ctors)
            if (sig(c) == sig(d)) tuples.push_back(d.children);
        if (!tuples_incl(c.children, 0, tuples)) {
          ok = false;
          break;
        }
      }
      assumed_.erase(key);
      if (ok && low_ >= depth) proven_.insert(key);
      low_ = std::min(outer_low, low_ >= depth ? outer_low : low_);
    }
    if (!ok) refuted_.insert(key);
    return ok;
  }

 private:
  // product(cs[k..]) is covered by the union of products of tuples[.][k..]
  bool tuples_incl(const std::vector<int>& cs, std::size_t k, const std::vector<std::vector<int>>& tuples) {
    if (tuples.empty()) return false;
    if (k == cs.size()) return true;
    if (k + 1 == cs.size()) {
      std::set<int> bs;
      for (const auto& t : tuples) bs.insert(t[k]);
      return incl(cs[k], bs);
    }
    for (const auto& t : tuples) {
      bool covers = true;
      for (std::size_t j = k; j < cs.size() && covers; ++j) covers = incl(cs[j], {t[j]});
      if (covers) return true;
    }
    // Tuples sharing their k-th child move together: putting only part of a
    // group on the left leaves the same left union and a larger rest.
    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t j = 0; j < tuples.size(); ++j) groups[tuples[j][k]].push_back(j);
    std::vector<int> heads;
    for (const auto& g : groups) heads.push_back(g.first);
    const std::size_t m = heads.size();
    if (m > 16) return false;  // conservative
    for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
      std::set<int> left;
      std::vector<std::vector<int>> rest;
      for (std::size_t g = 0; g < m; ++g) {
        if (mask & (1ul << g)) {
          left.insert(heads[g]);
        } else {
          for (std::size_t j : groups[heads[g]]) rest.push_back(tuples[j]);
        }
      }
      bool first = !left.empty() && incl(cs[k], left);
      if (!first && !tuples_incl(cs, k + 1, rest)) return false;
    }
    return true;
  }

  const std::vector<Node>& a_;
  const std::vector<Node>& b_;
  std::map<std::pair<int, std::set<int>>, int> assumed_;  // key -> depth
  std::set<std::pair<int, std::set<int>>> refuted_, proven_;
  int low_ = 1 << 30;  // shallowest assumption used by the current call
};

}  // namespace

bool subset(const RegType& a, const RegType& b) {
  if (a.is_empty()) return true;
  if (b.is_empty()) return false;
  Inclusion inc(a.nodes_, b.nodes_);
  return inc.incl(0, {0});
}

}  // namespace hiord
