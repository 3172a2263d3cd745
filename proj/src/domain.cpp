#include "hiord/domain.hpp"

#include <regex>
#include <sstream>
#include <stdexcept>

#include "hiord/engine.hpp"

namespace hiord {

// ---- finite lattice ----

namespace {

std::string strip_comments(std::string_view text) {
  std::string out;
  bool comment = false;
  for (char c : text) {
    if (c == '%') comment = true;
    if (c == '\n') comment = false;
    if (!comment) out += c;
  }
  return out;
}

std::vector<std::string> split_list(const std::string& body) {
  std::vector<std::string> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t\r\n");
    auto e = item.find_last_not_of(" \t\r\n");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace

FiniteLattice FiniteLattice::parse(std::string_view text) {
  const std::string src = strip_comments(text);
  std::smatch m;
  static const std::regex whole(R"(lattice\s*\{\s*elems\s*:\s*\[([^\]]*)\]\s*;\s*edges\s*:\s*\[([^\]]*)\]\s*;?\s*\})");
  if (!std::regex_search(src, m, whole))
    throw std::runtime_error("lattice file: expected `lattice { elems: [...]; edges: [...] }`");
  FiniteLattice l;
  l.names_ = split_list(m[1].str());
  const std::size_t n = l.names_.size();
  if (n == 0) throw std::runtime_error("lattice file: no elements");
  l.leq_.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) l.leq_[i][i] = true;
  for (const auto& e : split_list(m[2].str())) {
    static const std::regex edge(R"(^(\S+)\s*<\s*(\S+)$)");
    std::smatch em;
    if (!std::regex_match(e, em, edge)) throw std::runtime_error("lattice file: bad edge `" + e + "`");
    auto a = l.find(em[1].str());
    auto b = l.find(em[2].str());
    if (!a || !b) throw std::runtime_error("lattice file: edge `" + e + "` names an unknown element");
    l.leq_[*a][*b] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (l.leq_[i][k] && l.leq_[k][j]) l.leq_[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && l.leq_[i][j] && l.leq_[j][i])
        throw std::runtime_error("lattice file: cycle between " + l.names_[i] + " and " + l.names_[j]);
  auto bound = [&](std::size_t a, std::size_t b, bool lower) -> int {
    std::vector<std::size_t> cands;
    for (std::size_t c = 0; c < n; ++c)
      if (lower ? (l.leq_[c][a] && l.leq_[c][b]) : (l.leq_[a][c] && l.leq_[b][c])) cands.push_back(c);
    for (std::size_t c : cands) {
      bool best = true;
      for (std::size_t d : cands)
        if (lower ? !l.leq_[d][c] : !l.leq_[c][d]) best = false;
      if (best) return static_cast<int>(c);
    }
    throw std::runtime_error("lattice file: " + l.names_[a] + " and " + l.names_[b] + " have no " +
                             (lower ? "greatest lower" : "least upper") + " bound");
  };
  l.meet_.assign(n, std::vector<int>(n, 0));
  l.join_.assign(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      l.meet_[i][j] = bound(i, j, true);
      l.join_[i][j] = bound(i, j, false);
    }
  l.top_ = l.join_[0][0];
  l.bottom_ = l.meet_[0][0];
  for (std::size_t i = 0; i < n; ++i) {
    l.top_ = l.join_[l.top_][i];
    l.bottom_ = l.meet_[l.bottom_][i];
  }
  return l;
}

std::optional<int> FiniteLattice::find(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

std::vector<std::string> FiniteLattice::check_laws() const {
  std::vector<std::string> bad;
  const int n = static_cast<int>(size());
  auto fail = [&](const std::string& law, int a, int b, int c) {
    bad.push_back(law + " fails for (" + name(a) + ", " + name(b) + ", " + name(c) + ")");
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (meet(a, b) != meet(b, a) || join(a, b) != join(b, a)) fail("commutativity", a, b, b);
      if (meet(a, join(a, b)) != a || join(a, meet(a, b)) != a) fail("absorption", a, b, b);
      if (leq(a, b) != (meet(a, b) == a)) fail("order consistency", a, b, b);
      for (int c = 0; c < n; ++c)
        if (meet(a, meet(b, c)) != meet(meet(a, b), c) || join(a, join(b, c)) != join(join(a, b), c))
          fail("associativity", a, b, c);
    }
  return bad;
}

// ---- abstract values ----

Elem Domain::get(const AbsVal& a, long long key) const {
  auto it = a.env.find(key);
  return it == a.env.end() ? top_elem() : it->second;
}

AbsVal Domain::normalize(AbsVal a) const {
  if (a.bottom) return AbsVal::bot();
  for (auto it = a.env.begin(); it != a.env.end();) {
    if (is_bottom(it->second)) return AbsVal::bot();
    it = is_top(it->second) ? a.env.erase(it) : std::next(it);
  }
  return a;
}

bool Domain::leq(const AbsVal& a, const AbsVal& b) const {
  if (a.bottom) return true;
  if (b.bottom) return false;
  for (const auto& [k, e] : b.env)
    if (!leq(get(a, k), e)) return false;
  return true;
}

AbsVal Domain::meet(const AbsVal& a, const AbsVal& b) const {
  if (a.bottom || b.bottom) return AbsVal::bot();
  AbsVal out = a;
  for (const auto& [k, e] : b.env) {
    auto it = out.env.find(k);
    if (it == out.env.end()) out.env.emplace(k, e);
    else it->second = meet(it->second, e);
  }
  return normalize(std::move(out));
}

AbsVal Domain::join(const AbsVal& a, const AbsVal& b) const {
  if (a.bottom) return b;
  if (b.bottom) return a;
  AbsVal out;
  for (const auto& [k, e] : a.env) {
    auto it = b.env.find(k);
    if (it != b.env.end()) out.env.emplace(k, join(e, it->second));
  }
  return normalize(std::move(out));
}

std::string Domain::str(const AbsVal& a, const std::vector<std::string>& key_names) const {
  if (a.bottom) return "bot";
  if (a.env.empty()) return "top";
  std::string s;
  for (const auto& [k, e] : a.env) {
    if (!s.empty()) s += ", ";
    std::string kn = k >= 0 && static_cast<std::size_t>(k) < key_names.size() ? key_names[k] : "#" + std::to_string(k + 1);
    s += str(e) + "(" + kn + ")";
  }
  return a.env.size() > 1 ? "(" + s + ")" : s;
}

// ---- finite lattice domain ----

std::optional<std::size_t> FiniteLatticeDomain::subject(const PropLit& lit) const {
  if (lit.args.size() == 1) return 0;
  return std::nullopt;
}

LitBounds FiniteLatticeDomain::unary_bounds(const PropLit& lit, const PPTables&) const {
  if (lit.inline_type || lit.args.size() != 1) return {};
  if (auto e = lat_.find(lit.pred)) return {Elem{*e}, Elem{*e}};
  if (lit.pred == "term") return {Elem{lat_.top()}, Elem{lat_.top()}};
  return {};
}

bool FiniteLatticeDomain::contains(const Elem& e, const Term& arg, const Engine& engine) const {
  int x = std::get<int>(e);
  if (x == lat_.top()) return true;
  if (x == lat_.bottom()) return false;
  return engine.trivially_succeeds(PropLit{lat_.name(x), {arg}, nullptr}, Store{}) == Truth::True;
}

// ---- regular type domain ----

RegType names_type(const std::set<std::string>& names) {
  RegType t;
  for (const auto& n : names) t = unite(t, RegType::atom(n));
  return t;
}

Elem RegTypeDomain::meet(const Elem& a, const Elem& b) const {
  const auto& x = std::get<RegType>(a);
  const auto& y = std::get<RegType>(b);
  if (x.is_any()) return y;
  if (y.is_any()) return x;
  return intersect(x, y);
}

Elem RegTypeDomain::join(const Elem& a, const Elem& b) const {
  const auto& x = std::get<RegType>(a);
  const auto& y = std::get<RegType>(b);
  if (subset(x, y)) return y;
  if (subset(y, x)) return x;
  return unite(x, y);
}

std::optional<std::size_t> RegTypeDomain::subject(const PropLit& lit) const {
  if (lit.args.size() == 1) return 0;
  if (lit.args.size() == 2 && lit.pred == "list" && !lit.inline_type && !prog_->defines({"list", 2}) &&
      lit.args[0].is_atom())
    return 1;
  return std::nullopt;
}

std::optional<RegType> RegTypeDomain::literal_type(const PropLit& lit, const std::set<std::string>* pp_members) const {
  if (lit.inline_type) return *lit.inline_type;
  if (lit.args.size() == 1) {
    if (prog_->find_pred_prop(lit.pred) && !prog_->defines({lit.pred, 1})) {
      if (!pp_members) return std::nullopt;
      return names_type(*pp_members).named(lit.pred);
    }
    return defs_.lookup(lit.pred);
  }
  if (subject(lit) == std::size_t{1}) {
    auto elem = defs_.lookup(lit.args[0].name());
    if (!elem) return std::nullopt;
    return RegType::list_of(*elem).named("list(" + elem->display_name() + ")");
  }
  return std::nullopt;
}

LitBounds RegTypeDomain::unary_bounds(const PropLit& lit, const PPTables& pp) const {
  if (lit.args.size() == 1 && prog_->find_pred_prop(lit.pred) && !prog_->defines({lit.pred, 1})) {
    LitBounds b;
    if (auto it = pp.minus.find(lit.pred); it != pp.minus.end())
      b.sub = Elem{names_type(it->second).named(lit.pred + "-")};
    if (auto it = pp.plus.find(lit.pred); it != pp.plus.end())
      b.sup = Elem{names_type(it->second).named(lit.pred + "+")};
    return b;
  }
  if (auto t = literal_type(lit, nullptr)) return {Elem{*t}, Elem{*t}};
  return {};
}

bool RegTypeDomain::contains(const Elem& e, const Term& arg, const Engine&) const {
  return std::get<RegType>(e).contains(arg);
}

// ---- trivial success set approximations ----

namespace {

std::optional<long long> position(const std::vector<Term>& head, const Term& v) {
  for (std::size_t i = 0; i < head.size(); ++i)
    if (head[i].is_var() && head[i].var_id() == v.var_id()) return static_cast<long long>(i);
  return std::nullopt;
}

AbsVal conj_sub(const Domain& d, const std::vector<PropLit>& conj, const std::vector<Term>& head, const PPTables& pp) {
  AbsVal env;
  for (const auto& lit : conj) {
    if (lit.args.empty() && lit.pred == "true") continue;
    auto idx = d.subject(lit);
    if (!idx || !lit.args[*idx].is_var()) return AbsVal::bot();
    LitBounds b = d.unary_bounds(lit, pp);
    if (!b.sub) return AbsVal::bot();
    auto pos = position(head, lit.args[*idx]);
    if (!pos) {
      if (d.is_top(*b.sub)) continue;
      return AbsVal::bot();
    }
    env = d.meet(env, AbsVal{false, {{*pos, *b.sub}}});
    if (env.bottom) return env;
  }
  return d.normalize(env);
}

AbsVal conj_sup(const Domain& d, const std::vector<PropLit>& conj, const std::vector<Term>& head, const PPTables& pp) {
  AbsVal env;
  for (const auto& lit : conj) {
    auto idx = d.subject(lit);
    if (!idx || !lit.args[*idx].is_var()) continue;
    LitBounds b = d.unary_bounds(lit, pp);
    if (!b.sup) continue;
    auto pos = position(head, lit.args[*idx]);
    if (!pos) {
      if (d.is_bottom(*b.sup)) return AbsVal::bot();
      continue;
    }
    env = d.meet(env, AbsVal{false, {{*pos, *b.sup}}});
    if (env.bottom) return env;
  }
  return d.normalize(env);
}

/// Positions on which two non-bottom values differ.
std::size_t differing(const Domain& d, const AbsVal& a, const AbsVal& b) {
  std::set<long long> keys;
  for (const auto& [k, e] : a.env) keys.insert(k);
  for (const auto& [k, e] : b.env) keys.insert(k);
  std::size_t n = 0;
  for (long long k : keys) {
    Elem x = d.get(a, k), y = d.get(b, k);
    if (!(d.leq(x, y) && d.leq(y, x))) ++n;
  }
  return n;
}

}  // namespace

AbsVal triv_sub(const Domain& d, const PropFormula& f, const std::vector<Term>& head, const PPTables& pp) {
  std::optional<AbsVal> acc;
  for (const auto& conj : f.disjuncts) {
    AbsVal v = conj_sub(d, conj, head, pp);
    if (v.bottom) continue;
    if (!acc) acc = v;
    else if (d.leq(*acc, v)) acc = v;
    else if (d.leq(v, *acc)) continue;
    else if (d.exact_join() && differing(d, *acc, v) <= 1) acc = d.join(*acc, v);
  }
  return acc ? *acc : AbsVal::bot();
}

AbsVal triv_sup(const Domain& d, const PropFormula& f, const std::vector<Term>& head, const PPTables& pp) {
  AbsVal acc = AbsVal::bot();
  for (const auto& conj : f.disjuncts) acc = d.join(acc, conj_sup(d, conj, head, pp));
  return acc;
}

bool gamma_contains(const Domain& d, const AbsVal& a, const std::vector<Term>& args, const Engine& engine) {
  if (a.bottom) return false;
  for (const auto& [k, e] : a.env)
    if (k >= 0 && static_cast<std::size_t>(k) < args.size() && !d.contains(e, args[k], engine)) return false;
  return true;
}

std::vector<Term> enumerate_terms(const RegType& t, int depth, std::size_t cap) { return t.enumerate(depth, cap); }

}  // namespace hiord
