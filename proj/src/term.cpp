#include "hiord/term.hpp"

#include <atomic>
#include <cctype>
#include <sstream>

namespace hiord {

namespace {
std::atomic<VarId> next_var{1000000};
}

VarId fresh_var_id() { return next_var.fetch_add(1, std::memory_order_relaxed); }

Term::Term() : Term(atom("[]")) {}

Term Term::var(VarId id, std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->id = id;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::fresh(std::string name) { return var(fresh_var_id(), std::move(name)); }

Term Term::integer(long long value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Int;
  n->value = value;
  return Term(std::move(n));
}

Term Term::atom(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Compound;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::compound(std::string functor, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Compound;
  n->name = std::move(functor);
  n->args = std::move(args);
  return Term(std::move(n));
}

Term Term::list(const std::vector<Term>& items, const Term& tail) {
  Term t = tail;
  for (auto it = items.rbegin(); it != items.rend(); ++it) t = cons(*it, t);
  return t;
}

bool Term::ground() const {
  if (is_var()) return false;
  for (const auto& a : args())
    if (!a.ground()) return false;
  return true;
}

void Term::collect_vars(std::vector<VarId>& out) const {
  if (is_var()) {
    for (VarId v : out)
      if (v == var_id()) return;
    out.push_back(var_id());
    return;
  }
  for (const auto& a : args()) a.collect_vars(out);
}

std::set<VarId> Term::vars() const {
  std::vector<VarId> v;
  collect_vars(v);
  return {v.begin(), v.end()};
}

bool Term::occurs(VarId id) const {
  if (is_var()) return var_id() == id;
  for (const auto& a : args())
    if (a.occurs(id)) return true;
  return false;
}

std::size_t Term::size() const {
  std::size_t s = 1;
  for (const auto& a : args()) s += a.size();
  return s;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var: return a.var_id() == b.var_id();
    case Term::Kind::Int: return a.int_value() == b.int_value();
    case Term::Kind::Compound:
      if (a.name() != b.name() || a.arity() != b.arity()) return false;
      for (std::size_t i = 0; i < a.arity(); ++i)
        if (a.arg(i) != b.arg(i)) return false;
      return true;
  }
  return false;
}

int compare_terms(const Term& a, const Term& b) {
  auto rank = [](const Term& t) {
    if (t.is_var()) return 0;
    if (t.is_int()) return 1;
    if (t.is_atom()) return 2;
    return 3;
  };
  int ra = rank(a), rb = rank(b);
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (ra) {
    case 0: return a.var_id() < b.var_id() ? -1 : (a.var_id() > b.var_id() ? 1 : 0);
    case 1: return a.int_value() < b.int_value() ? -1 : (a.int_value() > b.int_value() ? 1 : 0);
    case 2: return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    default:
      if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
      if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
      for (std::size_t i = 0; i < a.arity(); ++i)
        if (int c = compare_terms(a.arg(i), b.arg(i)); c != 0) return c;
      return 0;
  }
}

std::string quote_atom(const std::string& name) {
  if (name.empty()) return "''";
  if (name == "[]" || name == "!" || name == ";" || name == "{}") return name;
  bool plain = std::islower(static_cast<unsigned char>(name[0])) != 0;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') plain = false;
  if (plain) return name;
  static const std::string symbol_chars = "+-*/\\^<>=~:.?@#&$";
  bool symbolic = true;
  for (char c : name)
    if (symbol_chars.find(c) == std::string::npos) symbolic = false;
  if (symbolic) return name;
  std::string out = "'";
  for (char c : name) {
    if (c == '\'') out += "\\'";
    else out += c;
  }
  return out + "'";
}

namespace {

void print(std::ostream& os, const Term& t, bool anon) {
  switch (t.kind()) {
    case Term::Kind::Var:
      if (anon || t.name().empty()) os << '_';
      else os << t.name();
      return;
    case Term::Kind::Int: os << t.int_value(); return;
    case Term::Kind::Compound: break;
  }
  if (t.is_cons()) {
    os << '[';
    Term cur = t;
    bool first = true;
    while (cur.is_cons()) {
      if (!first) os << ',';
      first = false;
      print(os, cur.arg(0), anon);
      cur = cur.arg(1);
    }
    if (!cur.is_nil()) {
      os << '|';
      print(os, cur, anon);
    }
    os << ']';
    return;
  }
  os << quote_atom(t.name());
  if (t.arity() == 0) return;
  os << '(';
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (i) os << ',';
    print(os, t.arg(i), anon);
  }
  os << ')';
}

}  // namespace

std::string Term::to_string(bool anonymous_vars) const {
  std::ostringstream os;
  print(os, *this, anonymous_vars);
  return os.str();
}

}  // namespace hiord
