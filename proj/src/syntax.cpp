#include "hiord/syntax.hpp"

#include <algorithm>
#include <sstream>

#include "hiord/regtype.hpp"

namespace hiord {

Literal Literal::eq(Term a, Term b, bool from_head) {
  Literal l;
  l.kind = Kind::Eq;
  l.name = "=";
  l.args = {std::move(a), std::move(b)};
  l.from_head = from_head;
  return l;
}

Literal Literal::atom(std::string pred, std::vector<Term> args) {
  Literal l;
  l.kind = Kind::Atom;
  l.name = std::move(pred);
  l.args = std::move(args);
  return l;
}

Literal Literal::higher_order(Term callee, std::vector<Term> args) {
  Literal l;
  l.kind = Kind::HigherOrder;
  l.callee = std::move(callee);
  l.args = std::move(args);
  return l;
}

Literal Literal::check(std::string pred, std::vector<Term> args, int label) {
  Literal l;
  l.kind = Kind::Check;
  l.name = std::move(pred);
  l.args = std::move(args);
  l.label = label;
  return l;
}

namespace {

bool is_arith_op(const Term& t) {
  if (!t.is_compound() || t.arity() != 2) return false;
  const auto& n = t.name();
  return n == "+" || n == "-" || n == "*" || n == "//" || n == "mod";
}

std::string expr_string(const Term& t) {
  if (is_arith_op(t)) {
    const std::string sep = t.name() == "mod" ? " mod " : t.name();
    auto side = [](const Term& s) {
      std::string str = expr_string(s);
      return is_arith_op(s) ? "(" + str + ")" : str;
    };
    return side(t.arg(0)) + sep + side(t.arg(1));
  }
  if (t.is_compound() && t.arity() == 1 && t.name() == "-") return "-(" + expr_string(t.arg(0)) + ")";
  return t.to_string();
}

std::string call_string(const std::string& head, const std::vector<Term>& args) {
  std::string out = head;
  if (args.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ',';
    out += args[i].to_string();
  }
  return out + ')';
}

}  // namespace

std::string Literal::to_string() const {
  switch (kind) {
    case Kind::Eq: return args[0].to_string() + " = " + args[1].to_string();
    case Kind::Is: return args[0].to_string() + " is " + expr_string(args[1]);
    case Kind::Cmp: return expr_string(args[0]) + " " + name + " " + expr_string(args[1]);
    case Kind::Atom: return call_string(quote_atom(name), args);
    case Kind::HigherOrder: return call_string(callee.to_string(), args);
    case Kind::Check:
      return "check(" + call_string(quote_atom(name), args) + "," + std::to_string(label) + ")";
  }
  return {};
}

std::string Rule::to_string() const {
  std::string out = call_string(quote_atom(pred), head);
  if (!body.empty()) {
    out += " :- ";
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (i) out += ", ";
      out += body[i].to_string();
    }
  }
  return out + ".";
}

std::string PropLit::to_string() const {
  if (inline_type) return call_string(inline_type->display_name(), args);
  return call_string(quote_atom(pred), args);
}

bool PropFormula::is_true() const {
  return std::any_of(disjuncts.begin(), disjuncts.end(), [](const auto& c) { return c.empty(); });
}

std::set<VarId> PropFormula::vars() const {
  std::set<VarId> out;
  for (const auto& c : disjuncts)
    for (const auto& l : c)
      for (const auto& a : l.args) {
        auto v = a.vars();
        out.insert(v.begin(), v.end());
      }
  return out;
}

PropFormula PropFormula::conjoin(const PropFormula& other) const {
  PropFormula out;
  out.disjuncts.clear();
  for (const auto& a : disjuncts)
    for (const auto& b : other.disjuncts) {
      auto c = a;
      c.insert(c.end(), b.begin(), b.end());
      out.disjuncts.push_back(std::move(c));
    }
  return out;
}

PropFormula PropFormula::disjoin(const PropFormula& other) const {
  PropFormula out = *this;
  out.disjuncts.insert(out.disjuncts.end(), other.disjuncts.begin(), other.disjuncts.end());
  return out;
}

std::string PropFormula::to_string() const {
  if (disjuncts.empty()) return "fail";
  auto conj = [](const std::vector<PropLit>& c) {
    if (c.empty()) return std::string("true");
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) s += ", ";
      s += c[i].to_string();
    }
    return c.size() > 1 ? "(" + s + ")" : s;
  };
  std::string out;
  for (std::size_t i = 0; i < disjuncts.size(); ++i) {
    if (i) out += " ; ";
    out += conj(disjuncts[i]);
  }
  return disjuncts.size() > 1 ? "(" + out + ")" : out;
}

std::string PredAssertion::to_string() const {
  std::string out = ":- pred " + call_string(quote_atom(pred), head);
  if (!pre.is_true()) out += " : " + pre.to_string();
  if (!post.is_true()) out += " => " + post.to_string();
  return out + ".";
}

std::string Diagnostic::str() const {
  return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

bool Program::defines(const PredKey& k) const {
  return std::any_of(rules.begin(), rules.end(), [&](const Rule& r) { return r.key() == k; });
}

std::vector<PredKey> Program::defined_predicates() const {
  std::vector<PredKey> out;
  for (const auto& r : rules)
    if (std::find(out.begin(), out.end(), r.key()) == out.end()) out.push_back(r.key());
  return out;
}

const PredicateProperty* Program::find_pred_prop(const std::string& name) const {
  for (const auto& p : pred_props)
    if (p.name == name) return &p;
  return nullptr;
}

std::vector<const Rule*> Program::rules_of(const PredKey& k) const {
  std::vector<const Rule*> out;
  for (const auto& r : rules)
    if (r.key() == k) out.push_back(&r);
  return out;
}

std::string Program::to_source() const {
  std::ostringstream os;
  for (const auto& k : props) os << ":- prop " << k.str() << ".\n";
  for (const auto& k : regtypes) os << ":- regtype " << k.str() << ".\n";
  for (const auto& pp : pred_props) {
    os << quote_atom(pp.name) << " := {";
    for (const auto& m : pp.members) {
      os << " :- pred " << call_string("_", m.params);
      if (!m.pre.is_true()) os << " : " << m.pre.to_string();
      if (!m.post.is_true()) os << " => " << m.post.to_string();
      os << ".";
    }
    os << " }.\n";
  }
  for (const auto& k : asserted_order)
    for (const auto& a : assertions.at(k)) os << a.to_string() << "\n";
  for (const auto& e : entries) {
    os << ":- entry " << e.goal.to_string();
    if (e.pre) os << " : " << e.pre->to_string();
    os << ".\n";
  }
  for (const auto& w : wraps)
    os << ":- wrap " << w.target.str() << " with " << quote_atom(w.property) << " as "
       << quote_atom(w.name) << ".\n";
  for (const auto& r : rules) os << r.to_string() << "\n";
  return os.str();
}

Term substitute(const Term& t, const std::map<VarId, Term>& subst) {
  if (t.is_var()) {
    auto it = subst.find(t.var_id());
    return it == subst.end() ? t : it->second;
  }
  if (t.arity() == 0) return t;
  std::vector<Term> args;
  args.reserve(t.arity());
  for (const auto& a : t.args()) args.push_back(substitute(a, subst));
  return Term::compound(t.name(), std::move(args));
}

Literal substitute(const Literal& l, const std::map<VarId, Term>& subst) {
  Literal out = l;
  for (auto& a : out.args) a = substitute(a, subst);
  if (l.kind == Literal::Kind::HigherOrder) out.callee = substitute(l.callee, subst);
  return out;
}

PropFormula substitute(const PropFormula& f, const std::map<VarId, Term>& subst) {
  PropFormula out = f;
  for (auto& c : out.disjuncts)
    for (auto& l : c)
      for (auto& a : l.args) a = substitute(a, subst);
  return out;
}

Rule rename_apart(const Rule& r) {
  std::map<VarId, Term> subst;
  auto add = [&](const Term& t) {
    for (VarId v : t.vars())
      if (!subst.count(v)) subst.emplace(v, Term::fresh());
  };
  for (const auto& h : r.head) add(h);
  for (const auto& l : r.body) {
    for (const auto& a : l.args) add(a);
    if (l.kind == Literal::Kind::HigherOrder) add(l.callee);
  }
  // keep display names for readability
  std::map<VarId, Term> named;
  auto name_of = [&](VarId v, const Term& src) {
    if (!named.count(v)) named.emplace(v, Term::var(subst.at(v).var_id(), src.name()));
  };
  std::vector<Term> roots = r.head;
  for (const auto& l : r.body) {
    roots.insert(roots.end(), l.args.begin(), l.args.end());
    if (l.kind == Literal::Kind::HigherOrder) roots.push_back(l.callee);
  }
  std::vector<Term> stack = roots;
  while (!stack.empty()) {
    Term t = stack.back();
    stack.pop_back();
    if (t.is_var()) name_of(t.var_id(), t);
    else
      for (const auto& a : t.args()) stack.push_back(a);
  }
  Rule out = r;
  for (auto& h : out.head) h = substitute(h, named);
  for (auto& l : out.body) l = substitute(l, named);
  return out;
}

std::vector<Rule> defn(const Literal& atom, const Program& program) {
  std::vector<Rule> out;
  const PredKey k = atom.key();
  for (const auto& r : program.rules)
    if (r.key() == k) out.push_back(rename_apart(r));
  return out;
}

}  // namespace hiord
