#include "doctest.h"
#include "hiord/parser.hpp"
#include "hiord/regtype.hpp"
#include "hiord/store.hpp"
#include "hiord/typedefs.hpp"

using namespace hiord;

namespace {
Term T(const std::string& text) {
  Query q = parse_query("X = " + text);
  return q.goals.at(0).args.at(1);
}
}  // namespace

TEST_CASE("terms print and compare in standard order") {
  CHECK(T("f(a, [1,2|Y])").to_string(true) == "f(a,[1,2|_])");
  CHECK(T("'BAD_REQ'").to_string() == "'BAD_REQ'");
  CHECK(T("-3").int_value() == -3);
  CHECK(compare_terms(Term::fresh(), Term::integer(0)) < 0);
  CHECK(compare_terms(Term::integer(9), Term::atom("a")) < 0);
  CHECK(compare_terms(Term::atom("z"), T("f(a)")) < 0);
  CHECK(compare_terms(T("f(a)"), T("f(b)")) < 0);
  CHECK(T("g(X, X)").vars().size() == 1);
}

TEST_CASE("store unification with occurs check") {
  Store s;
  Term x = Term::fresh("X"), y = Term::fresh("Y");
  CHECK(s.unify(x, Term::compound("f", {y})));
  CHECK(s.unify(y, Term::atom("a")));
  CHECK(s.resolve(x).to_string() == "f(a)");
  Store t;
  CHECK_FALSE(t.unify(x, Term::compound("f", {x})));
  Store u;
  CHECK_FALSE(u.unify(T("f(a)"), T("f(b)")));
}

TEST_CASE("parser reads clauses, assertions and predicate properties") {
  Program p = parse_program(R"(
:- regtype t/1.
t(a). t(b).
:- prop even/1.
even(X) :- 0 is X mod 2.
cmp := { :- pred _(X,Y) : t(X) => t(Y). }.
:- pred f(X,P) : (t(X), cmp(P)) => t(X).
f(X, P) :- P(X, _).
:- entry f(a, g).
)");
  CHECK(p.regtypes.count({"t", 1}) == 1);
  CHECK(p.props.count({"even", 1}) == 1);
  REQUIRE(p.find_pred_prop("cmp"));
  CHECK(p.find_pred_prop("cmp")->arity == 2);
  CHECK(p.assertions.at({"f", 2}).size() == 1);
  CHECK(p.entries.size() == 1);
  auto rs = p.rules_of({"f", 2});
  REQUIRE(rs.size() == 1);
  CHECK(rs[0]->body.back().kind == Literal::Kind::HigherOrder);
  CHECK(rs[0]->line == 8);
}

TEST_CASE("parse errors are collected with positions") {
  try {
    parse_program("p(X :- q.\nr(.\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    REQUIRE(!e.errors().empty());
    CHECK(e.errors()[0].line == 1);
  }
}

TEST_CASE("entry syntax") {
  EntryDecl e = parse_entry("qsort(Xs, lex_t, Ys) : list(t, Xs)");
  CHECK(e.goal.name() == "qsort");
  REQUIRE(e.pre);
  CHECK(e.pre->to_string() == "list(t,Xs)");
}

TEST_CASE("regular types: lattice operations") {
  RegType nat = RegType::leaf(BaseType::Nat), in = RegType::leaf(BaseType::Int);
  RegType a = RegType::atom("a"), b = RegType::atom("b");
  CHECK(subset(nat, in));
  CHECK_FALSE(subset(in, nat));
  CHECK(intersect(nat, RegType::leaf(BaseType::Atm)).is_empty());
  CHECK(equivalent(intersect(in, nat), nat));
  CHECK(subset(RegType::integer(0), nat));
  CHECK_FALSE(subset(RegType::integer(-1), nat));
  CHECK(subset(RegType::integer(-1), in));
  RegType ab = unite(a, b);
  CHECK(ab.contains(Term::atom("b")));
  CHECK_FALSE(ab.contains(Term::atom("c")));
  CHECK(ab.constant_names() == std::set<std::string>{"a", "b"});
  RegType la = RegType::list_of(a);
  CHECK(la.contains(Term::list({Term::atom("a"), Term::atom("a")})));
  CHECK_FALSE(la.contains(Term::list({Term::atom("b")})));
  CHECK(subset(la, RegType::list_of(ab)));
  CHECK(equivalent(la.children_of(".", 2, 0), a));
  CHECK(RegType::any().is_any());
  CHECK(subset(la, RegType::any()));
}

TEST_CASE("regular types: widening collapses growing lists") {
  RegType one = RegType::of_term(Term::list({Term::atom("a")}));
  RegType two = RegType::of_term(Term::list({Term::atom("a"), Term::atom("a")}));
  RegType w = unite(RegType::atom("[]"), unite(one, two)).widen();
  CHECK(subset(w, RegType::list_of(RegType::atom("a"))));
  CHECK(w.contains(Term::list({Term::atom("a"), Term::atom("a"), Term::atom("a")})));
  CHECK(w.to_string() == "list(a)");
}

TEST_CASE("regular types: enumeration is ordered and stays inside the type") {
  RegType l = RegType::list_of(unite(RegType::atom("r"), RegType::atom("w")));
  auto ts = l.enumerate(3, 50);
  REQUIRE(!ts.empty());
  CHECK(ts.front().is_nil());
  for (const auto& t : ts) CHECK(l.contains(t));
}

TEST_CASE("type definitions from regtype clauses") {
  Program p = parse_program(R"(
:- regtype color/1.
color(r). color(w). color(b).
:- regtype tree/1.
tree(leaf).
tree(node(L, X, R)) :- tree(L), int(X), tree(R).
)");
  TypeDefinitions defs(p);
  auto c = defs.lookup("color");
  REQUIRE(c);
  CHECK(c->constant_names() == std::set<std::string>{"b", "r", "w"});
  auto t = defs.lookup("tree");
  REQUIRE(t);
  CHECK(t->contains(T("node(leaf, 3, node(leaf, -1, leaf))")));
  CHECK_FALSE(t->contains(T("node(leaf, a, leaf)")));
  CHECK(defs.lookup("int"));
  CHECK_FALSE(defs.lookup("nope"));
}

TEST_CASE("regular types: equivalent nodes are merged") {
  RegType l0 = RegType::list_of(RegType::integer(0));
  RegType li = RegType::list_of(RegType::leaf(BaseType::Int));
  RegType a = unite(unite(RegType::atom("a"), l0), unite(li, l0));
  CHECK(a.to_string() == "[]|a|.(0,list(0))|.(int,list(int))");
  CHECK(a.node_count() == 5);
}

TEST_CASE("regular types: inclusion between nondeterministic grammars") {
  RegType l0 = RegType::list_of(RegType::integer(0));
  RegType li = RegType::list_of(RegType::leaf(BaseType::Int));
  RegType a = unite(unite(RegType::atom("a"), l0), li);
  RegType b = unite(RegType::integer(0), RegType::list_of(RegType::any()));
  RegType m = intersect(a, unite(a, b));
  CHECK(equivalent(m, a));
  CHECK(equivalent(unite(a, intersect(a, b)), a));
  // pairs: (0|1, 0|1) is covered by (0, 0|1) and (1, 0|1) but not by (0,0),(1,1)
  auto pair = [](const RegType& x, const RegType& y) { return RegType::constructor("p", {x, y}); };
  RegType zo = unite(RegType::integer(0), RegType::integer(1));
  RegType z = RegType::integer(0), o = RegType::integer(1);
  CHECK(subset(pair(zo, zo), unite(pair(z, zo), pair(o, zo))));
  CHECK_FALSE(subset(pair(zo, zo), unite(pair(z, z), pair(o, o))));
  CHECK(subset(pair(zo, zo), unite(unite(pair(z, z), pair(o, o)), unite(pair(z, o), pair(o, z)))));
}
