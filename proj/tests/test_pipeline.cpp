#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "doctest.h"
#include "hiord/analysis.hpp"
#include "hiord/parser.hpp"
#include "hiord/report.hpp"
#include "hiord/verifier.hpp"
#include "json.hpp"

using namespace hiord;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(HIORD_CORPUS) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

VerifyResult verify_file(const std::string& name, std::vector<std::string> entries = {}) {
  VerifyOptions o;
  for (const auto& e : entries) o.entries.push_back(parse_entry(e));
  return verify(parse_program(slurp(name), name), o);
}

const PropertyVerdict* find(const VerifyResult& r, const std::string& pred, const std::string& prop) {
  for (const auto& v : r.conformance)
    if (v.pred.name == pred && v.property == prop) return &v;
  return nullptr;
}

const AssertionVerdict* find_assertion(const VerifyResult& r, const std::string& pred, const std::string& kind) {
  for (const auto& v : r.assertions)
    if (v.pred.name == pred && v.kind == kind) return &v;
  return nullptr;
}

}  // namespace

TEST_CASE("analysis: list builtin and append") {
  Program p = parse_program(R"(
app([], Ys, Ys).
app([X|Xs], Ys, [X|Zs]) :- app(Xs, Ys, Zs).
)");
  RegTypeDomain d(p);
  Analyzer an(p, d);
  RegType la = RegType::list_of(RegType::atom("a"));
  auto s = an.success({"app", 3}, {la, la, RegType::any()});
  REQUIRE(s);
  CHECK(subset((*s)[2], RegType::list_of(RegType::atom("a"))));
  CHECK(subset(RegType::atom("[]"), (*s)[2]));
  CHECK_FALSE(an.incomplete());
  // a non-list first argument cannot succeed
  auto none = an.success({"app", 3}, {RegType::atom("a"), la, RegType::any()});
  CHECK_FALSE(none);
}

TEST_CASE("analysis: type tests narrow and unknown predicates fail") {
  Program p = parse_program(R"(
f(X) :- list(X).
g(X) :- int(X), X > 0.
h(X) :- undefined_thing(X).
)");
  RegTypeDomain d(p);
  Analyzer an(p, d);
  auto f = an.success({"f", 1}, {RegType::any()});
  REQUIRE(f);
  CHECK(equivalent((*f)[0], RegType::list_of(RegType::any())));
  auto g = an.success({"g", 1}, {RegType::any()});
  REQUIRE(g);
  CHECK(subset((*g)[0], RegType::leaf(BaseType::Int)));
  CHECK_FALSE(an.success({"h", 1}, {RegType::any()}));
}

TEST_CASE("analysis: higher-order calls resolve to named predicates") {
  Program p = parse_program(R"(
ap(P, X) :- P(X).
one(1).
two(2).
)");
  RegTypeDomain d(p);
  Analyzer an(p, d);
  auto s = an.success({"ap", 2}, {unite(RegType::atom("one"), RegType::atom("two")), RegType::any()});
  REQUIRE(s);
  CHECK(equivalent((*s)[1], unite(RegType::integer(1), RegType::integer(2))));
  REQUIRE(an.higher_order_sites().size() >= 1);
  CHECK(an.higher_order_sites()[0].targets == std::set<std::string>{"one", "two"});
  CHECK_FALSE(an.resolve_higher_order(RegType::any(), 1));
}

TEST_CASE("inference names output positions from property posts") {
  Program p = parse_program(slurp("fig1.pl"));
  CHECK(output_positions(p, 2) == std::set<std::size_t>{1});
  CHECK(output_positions(p, 3).empty());
}

TEST_CASE("verifier: qsort with lex leaves a check and a warning") {
  VerifyResult r = verify_file("qsort.pl", {"qsort(Xs, lex, Ys)"});
  const auto* calls = find_assertion(r, "qsort", "calls");
  REQUIRE(calls);
  CHECK(calls->status == Status::Check);
  CHECK(r.exit_code() == 2);
  bool warned = false;
  for (const auto& w : r.warnings) warned = warned || w.find("lex/2") != std::string::npos;
  CHECK(warned);
  CHECK(find(r, "lex", "t_cmp")->verdict == TriState::Maybe);
}

TEST_CASE("verifier: qsort with lex_t checks everything") {
  VerifyResult r = verify_file("qsort.pl", {"qsort(Xs, lex_t, Ys)"});
  for (const auto& a : r.assertions) {
    CAPTURE(a.text);
    CHECK(a.status == Status::Checked);
  }
  CHECK(r.exit_code() == 0);
  CHECK(find(r, "lex_t", "t_cmp")->verdict == TriState::Yes);
}

TEST_CASE("verifier: t_sort needs a second iteration for qsort") {
  VerifyResult r = verify_file("t_sort.pl");
  CHECK(r.fixpoint);
  CHECK(r.first_yes.at({"t_sort", "qsort"}) == 2);
  CHECK(r.first_yes.at({"t_cmp", "lex_t"}) == 1);
  CHECK(r.tables.at("t_sort").minus.count("qsort") == 1);
  CHECK(r.exit_code() == 0);
}

TEST_CASE("verifier: http handler is only weakly conformant") {
  VerifyResult r = verify_file("http.pl");
  const auto* h = find(r, "h", "handler");
  REQUIRE(h);
  CHECK(h->verdict == TriState::Maybe);
  bool cited = false;
  for (const auto& c : h->culprits) cited = cited || c.find("'BAD_REQ'") != std::string::npos;
  CHECK(cited);
  CHECK(r.tables.at("handler").plus.count("h") == 1);
  CHECK(r.tables.at("handler").minus.count("h") == 0);
}

TEST_CASE("verifier: Dutch flag versions") {
  struct Case {
    const char* file;
    TriState verdict;
    int exit;
  };
  const Case cases[] = {{"dutch_v1.pl", TriState::No, 1},
                        {"dutch_v2.pl", TriState::Maybe, 2},
                        {"dutch_v3.pl", TriState::Maybe, 2},
                        {"dutch_final.pl", TriState::Yes, 0}};
  for (const auto& c : cases) {
    CAPTURE(c.file);
    VerifyResult r = verify_file(c.file);
    const auto* v = find(r, "cmp", "dutch_cmp");
    REQUIRE(v);
    CHECK(v->verdict == c.verdict);
    CHECK(r.exit_code() == c.exit);
  }
}

TEST_CASE("verifier: an unresolved higher-order call forces checks") {
  Program p = parse_program(R"(
:- pred inc(X,Y) : int(X) => int(Y).
inc(X,Y) :- Y is X + 1.
ap(P, X, Y) :- P(X, Y).
:- entry ap(P, 1, Y).
)");
  VerifyResult r = verify(std::move(p));
  CHECK(find_assertion(r, "inc", "calls")->status == Status::Check);
  CHECK(find_assertion(r, "inc", "success")->status == Status::Checked);
  CHECK(r.exit_code() == 2);
  REQUIRE(!r.warnings.empty());
  CHECK(r.warnings[0].find("cannot determine") != std::string::npos);
}

TEST_CASE("verifier: empty program") {
  VerifyResult r = verify_file("empty.pl");
  CHECK(r.assertions.empty());
  CHECK(r.conformance.empty());
  CHECK(r.exit_code() == 0);
}

TEST_CASE("report: JSON shape and stability") {
  VerifyResult r = verify_file("fig1.pl");
  std::string a = render_json(r), b = render_json(verify_file("fig1.pl"));
  CHECK(a == b);
  auto j = nlohmann::json::parse(a);
  CHECK(j["version"] == kReportVersion);
  REQUIRE(j["assertions"].is_array());
  REQUIRE(j["conformance"].size() == 5);
  for (const auto& key : {"pred", "arity", "kind", "status", "reason", "span"}) CHECK(j["assertions"][0].contains(key));
  for (const auto& key : {"pred", "property", "verdict", "basis"}) CHECK(j["conformance"][0].contains(key));
  CHECK(j["warnings"].is_array());
  CHECK(render_text(r, false).find("\x1b[") == std::string::npos);
}

#ifdef HIORD_EXE
namespace {
int shell(const std::string& args, std::string* out = nullptr) {
  std::string cmd = std::string(HIORD_EXE) + " " + args + " 2>&1";
  std::unique_ptr<FILE, int (*)(FILE*)> p(popen(cmd.c_str(), "r"), pclose);
  std::string text;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p.get())) > 0) text.append(buf, n);
  int status = pclose(p.release());
  if (out) *out = text;
  return WEXITSTATUS(status);
}
std::string corpus(const std::string& f) { return std::string(HIORD_CORPUS) + "/" + f; }
}  // namespace

TEST_CASE("cli: exit codes") {
  CHECK(shell("check " + corpus("qsort.pl") + " --entry 'qsort(Xs,lex_t,Ys)'") == 0);
  CHECK(shell("check " + corpus("qsort.pl") + " --entry 'qsort(Xs,lex,Ys)'") == 2);
  CHECK(shell("check " + corpus("dutch_v1.pl")) == 1);
  CHECK(shell("check " + corpus("empty.pl")) == 0);
  CHECK(shell("check " + corpus("dutch_v1.pl") + " " + corpus("dutch_final.pl")) == 1);
  CHECK(shell("check /nonexistent.pl") == 3);
  CHECK(shell("frobnicate") == 3);
  CHECK(shell("check " + corpus("qsort.pl") + " --entry 'qsort(('") == 3);
  CHECK(shell("conformance " + corpus("dutch_v1.pl")) == 0);
}

TEST_CASE("cli: run and JSON output") {
  std::string out;
  CHECK(shell("run " + corpus("qsort.pl") + " 'qsort([c,a,b], lex_t, Ys)'", &out) == 0);
  CHECK(out.find("Ys = [a,b,c]") != std::string::npos);
  CHECK(shell("check " + corpus("fig1.pl") + " --report json", &out) == 0);
  auto j = nlohmann::json::parse(out);
  CHECK(j["conformance"].size() == 5);
}
#endif
