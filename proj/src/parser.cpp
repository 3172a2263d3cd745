#include "hiord/parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "hiord/builtins.hpp"

namespace hiord {

ParseError::ParseError(std::vector<Diagnostic> errors)
    : std::runtime_error(errors.empty() ? "parse error" : errors.front().str()),
      errors_(std::move(errors)) {}

namespace {

enum class Tok { Var, Atom, Int, Punct, End, Eof };

struct Token {
  Tok kind = Tok::Eof;
  std::string text;
  long long value = 0;
  int line = 1;
  int col = 1;
  bool layout_before = false;  // whitespace precedes the token
  bool quoted = false;
};

const std::string kSymbolChars = "+-*/\\^<>=~:.?@#&$";

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      bool layout = skip_layout();
      Token t;
      t.line = line_;
      t.col = col_;
      t.layout_before = layout;
      if (pos_ >= src_.size()) {
        t.kind = Tok::Eof;
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string digits;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) digits += get();
        t.kind = Tok::Int;
        t.text = digits;
        t.value = std::stoll(digits);
      } else if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Var;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          t.text += get();
      } else if (std::islower(static_cast<unsigned char>(c))) {
        t.kind = Tok::Atom;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          t.text += get();
      } else if (c == '\'') {
        get();
        t.kind = Tok::Atom;
        t.quoted = true;
        for (;;) {
          if (pos_ >= src_.size()) throw error(t, "unterminated quoted atom");
          char d = get();
          if (d == '\\' && pos_ < src_.size()) {
            t.text += get();
          } else if (d == '\'') {
            if (pos_ < src_.size() && src_[pos_] == '\'') t.text += get();
            else break;
          } else {
            t.text += d;
          }
        }
      } else if (c == '.' && end_follows(pos_ + 1)) {
        get();
        t.kind = Tok::End;
        t.text = ".";
      } else if (std::string("()[]{},|").find(c) != std::string::npos) {
        t.kind = Tok::Punct;
        t.text = std::string(1, get());
      } else if (c == '!' || c == ';') {
        t.kind = Tok::Atom;
        t.text = std::string(1, get());
      } else if (kSymbolChars.find(c) != std::string::npos) {
        t.kind = Tok::Atom;
        while (pos_ < src_.size() && kSymbolChars.find(src_[pos_]) != std::string::npos) {
          if (src_[pos_] == '.' && end_follows(pos_ + 1) && !t.text.empty()) break;
          t.text += get();
        }
      } else {
        throw error(t, std::string("unexpected character '") + c + "'");
      }
      out.push_back(t);
    }
  }

 private:
  Diagnostic error(const Token& t, std::string msg) { return {t.line, t.col, std::move(msg)}; }

  bool end_follows(std::size_t p) const {
    return p >= src_.size() || std::isspace(static_cast<unsigned char>(src_[p])) || src_[p] == '%';
  }

  char get() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  bool skip_layout() {
    bool any = false;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        get();
        any = true;
      } else if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') get();
        any = true;
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
        get();
        get();
        while (pos_ + 1 < src_.size() && !(src_[pos_] == '*' && src_[pos_ + 1] == '/')) get();
        if (pos_ + 1 < src_.size()) {
          get();
          get();
        }
        any = true;
      } else {
        break;
      }
    }
    return any;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct OpDef {
  int prec;
  int left_max;
  int right_max;
};

std::optional<OpDef> infix_op(const std::string& name) {
  auto xfx = [](int p) { return OpDef{p, p - 1, p - 1}; };
  auto xfy = [](int p) { return OpDef{p, p - 1, p}; };
  auto yfx = [](int p) { return OpDef{p, p, p - 1}; };
  if (name == ":-") return xfx(1200);
  if (name == ";") return xfy(1100);
  if (name == "=>") return xfx(1050);
  if (name == ",") return xfy(1000);
  if (name == ":") return xfx(975);
  static const char* rel[] = {"=", "is", "<", ">", "=<", ">=", "=:=", "=\\=", "@<", "@>", "@=<", "@>=", "==", "\\=="};
  for (const char* r : rel)
    if (name == r) return xfx(700);
  if (name == "+" || name == "-") return yfx(500);
  if (name == "*" || name == "/" || name == "//" || name == "mod") return yfx(400);
  return std::nullopt;
}

constexpr const char* kCallFunctor = "$call";

/// Reads Prolog-style terms from a token stream. Variables are scoped per
/// clause through `vars`.
class Reader {
 public:
  Reader(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool at_eof() const { return peek().kind == Tok::Eof; }

  bool is_punct(const Token& t, const char* p) const { return t.kind == Tok::Punct && t.text == p; }
  bool is_atom(const Token& t, const char* a) const { return t.kind == Tok::Atom && t.text == a; }

  Diagnostic err(const Token& t, std::string msg) const { return {t.line, t.col, std::move(msg)}; }

  void expect_punct(const char* p) {
    Token t = next();
    if (!is_punct(t, p)) throw err(t, std::string("expected '") + p + "' but found '" + t.text + "'");
  }
  void expect_end() {
    Token t = next();
    if (t.kind != Tok::End) throw err(t, "expected end of clause '.' but found '" + t.text + "'");
  }

  void skip_to_end() {
    while (!at_eof() && peek().kind != Tok::End) next();
    if (!at_eof()) next();
  }

  void reset_scope() { vars.clear(); }

  Term read(int max_prec) {
    Term left = read_primary(max_prec);
    int left_prec = last_primary_prec_;
    for (;;) {
      const Token& t = peek();
      std::string op;
      if (t.kind == Tok::Atom && !t.quoted) op = t.text;
      else if (is_punct(t, ",")) op = ",";
      else break;
      auto def = infix_op(op);
      if (!def || def->prec > max_prec || left_prec > def->left_max) break;
      next();
      Term right = read(def->right_max);
      std::string functor = op == "," ? "," : op;
      left = Term::compound(functor, {left, right});
      left_prec = def->prec;
    }
    return left;
  }

  std::map<std::string, Term> vars;

 private:
  bool is_terminator(const Token& t) const {
    if (t.kind == Tok::End || t.kind == Tok::Eof) return true;
    if (t.kind == Tok::Punct) return t.text == "," || t.text == ")" || t.text == "|" || t.text == "]" || t.text == "}";
    if (t.kind == Tok::Atom && !t.quoted) {
      auto d = infix_op(t.text);
      return d.has_value() && t.text != "-" && t.text != "+";
    }
    return false;
  }

  Term var_term(const std::string& name) {
    if (name == "_") return Term::fresh("_");
    auto it = vars.find(name);
    if (it != vars.end()) return it->second;
    Term v = Term::fresh(name);
    vars.emplace(name, v);
    return v;
  }

  std::vector<Term> read_args() {
    expect_punct("(");
    std::vector<Term> args;
    for (;;) {
      args.push_back(read(999));
      Token t = next();
      if (is_punct(t, ")")) break;
      if (!is_punct(t, ",")) throw err(t, "expected ',' or ')' in argument list");
    }
    return args;
  }

  Term read_primary(int max_prec) {
    last_primary_prec_ = 0;
    Token t = next();
    switch (t.kind) {
      case Tok::Int: return Term::integer(t.value);
      case Tok::Var: {
        if (is_punct(peek(), "(") && !peek().layout_before) {
          std::vector<Term> args = read_args();
          args.insert(args.begin(), var_term(t.text));
          return Term::compound(kCallFunctor, std::move(args));
        }
        return var_term(t.text);
      }
      case Tok::Punct: {
        if (t.text == "(") {
          Term inner = read(1200);
          expect_punct(")");
          return inner;
        }
        if (t.text == "[") return read_list();
        if (t.text == "{") {
          if (is_punct(peek(), "}")) {
            next();
            return Term::atom("{}");
          }
          Term inner = read(1200);
          expect_punct("}");
          return Term::compound("{}", {inner});
        }
        throw err(t, "unexpected '" + t.text + "'");
      }
      case Tok::Atom: {
        if (is_punct(peek(), "(") && !peek().layout_before) return Term::compound(t.text, read_args());
        if (!t.quoted && t.text == "-" && peek().kind == Tok::Int && !peek().layout_before) {
          return Term::integer(-next().value);
        }
        if (!t.quoted && (t.text == "-" || t.text == "+") && !is_terminator(peek())) {
          Term arg = read(200);
          return t.text == "-" ? Term::compound("-", {arg}) : arg;
        }
        if (!t.quoted && infix_op(t.text) && infix_op(t.text)->prec > max_prec) last_primary_prec_ = 0;
        return Term::atom(t.text);
      }
      case Tok::End: throw err(t, "unexpected end of clause");
      case Tok::Eof: throw err(t, "unexpected end of input");
    }
    throw err(t, "unexpected token");
  }

  Term read_list() {
    if (is_punct(peek(), "]")) {
      next();
      return Term::nil();
    }
    std::vector<Term> items;
    Term tail = Term::nil();
    for (;;) {
      items.push_back(read(999));
      Token t = next();
      if (is_punct(t, ",")) continue;
      if (is_punct(t, "|")) {
        tail = read(999);
        expect_punct("]");
        break;
      }
      if (is_punct(t, "]")) break;
      throw err(t, "expected ',', '|' or ']' in list");
    }
    return Term::list(items, tail);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int last_primary_prec_ = 0;
};

bool is_call(const Term& t) { return t.is_compound() && t.name() == kCallFunctor; }

void reject_var_functors(const Term& t, const Token& where, const Reader& rd) {
  if (is_call(t)) throw rd.err(where, "variable in functor position: " + t.arg(0).to_string());
  for (const auto& a : t.args()) reject_var_functors(a, where, rd);
}

bool is_cmp_op(const std::string& n) {
  return n == "<" || n == ">" || n == "=<" || n == ">=" || n == "=:=" || n == "=\\=";
}

void flatten(const Term& t, const char* op, std::vector<Term>& out) {
  if (t.is_compound() && t.arity() == 2 && t.name() == op) {
    flatten(t.arg(0), op, out);
    flatten(t.arg(1), op, out);
  } else {
    out.push_back(t);
  }
}

Literal to_literal(const Term& t, const Token& where, const Reader& rd) {
  Literal l;
  l.line = where.line;
  if (t.is_var()) throw rd.err(where, "variable as a goal; write it as a call with arguments");
  if (t.is_int()) throw rd.err(where, "integer as a goal");
  if (is_call(t)) {
    std::vector<Term> args(t.args().begin() + 1, t.args().end());
    for (const auto& a : args) reject_var_functors(a, where, rd);
    l = Literal::higher_order(t.arg(0), std::move(args));
    l.line = where.line;
    return l;
  }
  for (const auto& a : t.args()) reject_var_functors(a, where, rd);
  const auto& n = t.name();
  if (t.arity() == 2 && n == "=") {
    l = Literal::eq(t.arg(0), t.arg(1));
  } else if (t.arity() == 2 && n == "is") {
    l.kind = Literal::Kind::Is;
    l.name = "is";
    l.args = t.args();
  } else if (t.arity() == 2 && is_cmp_op(n)) {
    l.kind = Literal::Kind::Cmp;
    l.name = n;
    l.args = t.args();
  } else if (n == ";" || n == "->" || n == "\\+") {
    throw rd.err(where, "'" + n + "' in clause bodies is not supported");
  } else {
    l = Literal::atom(n, t.args());
  }
  l.line = where.line;
  return l;
}

PropFormula to_formula(const Term& t, const Token& where, const Reader& rd) {
  std::vector<Term> alts;
  flatten(t, ";", alts);
  PropFormula f;
  f.disjuncts.clear();
  for (const auto& alt : alts) {
    std::vector<Term> lits;
    flatten(alt, ",", lits);
    std::vector<PropLit> conj;
    for (const auto& lt : lits) {
      if (lt.is_var() || lt.is_int() || is_call(lt)) throw rd.err(where, "invalid property literal " + lt.to_string());
      if (lt.is_atom() && lt.name() == "true") continue;
      for (const auto& a : lt.args()) reject_var_functors(a, where, rd);
      conj.push_back(PropLit{lt.name(), lt.args(), nullptr});
    }
    f.disjuncts.push_back(std::move(conj));
  }
  return f;
}

/// Split `H`, `H : Pre`, `H => Post`, `H : Pre => Post`.
void split_assertion(const Term& t, Term& head, std::optional<Term>& pre, std::optional<Term>& post) {
  Term body = t;
  if (body.is_compound() && body.arity() == 2 && body.name() == "=>") {
    post = body.arg(1);
    body = body.arg(0);
  }
  if (body.is_compound() && body.arity() == 2 && body.name() == ":") {
    pre = body.arg(1);
    body = body.arg(0);
  }
  head = body;
}

PredKey indicator(const Term& t, const Token& where, const Reader& rd) {
  if (!(t.is_compound() && t.arity() == 2 && t.name() == "/" && t.arg(0).is_atom() && t.arg(1).is_int()))
    throw rd.err(where, "expected a predicate indicator name/arity, found " + t.to_string());
  return {t.arg(0).name(), static_cast<int>(t.arg(1).int_value())};
}

std::vector<Term> head_vars(const std::vector<Term>& args, const Token& where, const Reader& rd, const char* what) {
  std::set<VarId> seen;
  for (const auto& a : args) {
    if (!a.is_var() || !seen.insert(a.var_id()).second)
      throw rd.err(where, std::string(what) + " head arguments must be distinct variables");
  }
  return args;
}

class ProgramBuilder {
 public:
  ProgramBuilder(Reader& rd, Program& prog) : rd_(rd), prog_(prog) {}

  void clause() {
    rd_.reset_scope();
    const Token start = rd_.peek();
    if (rd_.is_atom(start, ":-")) {
      rd_.next();
      directive(start);
      return;
    }
    if (start.kind == Tok::Atom && rd_.is_atom(rd_.peek(1), ":=")) {
      rd_.next();
      rd_.next();
      functional(start);
      return;
    }
    Term t = rd_.read(1200);
    rd_.expect_end();
    Term head = t;
    std::vector<Term> goals;
    if (t.is_compound() && t.arity() == 2 && t.name() == ":-") {
      head = t.arg(0);
      flatten(t.arg(1), ",", goals);
    }
    add_rule(head, goals, start);
  }

 private:
  void add_rule(const Term& head, const std::vector<Term>& goals, const Token& where) {
    if (head.is_var() || head.is_int() || is_call(head)) throw rd_.err(where, "invalid clause head " + head.to_string());
    reject_var_functors(head, where, rd_);
    Rule r;
    r.pred = head.name();
    r.line = where.line;
    std::set<VarId> seen;
    int k = 0;
    for (const auto& a : head.args()) {
      ++k;
      if (a.is_var() && seen.insert(a.var_id()).second) {
        r.head.push_back(a);
        continue;
      }
      Term v = Term::fresh("_V" + std::to_string(k));
      r.head.push_back(v);
      Literal eq = Literal::eq(v, a, true);
      eq.line = where.line;
      r.body.push_back(eq);
    }
    for (const auto& g : goals) {
      if (g.is_atom() && g.name() == "true") continue;
      r.body.push_back(to_literal(g, where, rd_));
    }
    prog_.rules.push_back(std::move(r));
  }

  void directive(const Token& start) {
    Token kw = rd_.next();
    if (kw.kind != Tok::Atom) throw rd_.err(kw, "expected a directive name");
    if (kw.text == "prop" || kw.text == "regtype") {
      Term t = rd_.read(1200);
      rd_.expect_end();
      std::vector<Term> inds;
      flatten(t, ",", inds);
      for (const auto& i : inds) {
        PredKey k = indicator(i, kw, rd_);
        if (kw.text == "regtype") {
          if (k.arity != 1) throw rd_.err(kw, "parametric regtypes are not supported: " + k.str());
          prog_.regtypes.insert(k);
        } else {
          prog_.props.insert(k);
        }
      }
    } else if (kw.text == "pred") {
      Term t = rd_.read(1200);
      rd_.expect_end();
      Term head;
      std::optional<Term> pre, post;
      split_assertion(t, head, pre, post);
      if (is_call(head)) throw rd_.err(kw, "anonymous assertions are only allowed inside a predicate property");
      if (head.is_var() || head.is_int()) throw rd_.err(kw, "invalid assertion head");
      PredAssertion a;
      a.pred = head.name();
      a.head = head_vars(head.args(), kw, rd_, "assertion");
      a.pre = pre ? to_formula(*pre, kw, rd_) : PropFormula::truth();
      a.post = post ? to_formula(*post, kw, rd_) : PropFormula::truth();
      a.line = start.line;
      auto& list = prog_.assertions[a.key()];
      if (list.empty()) prog_.asserted_order.push_back(a.key());
      list.push_back(std::move(a));
    } else if (kw.text == "entry") {
      Term t = rd_.read(1200);
      rd_.expect_end();
      Term head;
      std::optional<Term> pre, post;
      split_assertion(t, head, pre, post);
      if (post) throw rd_.err(kw, "entry declarations take no post-condition");
      if (head.is_var() || head.is_int() || is_call(head)) throw rd_.err(kw, "invalid entry goal");
      EntryDecl e;
      e.goal = head;
      if (pre) e.pre = to_formula(*pre, kw, rd_);
      e.line = start.line;
      prog_.entries.push_back(std::move(e));
    } else if (kw.text == "wrap") {
      WrapDecl w;
      w.line = start.line;
      w.target = indicator(rd_.read(999), kw, rd_);
      Token with = rd_.next();
      if (!rd_.is_atom(with, "with")) throw rd_.err(with, "expected 'with'");
      Token prop = rd_.next();
      if (prop.kind != Tok::Atom) throw rd_.err(prop, "expected a predicate property name");
      Token as = rd_.next();
      if (!rd_.is_atom(as, "as")) throw rd_.err(as, "expected 'as'");
      Token name = rd_.next();
      if (name.kind != Tok::Atom) throw rd_.err(name, "expected the wrapper name");
      rd_.expect_end();
      w.property = prop.text;
      w.name = name.text;
      prog_.wraps.push_back(std::move(w));
    } else {
      throw rd_.err(kw, "unknown directive '" + kw.text + "'");
    }
  }

  void functional(const Token& name) {
    if (rd_.is_punct(rd_.peek(), "{")) {
      rd_.next();
      predicate_property(name);
      return;
    }
    std::vector<Term> alts;
    for (;;) {
      alts.push_back(rd_.read(999));
      Token t = rd_.next();
      if (t.kind == Tok::End) break;
      if (!rd_.is_punct(t, "|")) throw rd_.err(t, "expected '|' or '.' in a type definition");
    }
    for (const auto& a : alts) {
      if (!a.ground()) throw rd_.err(name, "type alternatives must be ground terms");
      add_rule(Term::compound(name.text, {a}), {}, name);
    }
  }

  void predicate_property(const Token& name) {
    if (prog_.find_pred_prop(name.text))
      throw rd_.err(name, "duplicate predicate property '" + name.text + "'");
    PredicateProperty pp;
    pp.name = name.text;
    pp.line = name.line;
    while (!rd_.is_punct(rd_.peek(), "}")) {
      rd_.reset_scope();
      Token dir = rd_.next();
      if (!rd_.is_atom(dir, ":-")) throw rd_.err(dir, "expected ':- pred' inside a predicate property");
      Token kw = rd_.next();
      if (!rd_.is_atom(kw, "pred")) throw rd_.err(kw, "expected 'pred'");
      Term t = rd_.read(1200);
      rd_.expect_end();
      Term head;
      std::optional<Term> pre, post;
      split_assertion(t, head, pre, post);
      AnonAssertion a;
      a.line = kw.line;
      if (is_call(head)) {
        if (head.arg(0).name() != "_") throw rd_.err(kw, "anonymous assertion head must use the '_' placeholder");
        a.params = head_vars({head.args().begin() + 1, head.args().end()}, kw, rd_, "anonymous assertion");
      } else if (head.is_atom() && head.name() == "_") {
        // zero-arity placeholder
      } else {
        throw rd_.err(kw, "anonymous assertion head must be of the form _(V1,...,Vn)");
      }
      a.pre = pre ? to_formula(*pre, kw, rd_) : PropFormula::truth();
      a.post = post ? to_formula(*post, kw, rd_) : PropFormula::truth();
      if (!pp.members.empty() && static_cast<int>(a.params.size()) != pp.arity)
        throw rd_.err(kw, "anonymous assertions of '" + pp.name + "' disagree on arity");
      pp.arity = static_cast<int>(a.params.size());
      pp.members.push_back(std::move(a));
    }
    rd_.next();
    rd_.expect_end();
    if (pp.members.empty()) throw rd_.err(name, "predicate property '" + pp.name + "' has no assertions");
    prog_.pred_props.push_back(std::move(pp));
  }

  Reader& rd_;
  Program& prog_;
};

void validate(Program& prog, std::vector<Diagnostic>& errors) {
  for (const auto& k : prog.asserted_order) {
    if (prog.props.count(k) || prog.regtypes.count(k)) {
      int line = prog.assertions.at(k).front().line;
      errors.push_back({line, 1, "predicate " + k.str() + " is declared as a property and also has pred assertions"});
    }
  }
  auto known = [&](const PredKey& k) {
    return prog.defines(k) || is_builtin(k) || prog.find_pred_prop(k.name) != nullptr;
  };
  std::set<PredKey> reported;
  for (const auto& r : prog.rules)
    for (const auto& l : r.body)
      if (l.kind == Literal::Kind::Atom && !known(l.key()) && reported.insert(l.key()).second)
        prog.warnings.push_back({l.line, 1, "unknown predicate " + l.key().str()});
  auto check_formula = [&](const PropFormula& f, int line) {
    for (const auto& c : f.disjuncts)
      for (const auto& l : c) {
        const PredKey k = l.key();
        bool ok = prog.props.count(k) || prog.regtypes.count(k) || is_builtin_property(k) ||
                  (k.arity == 1 && prog.find_pred_prop(k.name));
        if (!ok && reported.insert(k).second)
          prog.warnings.push_back({line, 1, k.str() + " is used as a property but not declared as one"});
      }
  };
  for (const auto& [k, list] : prog.assertions)
    for (const auto& a : list) {
      check_formula(a.pre, a.line);
      check_formula(a.post, a.line);
    }
  for (const auto& pp : prog.pred_props)
    for (const auto& m : pp.members) {
      check_formula(m.pre, m.line);
      check_formula(m.post, m.line);
    }
}

std::vector<Token> lex(std::string_view text) {
  try {
    return Lexer(text).run();
  } catch (const Diagnostic& d) {
    throw ParseError({d});
  }
}

}  // namespace

Program parse_program(std::string_view text, std::string source_name) {
  Program prog;
  prog.source_name = std::move(source_name);
  Reader rd(lex(text));
  ProgramBuilder builder(rd, prog);
  std::vector<Diagnostic> errors;
  while (!rd.at_eof()) {
    try {
      builder.clause();
    } catch (const Diagnostic& d) {
      errors.push_back(d);
      rd.skip_to_end();
    }
  }
  validate(prog, errors);
  if (!errors.empty()) throw ParseError(std::move(errors));
  return prog;
}

Query parse_query(std::string_view text) {
  std::string src(text);
  auto trimmed = src.find_last_not_of(" \t\n");
  if (trimmed == std::string::npos) throw ParseError({{1, 1, "empty query"}});
  if (src[trimmed] != '.') src += " .";
  Reader rd(lex(src));
  Query q;
  try {
    const Token start = rd.peek();
    Term t = rd.read(1200);
    rd.expect_end();
    std::vector<Term> goals;
    flatten(t, ",", goals);
    for (const auto& g : goals) q.goals.push_back(to_literal(g, start, rd));
  } catch (const Diagnostic& d) {
    throw ParseError({d});
  }
  std::vector<std::pair<std::string, Term>> ordered(rd.vars.begin(), rd.vars.end());
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& a, const auto& b) { return a.second.var_id() < b.second.var_id(); });
  q.variables = std::move(ordered);
  return q;
}

EntryDecl parse_entry(std::string_view text) {
  std::string src(text);
  auto trimmed = src.find_last_not_of(" \t\n");
  if (trimmed == std::string::npos) throw ParseError({{1, 1, "empty entry"}});
  if (src[trimmed] != '.') src += " .";
  Reader rd(lex(src));
  try {
    const Token start = rd.peek();
    Term t = rd.read(1200);
    rd.expect_end();
    Term head;
    std::optional<Term> pre, post;
    split_assertion(t, head, pre, post);
    if (post || head.is_var() || head.is_int() || is_call(head)) throw rd.err(start, "invalid entry");
    EntryDecl e;
    e.goal = head;
    if (pre) e.pre = to_formula(*pre, start, rd);
    return e;
  } catch (const Diagnostic& d) {
    throw ParseError({d});
  }
}

PropFormula parse_formula(std::string_view text, std::map<std::string, Term>& vars) {
  std::string src(text);
  src += " .";
  Reader rd(lex(src));
  rd.vars = vars;
  try {
    const Token start = rd.peek();
    Term t = rd.read(1200);
    rd.expect_end();
    PropFormula f = to_formula(t, start, rd);
    vars = rd.vars;
    return f;
  } catch (const Diagnostic& d) {
    throw ParseError({d});
  }
}

}  // namespace hiord
