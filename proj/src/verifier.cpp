#include "hiord/verifier.hpp"

#include <algorithm>
#include <memory>

#include "hiord/engine.hpp"

namespace hiord {

std::string to_string(Status s) {
  switch (s) {
    case Status::Checked: return "checked";
    case Status::False: return "false";
    case Status::Check: return "check";
  }
  return "?";
}

int VerifyResult::exit_code() const {
  bool check = false;
  for (const auto& a : assertions) {
    if (a.status == Status::False) return 1;
    check = check || a.status == Status::Check;
  }
  return check ? 2 : 0;
}

namespace {

AbsVal to_abs(const Pattern& p) {
  AbsVal a;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].is_empty()) return AbsVal::bot();
    if (!p[i].is_any()) a.env.emplace(static_cast<long long>(i), Elem{p[i]});
  }
  return a;
}

std::vector<std::string> head_names(const std::vector<Term>& head) {
  std::vector<std::string> out;
  for (const auto& h : head) out.push_back(h.name().empty() ? "_" : h.name());
  return out;
}

std::string goal_string(const PredKey& k, const std::vector<Term>& args) {
  std::string s = quote_atom(k.name);
  if (args.empty()) return s;
  s += "(";
  for (std::size_t i = 0; i < args.size(); ++i) s += (i ? "," : "") + args[i].to_string(true);
  return s + ")";
}

/// Everything shared by the fixpoint and the checking phase.
struct Session {
  Program prog;
  VerifyOptions opts;
  std::unique_ptr<RegTypeDomain> rd;
  std::unique_ptr<FiniteLatticeDomain> ld;
  AssertionSet conds;  // user and inferred
  AssertionSet user;
  PPTables tables;
  VerifyResult res;

  const Domain& conf_domain() const {
    if (ld) return *ld;
    return *rd;
  }

  void prepare() {
    apply_wrappers(prog);
    rd = std::make_unique<RegTypeDomain>(prog);
    if (opts.lattice) ld = std::make_unique<FiniteLatticeDomain>(*opts.lattice);
    res.program = prog.source_name;
    for (const auto& w : prog.warnings) res.warnings.push_back(w.str());
    user = AssertionSet::from_program(prog);
    conds = user;
    int label = conds.max_label() + 1;
    TypeNamer namer;
    std::set<PredKey> seen;
    for (const auto& pp : prog.pred_props)
      for (const auto& k : candidate_predicates(prog, pp.arity)) {
        if (prog.assertions.count(k) || !prog.defines(k) || !seen.insert(k).second) continue;
        PredAssertion a = infer_pred_assertion(k, prog, *rd, AnalysisOptions{}, namer);
        res.inferred.push_back(a);
        for (auto& c : assertion_conditions({a}, label)) conds.add(c);
      }
  }

  std::vector<std::pair<const Rule*, AbsVal>> clause_successes(const PredKey& k) const {
    std::vector<std::pair<const Rule*, AbsVal>> out;
    AnalysisOptions ao;
    ao.pp = tables;
    Analyzer an(prog, *rd, ao);
    Pattern call(static_cast<std::size_t>(k.arity), RegType::any());
    if (const AssertionCondition* c = conds.calls(k)) {
      AbsVal sup = triv_sup(*rd, c->pre, c->head, tables);
      if (sup.bottom) return out;
      for (const auto& [pos, e] : sup.env) call[static_cast<std::size_t>(pos)] = std::get<RegType>(e);
    }
    an.success(k, call);
    for (const auto& [r, p] : an.clause_successes(k)) out.emplace_back(r, p ? to_abs(*p) : AbsVal::bot());
    return out;
  }

  /// Conformance of every candidate to every property under `tables`.
  std::vector<PropertyVerdict> conformance_round() const {
    ConformanceContext ctx;
    ctx.program = &prog;
    ctx.domain = &conf_domain();
    ctx.conditions = &conds;
    ctx.pp = tables;
    ctx.engine = opts.engine;
    if (!ld) ctx.clause_successes = [this](const PredKey& k) { return clause_successes(k); };
    std::vector<PropertyVerdict> out;
    for (const auto& pp : prog.pred_props)
      for (const auto& k : candidate_predicates(prog, pp.arity)) out.push_back(conf_property(k, pp, ctx));
    return out;
  }

  void fixpoint() {
    std::map<std::pair<std::string, std::string>, PropertyVerdict> best;
    std::vector<std::pair<std::string, std::string>> order;
    for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
      res.iterations = it;
      PPTables next = tables;
      std::map<std::string, std::set<std::string>> plus_now;
      for (const auto& pp : prog.pred_props) {
        next.minus[pp.name];
        plus_now[pp.name];
      }
      for (auto& v : conformance_round()) {
        auto key = std::make_pair(v.property, v.pred.name);
        if (!best.count(key)) order.push_back(key);
        if (v.verdict == TriState::Yes) {
          next.minus[v.property].insert(v.pred.name);
          res.first_yes.emplace(key, static_cast<int>(it));
        }
        if (v.verdict != TriState::No) plus_now[v.property].insert(v.pred.name);
        auto b = best.find(key);
        if (b == best.end() || v.verdict != TriState::Maybe || b->second.verdict == TriState::Maybe)
          best[key] = std::move(v);
      }
      for (auto& [name, s] : plus_now) {
        auto old = tables.plus.find(name);
        if (old != tables.plus.end()) {
          std::set<std::string> both;
          std::set_intersection(s.begin(), s.end(), old->second.begin(), old->second.end(),
                                std::inserter(both, both.end()));
          s = both;
        }
        auto& m = next.minus[name];
        for (auto mit = m.begin(); mit != m.end();) mit = s.count(*mit) ? std::next(mit) : m.erase(mit);
        next.plus[name] = s;
      }
      const bool stable = next.minus == tables.minus && next.plus == tables.plus;
      tables = std::move(next);
      if (stable) break;
      if (it == opts.max_iterations) {
        res.fixpoint = false;
        res.warnings.push_back("conformance fixpoint not reached after " + std::to_string(it) +
                               " iterations; predicate properties are treated as term");
        tables = PPTables{};
      }
    }
    for (const auto& key : order) {
      PropertyVerdict v = best.at(key);
      const auto& mi = tables.minus[key.first];
      auto pl = tables.plus.find(key.first);
      if (mi.count(key.second)) v.verdict = TriState::Yes;
      else if (pl == tables.plus.end() || pl->second.count(key.second)) v.verdict = TriState::Maybe;
      else v.verdict = TriState::No;
      res.conformance.push_back(std::move(v));
    }
    for (const auto& pp : prog.pred_props) {
      PiSets s;
      s.minus = tables.minus[pp.name];
      if (auto pl = tables.plus.find(pp.name); pl != tables.plus.end()) s.plus = pl->second;
      res.tables[pp.name] = s;
      auto rules = pi_rules(pp.name, s);
      res.generated.insert(res.generated.end(), rules.begin(), rules.end());
    }
  }

  /// Predicates passed at `site` for the predicate-property literals of `pre`
  /// that are not known to conform strongly.
  void weak_warnings(const AssertionCondition& c, const CallSite& site) {
    for (const auto& conj : c.pre.disjuncts)
      for (const auto& lit : conj) {
        if (lit.args.size() != 1 || !lit.args[0].is_var() || !prog.find_pred_prop(lit.pred)) continue;
        for (std::size_t i = 0; i < c.head.size(); ++i) {
          if (!c.head[i].is_var() || c.head[i].var_id() != lit.args[0].var_id()) continue;
          auto names = site.call[i].constant_names();
          if (!names) {
            res.warnings.push_back("line " + std::to_string(site.line) + ": " + site.where + " passes a predicate to " +
                                   c.pred + "/" + std::to_string(c.head.size()) + " that is not known to conform to " +
                                   lit.pred);
            continue;
          }
          const auto& mi = tables.minus[lit.pred];
          auto pl = tables.plus.find(lit.pred);
          for (const auto& n : *names) {
            if (mi.count(n)) continue;
            const bool weak = pl == tables.plus.end() || pl->second.count(n);
            res.warnings.push_back(quote_atom(n) + "/" + std::to_string(prog.find_pred_prop(lit.pred)->arity) +
                                   (weak ? " does not definitely conform to " : " does not conform to ") + lit.pred +
                                   " (argument " + std::to_string(i + 1) + " of the call to " + c.pred + "/" +
                                   std::to_string(c.head.size()) + " from " + site.where + ")");
          }
        }
      }
  }

  void check(Analyzer& an) {
    const RegTypeDomain& d = *rd;
    for (const auto& c : user.all()) {
      AssertionVerdict v;
      v.pred = c.key();
      v.kind = c.kind == AssertionCondition::Kind::Calls ? "calls" : "success";
      v.label = c.label;
      v.line = c.line;
      v.text = c.to_string();
      const auto names = head_names(c.head);
      if (c.kind == AssertionCondition::Kind::Calls) {
        AbsVal sub = triv_sub(d, c.pre, c.head, tables);
        AbsVal sup = triv_sup(d, c.pre, c.head, tables);
        AbsVal joined = AbsVal::bot();
        bool any = false, disjoint = false, assumed = false;
        for (const auto& s : an.call_sites()) {
          if (s.pred != v.pred) continue;
          if (s.assumed) {
            assumed = true;
            continue;
          }
          AbsVal a = to_abs(s.call);
          if (a.bottom) continue;
          any = true;
          joined = d.join(joined, a);
          if (d.meet(a, sup).bottom) disjoint = true;
          if (!d.leq(a, sub)) weak_warnings(c, s);
        }
        if (!any) {
          v.status = Status::Checked;
          v.reason = assumed ? "calls only from the entry it defines" : "no reachable calls";
        } else if (disjoint) {
          v.status = Status::False;
          v.reason = "calls: a reachable call pattern meets sup(Pre) " + d.str(sup, names) + " at bot";
        } else if (d.leq(joined, sub)) {
          v.status = Status::Checked;
          v.reason = "calls: " + d.str(joined, names) + " <= sub(Pre) " + d.str(sub, names);
        } else {
          v.status = Status::Check;
          v.reason = "calls: " + d.str(joined, names) + " not <= sub(Pre) " + d.str(sub, names);
        }
      } else {
        AbsVal sup_pre = triv_sup(d, c.pre, c.head, tables);
        AbsVal sub_post = triv_sub(d, c.post, c.head, tables);
        AbsVal sup_post = triv_sup(d, c.post, c.head, tables);
        std::vector<Pattern> calls;
        for (const auto& t : an.triples())
          if (t.pred == v.pred) calls.push_back(t.call);
        // an unresolved higher-order call may reach the predicate with any arguments
        for (const auto& h : an.higher_order_sites())
          if (h.unknown && h.arity == v.pred.arity) {
            calls.push_back(Pattern(c.head.size(), RegType::any()));
            break;
          }
        bool all_in = true, disjoint = false, any = false;
        AbsVal joined = AbsVal::bot();
        for (const auto& call : calls) {
          AbsVal m = d.meet(to_abs(call), sup_pre);
          if (m.bottom) continue;
          Pattern narrowed = call;
          for (const auto& [pos, e] : m.env) narrowed[static_cast<std::size_t>(pos)] = std::get<RegType>(e);
          auto succ = an.success(v.pred, narrowed);
          if (!succ) continue;
          AbsVal s = to_abs(*succ);
          if (s.bottom) continue;
          any = true;
          joined = d.join(joined, s);
          if (!d.leq(s, sub_post)) all_in = false;
          if (d.meet(s, sup_post).bottom) disjoint = true;
        }
        if (!any) {
          v.status = Status::Checked;
          v.reason = "no reachable successes";
        } else if (all_in) {
          v.status = Status::Checked;
          v.reason = "success: " + d.str(joined, names) + " <= sub(Post) " + d.str(sub_post, names);
        } else if (disjoint) {
          v.status = Status::False;
          v.reason = "success: a reachable success pattern meets sup(Post) " + d.str(sup_post, names) + " at bot";
        } else {
          v.status = Status::Check;
          v.reason = "success: " + d.str(joined, names) + " not <= sub(Post) " + d.str(sub_post, names);
        }
      }
      res.assertions.push_back(std::move(v));
    }
    for (const auto& h : an.higher_order_sites()) {
      if (!h.unknown) continue;
      res.warnings.push_back("line " + std::to_string(h.line) + ": cannot determine the predicate called by " +
                             h.callee + " in " + h.where);
      // the call may reach any predicate of its arity with any arguments
      for (auto& v : res.assertions)
        if (v.kind == "calls" && v.status == Status::Checked && v.pred.arity == h.arity) {
          v.status = Status::Check;
          v.reason = "calls: may be reached from " + h.callee + " in " + h.where + " (line " + std::to_string(h.line) + ")";
        }
    }
    if (an.incomplete()) res.warnings.push_back("analysis widened some call patterns to term");
  }

  void run_checks(const std::vector<AbstractQuery>& queries) {
    EngineOptions eo = opts.engine;
    eo.pp_members = tables.plus;
    Engine engine(prog, &user, eo);
    for (const auto& q : queries) {
      std::vector<std::vector<Term>> choices;
      for (const auto& t : q.call) {
        if (t.is_any()) choices.push_back({Term::fresh()});
        else choices.push_back(t.enumerate(3, 4));
      }
      std::vector<std::vector<Term>> tuples{{}};
      for (const auto& ch : choices) {
        std::vector<std::vector<Term>> next;
        for (const auto& tu : tuples)
          for (const auto& c : ch) {
            if (next.size() >= opts.run_check_queries) break;
            auto x = tu;
            x.push_back(c);
            next.push_back(std::move(x));
          }
        tuples = std::move(next);
      }
      for (const auto& args : tuples) {
        Literal goal = Literal::atom(q.pred.name, args);
        engine.derive({goal}, Store{}, [&](const Leaf& l) {
          if (l.kind != Leaf::Kind::Error) return false;
          const AssertionCondition* c = user.by_label(l.state.err);
          res.warnings.push_back("run-time check failed for " + (c ? c->to_string() : std::string("?")) +
                                 " on " + goal_string(q.pred, args));
          return true;
        });
      }
    }
  }
};

}  // namespace

VerifyResult conformance_only(Program prog, const VerifyOptions& opts) {
  Session s{std::move(prog), opts, {}, {}, {}, {}, {}, {}};
  s.prepare();
  s.fixpoint();
  return std::move(s.res);
}

VerifyResult verify(Program prog, const VerifyOptions& opts) {
  Session s{std::move(prog), opts, {}, {}, {}, {}, {}, {}};
  s.prepare();
  s.fixpoint();
  if (!opts.entries.empty()) s.prog.entries = opts.entries;
  AnalysisOptions ao;
  ao.pp = s.tables;
  Analyzer an(s.prog, *s.rd, ao);
  auto queries = entry_queries(s.prog, *s.rd, s.tables);
  for (const auto& q : queries) an.add_query(q);
  an.run();
  s.check(an);
  s.res.analysis_dump = an.dump();
  if (opts.run_checks) s.run_checks(queries);
  return std::move(s.res);
}

std::string conformance_matrix(const VerifyResult& r) {
  std::string out;
  std::string current;
  for (const auto& v : r.conformance) {
    if (v.property != current) {
      current = v.property;
      const auto& t = r.tables.at(current);
      out += "property " + current + "\n";
      std::string mi, pl;
      for (const auto& n : t.minus) mi += (mi.empty() ? "" : ", ") + n;
      for (const auto& n : t.plus) pl += (pl.empty() ? "" : ", ") + n;
      out += "  strong {" + mi + "}\n  weak   {" + pl + "}\n";
    }
    out += "  " + v.pred.str() + (v.inferred ? " (inferred)" : "") + ": " + to_string(v.verdict);
    if (auto it = r.first_yes.find({v.property, v.pred.name}); it != r.first_yes.end())
      out += " (iteration " + std::to_string(it->second) + ")";
    out += "\n";
    for (const auto& c : v.conditions) out += "    " + c.condition + " " + to_string(c.verdict) + ": " + c.basis + "\n";
    if (!v.witness.empty()) out += "    witness " + goal_string(v.pred, v.witness) + "\n";
    for (const auto& c : v.culprits) out += "    clause " + c + "\n";
  }
  return out;
}

}  // namespace hiord
