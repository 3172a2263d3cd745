#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hiord/engine.hpp"
#include "hiord/parser.hpp"
#include "hiord/report.hpp"
#include "hiord/verifier.hpp"

using namespace hiord;

namespace {

constexpr int kUsage = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  return static_cast<bool>(out);
}

struct FileOutcome {
  int code = 0;
  std::string out, err;
};

// 3 outranks 1, which outranks 2, which outranks 0.
int worse(int a, int b) {
  auto rank = [](int c) { return c == 3 ? 3 : c == 1 ? 2 : c == 2 ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

Program load(const std::string& path, std::string& err) {
  Program p = parse_program(slurp(path), path);
  for (const auto& w : p.warnings) err += path + ":" + w.str() + ": warning\n";
  return p;
}

std::string parse_errors(const std::string& path, const ParseError& e) {
  std::string s;
  for (const auto& d : e.errors()) s += path + ":" + d.str() + "\n";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification of higher-order assertions in logic programs"};
  app.require_subcommand(1);
  const bool color = !std::getenv("NO_COLOR") && isatty(STDOUT_FILENO);

  std::vector<std::string> files;
  std::vector<std::string> entries;
  std::string lattice_file, report = "text", dump_analysis, dump_conformance;
  bool run_checks = false;
  std::size_t depth = EngineOptions{}.depth;

  auto* check = app.add_subcommand("check", "Verify the assertions of a program");
  check->add_option("files", files, "Program files")->required()->check(CLI::ExistingFile);
  check->add_option("--entry", entries, "Entry point 'Goal' or 'Goal : Pre' (repeatable)");
  check->add_option("--lattice", lattice_file, "Finite lattice for conformance checking")->check(CLI::ExistingFile);
  check->add_option("--report", report, "Report format")->check(CLI::IsMember({"text", "json"}));
  check->add_flag("--run-checks", run_checks, "Run the entries under the remaining run-time checks");
  check->add_option("--depth", depth, "Reduction steps per derivation");
  check->add_option("--dump-analysis", dump_analysis, "Write the analysis triples to a file");
  check->add_option("--dump-conformance", dump_conformance, "Write the conformance matrix to a file");

  std::string run_file, goal;
  std::size_t max_answers = 20;
  auto* run = app.add_subcommand("run", "Run a goal under the program's assertions");
  run->add_option("file", run_file, "Program file")->required()->check(CLI::ExistingFile);
  run->add_option("goal", goal, "Goal")->required();
  run->add_option("--depth", depth, "Reduction steps per derivation");
  run->add_option("--max-answers", max_answers, "Stop after this many answers");

  auto* conf = app.add_subcommand("conformance", "Check predicates against predicate properties");
  conf->add_option("files", files, "Program files")->required()->check(CLI::ExistingFile);
  conf->add_option("--lattice", lattice_file, "Finite lattice for conformance checking")->check(CLI::ExistingFile);
  conf->add_option("--report", report, "Report format")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  VerifyOptions vo;
  vo.engine.depth = depth;
  vo.run_checks = run_checks;
  try {
    if (!lattice_file.empty()) vo.lattice = FiniteLattice::parse(slurp(lattice_file));
    for (const auto& e : entries) vo.entries.push_back(parse_entry(e));
  } catch (const ParseError& e) {
    std::cerr << parse_errors("--entry", e);
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "hiord: " << e.what() << "\n";
    return kUsage;
  }

  if (run->parsed()) {
    try {
      std::string err;
      Program p = load(run_file, err);
      std::cerr << err;
      Query q = parse_query(goal);
      // property literals on predicate arguments accept the weak members
      if (!p.pred_props.empty())
        for (const auto& [name, sets] : conformance_only(p, vo).tables) vo.engine.pp_members[name] = sets.plus;
      apply_wrappers(p);
      AssertionSet a = AssertionSet::from_program(p);
      Engine engine(p, &a, vo.engine);
      std::size_t n = 0;
      int code = 0;
      auto stats = engine.derive(q.goals, Store{}, [&](const Leaf& l) {
        if (l.kind == Leaf::Kind::Success) {
          std::string line;
          for (const auto& [name, v] : q.variables) {
            if (name.empty() || name[0] == '_') continue;
            line += (line.empty() ? "" : ", ") + name + " = " + l.state.store.resolve(v).to_string(true);
          }
          std::cout << (line.empty() ? "yes" : line) << "\n";
        } else if (l.kind == Leaf::Kind::Error) {
          const AssertionCondition* c = a.by_label(l.state.err);
          std::cout << "error: " << (c ? c->to_string() : "?") << " (line " << (c ? c->line : 0) << ")\n";
          code = 1;
        }
        return ++n >= max_answers;
      });
      if (stats.exhausted) std::cerr << "hiord: search budget exhausted\n";
      if (n == 0) std::cout << "no\n";
      return code;
    } catch (const ParseError& e) {
      std::cerr << parse_errors(run_file, e);
      return kUsage;
    } catch (const std::exception& e) {
      std::cerr << "hiord: " << e.what() << "\n";
      return kUsage;
    }
  }

  const bool only_conformance = conf->parsed();
  auto process = [&](const std::string& path) {
    FileOutcome o;
    try {
      std::string reported;  // parser warnings are part of the report
      Program p = load(path, reported);
      VerifyResult r = only_conformance ? conformance_only(std::move(p), vo) : verify(std::move(p), vo);
      o.out = report == "json" ? render_json(r) : render_text(r, color);
      if (only_conformance && report == "text") o.out += conformance_matrix(r);
      if (!dump_analysis.empty() && !write_file(dump_analysis, r.analysis_dump))
        throw std::runtime_error("cannot write " + dump_analysis);
      if (!dump_conformance.empty() && !write_file(dump_conformance, conformance_matrix(r)))
        throw std::runtime_error("cannot write " + dump_conformance);
      o.code = only_conformance ? 0 : r.exit_code();
    } catch (const ParseError& e) {
      o.err += parse_errors(path, e);
      o.code = kUsage;
    } catch (const std::exception& e) {
      o.err += "hiord: " + path + ": " + e.what() + "\n";
      o.code = kUsage;
    }
    return o;
  };

  std::vector<std::future<FileOutcome>> jobs;
  for (const auto& f : files) jobs.push_back(std::async(std::launch::async, process, f));
  int code = 0;
  for (auto& j : jobs) {
    FileOutcome o = j.get();
    std::cout << o.out;
    std::cerr << o.err;
    code = worse(code, o.code);
  }
  return code;
}
