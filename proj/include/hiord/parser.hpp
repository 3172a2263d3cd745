#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hiord/syntax.hpp"

namespace hiord {

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(std::vector<Diagnostic> errors);
  const std::vector<Diagnostic>& errors() const { return errors_; }

 private:
  std::vector<Diagnostic> errors_;
};

/// Parse a whole source file. Throws ParseError listing every error found.
Program parse_program(std::string_view text, std::string source_name = "<input>");

/// A goal typed at the command line: a conjunction of body literals.
struct Query {
  std::vector<Literal> goals;
  std::vector<std::pair<std::string, Term>> variables;  // in order of appearance
};

Query parse_query(std::string_view text);

/// `Goal` or `Goal : Pre`, as accepted by `:- entry` and `--entry`.
EntryDecl parse_entry(std::string_view text);

/// Single property formula, e.g. `(int(X), list(Xs)) ; atm(X)`.
PropFormula parse_formula(std::string_view text, std::map<std::string, Term>& vars);

}  // namespace hiord
