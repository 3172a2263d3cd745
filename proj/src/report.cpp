#include "hiord/report.hpp"

#include <set>

#include "json.hpp"

namespace hiord {

namespace {

std::string paint(const std::string& s, const char* code, bool color) {
  if (!color) return s;
  return std::string("\033[") + code + "m" + s + "\033[0m";
}

const char* status_color(Status s) {
  switch (s) {
    case Status::Checked: return "32";
    case Status::False: return "31";
    case Status::Check: return "33";
  }
  return "0";
}

std::vector<std::string> unique(const std::vector<std::string>& in) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& s : in)
    if (seen.insert(s).second) out.push_back(s);
  return out;
}

}  // namespace

std::string render_text(const VerifyResult& r, bool color) {
  std::string out;
  if (!r.program.empty()) out += r.program + "\n";
  for (const auto& a : r.assertions) {
    out += "  " + paint(to_string(a.status), status_color(a.status), color) + "  line " + std::to_string(a.line) +
           "  " + a.text + "\n";
    out += "      " + a.reason + "\n";
  }
  if (!r.conformance.empty()) {
    out += "conformance\n";
    for (const auto& v : r.conformance) {
      out += "  " + v.pred.str() + " to " + v.property + ": " + to_string(v.verdict);
      if (v.inferred) out += " (inferred assertions)";
      out += "\n";
    }
  }
  if (!r.inferred.empty()) {
    out += "inferred\n";
    for (const auto& a : r.inferred) out += "  " + a.to_string() + "\n";
  }
  if (!r.generated.empty()) {
    out += "generated\n";
    for (const auto& g : r.generated) out += "  " + g.to_string() + "\n";
  }
  for (const auto& w : unique(r.warnings)) out += paint("warning: ", "35", color) + w + "\n";
  return out;
}

std::string render_json(const VerifyResult& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["version"] = kReportVersion;
  j["program"] = r.program;
  j["assertions"] = ordered_json::array();
  for (const auto& a : r.assertions)
    j["assertions"].push_back({{"pred", a.pred.name},
                               {"arity", a.pred.arity},
                               {"kind", a.kind},
                               {"status", to_string(a.status)},
                               {"reason", a.reason},
                               {"span", {{"line", a.line}}}});
  j["conformance"] = ordered_json::array();
  for (const auto& v : r.conformance) {
    ordered_json c = {{"pred", v.pred.str()},
                      {"property", v.property},
                      {"verdict", to_string(v.verdict)},
                      {"basis", v.basis()},
                      {"provenance", v.inferred ? "inferred" : "user"}};
    if (auto it = r.first_yes.find({v.property, v.pred.name}); it != r.first_yes.end()) c["iteration"] = it->second;
    j["conformance"].push_back(c);
  }
  j["generated"] = ordered_json::array();
  for (const auto& g : r.generated) j["generated"].push_back(g.to_string());
  j["warnings"] = unique(r.warnings);
  return j.dump(2) + "\n";
}

}  // namespace hiord
