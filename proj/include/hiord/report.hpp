#pragma once

#include <string>

#include "hiord/verifier.hpp"

namespace hiord {

constexpr int kReportVersion = 1;

/// Human-readable report. `color` adds ANSI styling to statuses.
std::string render_text(const VerifyResult& r, bool color);

/// `{version, program, assertions, conformance, generated, warnings}`.
std::string render_json(const VerifyResult& r);

}  // namespace hiord
