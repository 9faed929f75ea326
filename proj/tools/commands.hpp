#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "io.hpp"

namespace ordspace::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,  // a check reported false: invalid embedding, failed verification, internal error
  kParse = 2,
  kPrecondition = 3,
  kCapability = 4,
  kToleranceUnmet = 5,
};

struct Outcome {
  Json result = Json::object();
  Json certificates = Json::object();
  Json warnings = Json::array();
  int exit_code = kOk;
};

/// Runs one operation from a self-contained inputs object (space inlined,
/// element and vectors as exact coordinates). verify re-enters here.
Outcome execute(const std::string& operation, const Json& inputs);

/// Structural re-check of a report's certificates plus a recomputation from
/// its inputs. Throws ParseError for malformed reports.
Outcome verify_report(const Json& report);

/// Full command line. Reports go to `out` (or --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ordspace::cli
