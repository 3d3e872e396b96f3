#pragma once

#include <string>
#include <vector>

#include "isochrone/io.hpp"

namespace isochrone::cli {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotIsochronous = 2;
constexpr int kExitUsage = 64;

struct Output {
  Json meta = Json::object();
  Table table;
  int exit_code = kExitOk;
};

// Runs a fully specified configuration. Numeric failures throw isochrone::Error.
Output execute(const RunConfig& config);

// JSON object (config, meta, rows) or CSV table, newline terminated.
std::string render(const RunConfig& config, const Output& out);

// Parses argv into a RunConfig. Throws ParseError on usage problems.
RunConfig parse_args(const std::vector<std::string>& args);

// Full front end: parse, execute, write. Returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace isochrone::cli
