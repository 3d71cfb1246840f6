#pragma once

#include <string>
#include <vector>

namespace ccl {

// Exit codes: 0 success, 1 invalid input (arguments, files, instances),
// 2 size guard exceeded, 3 construction/enumeration discrepancy.
struct CliResult {
  int exit_code = 0;
  std::string out;  // the report (JSON or table)
  std::string err;  // diagnostics
};

CliResult dispatch(const std::vector<std::string>& args);

// Thin wrapper for main(): runs dispatch, prints out/err, returns the code.
int run_cli(int argc, char** argv);

}  // namespace ccl
