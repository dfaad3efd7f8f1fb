#pragma once

#include <string>
#include <vector>

namespace rrbkit {

struct CommandResult {
  int exit_code = 0;  // 0 success or true verdict, 1 false verdict, 2 usage or input error
  std::string out;
  std::string err;
};

/// Runs one command line (without the program name), e.g.
/// {"apply-f", "--input", "v.json", "--variety", "rrb", "--render", "dot"}.
/// With --out the rendered output goes to that file instead of `out`.
CommandResult run_command(const std::vector<std::string>& args);

}  // namespace rrbkit
