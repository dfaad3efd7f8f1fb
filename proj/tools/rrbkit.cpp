// Command-line front end; all work happens behind the C API.

#include <cstdio>

#include "rrbkit/rrbkit.h"

int main(int argc, char** argv) {
  int code = 2;
  char* out = nullptr;
  char* err = nullptr;
  if (rrbkit_run_command(argc - 1, argv + 1, &code, &out, &err) != RRBKIT_OK) {
    std::fprintf(stderr, "rrbkit: %s\n", rrbkit_last_error());
    return 2;
  }
  std::fputs(out, stdout);
  std::fputs(err, stderr);
  rrbkit_string_free(out);
  rrbkit_string_free(err);
  return code;
}
