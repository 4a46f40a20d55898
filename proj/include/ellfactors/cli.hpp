#pragma once

// Command-line front end. `run` is the whole program minus process setup, so
// tests can drive it with in-memory streams.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace ellfactors::cli {

enum ExitCode : int {
  kPass = 0,
  kCheckFailure = 1,
  kUsageError = 2,
};

struct RunConfig {
  unsigned precision_bits = 128;
  double epsilon = 1e-9;
  std::string output_format = "text";  // text | json
  std::uint64_t seed = 1;
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ellfactors::cli
