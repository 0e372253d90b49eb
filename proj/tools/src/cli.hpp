#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace ffapprox::cli {

// Parses argv, runs one subcommand, writes results to `out` and diagnostics
// to `err`. Returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SelftestOptions {
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::size_t scale = 1;  // multiplies instance counts
};
// Runs every invariant family; returns true when all pass.
bool selftest(const SelftestOptions& opt, std::ostream& out);

}  // namespace ffapprox::cli
