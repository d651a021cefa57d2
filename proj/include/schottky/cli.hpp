#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace schottky {

// Parsed command line. Numeric parameters are checked positive and the
// precision at least 64 bits before dispatch.
struct RunConfig {
  std::string subcommand;
  std::string group = "bundled:B";  // path or bundled:NAME
  unsigned precision_bits = 0;      // 0: SCHOTTKY_PRECISION_BITS, the group file, then 128
  int workers = 1;
  int max_len = 0;  // 0: subcommand default
  int m_max = 0;    // 0: automatic
  int degree = 10;
  int nodes = 0;    // 0: subcommand default
  std::string format = "json";
  std::uint64_t seed = 1;
};

// Parses argv, runs the subcommand and writes one JSON document (or a CSV
// table) to out. Returns 0 on success, 1 on a computation error and 2 on
// invalid input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace schottky
