// Runs all twelve acceptance criteria; one line per criterion.
#include <cstdio>
#include <fstream>

#include "schottky/acceptance.hpp"

int main(int argc, char** argv) {
  schottky::AcceptanceOptions opts;
  auto results = schottky::run_criteria(opts);
  int passed = 0;
  for (const auto& r : results) {
    std::printf("criterion %2d %-22s %s\n", r.id, r.name.c_str(), r.pass ? "PASS" : "FAIL");
    if (!r.pass) std::printf("  details: %s\n", r.details.dump().c_str());
    passed += r.pass;
  }
  std::printf("%d/%zu criteria passed\n", passed, results.size());
  if (argc > 1) std::ofstream(argv[1]) << schottky::acceptance_report(results, opts).dump(2) << "\n";
  return passed == static_cast<int>(results.size()) ? 0 : 1;
}
