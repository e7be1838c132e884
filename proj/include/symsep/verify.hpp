// Randomized property suites behind the `verify` subcommand. Each suite
// replays one of the library's theorem-level guarantees over seeded random
// inputs; a property passes iff every trial held, and reports the worst
// margin seen (the smallest slack to its failure threshold, negative on
// failure; units are documented per property next to its implementation).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace symsep::verify {

struct PropertyResult {
  std::string suite;
  std::string name;
  int trials = 0;
  double worst_margin = 0.0;
  bool pass = false;
  std::string detail;  // one-line description of the worst trial
};

inline constexpr int kDefaultTrials = 200;

// Suite names: "permanent", "result1", "result2", "mixed", or "all" for the
// four in that order. Throws InvalidInput on anything else. Identical
// (suite, trials, seed) triples produce identical results.
std::vector<PropertyResult> run_suite(const std::string& suite, int trials, std::uint64_t seed);

bool all_pass(const std::vector<PropertyResult>& results);

}  // namespace symsep::verify
