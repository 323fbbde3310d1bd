#pragma once

#include <cstdint>
#include <iosfwd>

namespace blochlu {

// Runs the randomized property suites of every module (states, tensors,
// words, invariants, decisions), one line per suite. Deterministic per
// seed; returns the number of failed checks.
int run_selftest(int trials, std::uint64_t seed, std::ostream& out);

}  // namespace blochlu
