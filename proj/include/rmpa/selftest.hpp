#pragma once

#include <ostream>

namespace rmpa {

// Built-in sanity suite: the partition identity behind duplicate-projection
// pruning, transform decoding against the brute-force ML oracle, and the
// unique-projection schedule verifier for m <= 6. Prints one line per check
// and returns false if anything fails.
bool run_selftest(std::ostream& out);

}  // namespace rmpa
