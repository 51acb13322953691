#pragma once

#include <iosfwd>

namespace rqss {

/// Runs the invariant suites and prints one PASS/FAIL line per check.
/// Quick covers the dense-oracle unitarity sweep, circuit/fast-path
/// equivalence, adjoint and reversibility round trips, ledger identities,
/// the superposition chain identity and bit reproducibility (seconds).
/// Full adds the model-agreement grid up to n = 5, the robustness floor up
/// to n = 6, amplification correctness and the walk-model cross checks.
/// Returns the number of failed checks (0 = all green).
int run_verify(bool full, std::ostream& out);

} // namespace rqss
