#pragma once

#include <cstdint>

#include "rqss/dense_matrix.hpp"
#include "rqss/error_injection.hpp"

namespace rqss {

/// Explicit matrix of a realized operator, built column by column from basis
/// states. Brute-force oracle only: requires n <= 2 (N <= 81).
DenseMatrix dense_matrix(const OperatorRequest& req, const LatticeGeometry& g,
                         const ErrorConfig& cfg = {});

/// Deterministic pseudo-random unit state (fixed generator and mapping).
QuantumState probe_state(const LatticeGeometry& g, std::uint64_t seed);

/// FNV-1a hash of the raw amplitude bytes after applying the realized
/// operator to the probe state; bit-identity check at any lattice size.
std::uint64_t probe_hash(const OperatorRequest& req, const LatticeGeometry& g,
                         const ErrorConfig& cfg, std::uint64_t probe_seed = 0x9e3779b97f4a7c15ULL);

} // namespace rqss
