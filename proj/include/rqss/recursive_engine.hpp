#pragma once

#include <optional>
#include <vector>

#include "rqss/analytic_model.hpp"
#include "rqss/error_injection.hpp"

namespace rqss {

enum class AmpPolicy { automatic, fixed, scan };

struct SearchParams {
    int n = 2;
    std::optional<Vertex> target; ///< default: lattice center (block-center vertex)
    ErrorConfig errors;
    AmpPolicy policy = AmpPolicy::automatic;
    int fixed_j = 0;     ///< iterations when policy == fixed
    int scan_max_j = 32; ///< scan upper bound when policy == scan
    bool fastpath = true;
    bool build_through_n = false; ///< diagnostic: also apply the level-n circuit
    int max_depth = kDefaultMaxDepth;

    BigSPath path() const { return fastpath ? BigSPath::fast : BigSPath::circuit; }
};

struct LevelRecord {
    int level = 0;
    complex alpha;          ///< overlap with the level's tau-block u.s.s., entering the level
    double omega = 0.0;     ///< |alpha|^2
    double residual = 0.0;  ///< max |amplitude| outside the tau block, entering the level
    std::int64_t cumulative_steps = 0; ///< ledger total after the level's circuit
};

struct RecursionTrace {
    std::vector<LevelRecord> levels; ///< one record per level 1..n

    double max_residual() const;
    complex alpha_n() const { return levels.back().alpha; }
    double omega_n() const { return levels.back().omega; }
};

struct SearchResult {
    double success_probability = 0.0;
    int amplification_iterations = 0;
    std::int64_t total_steps = 0;
    RecursionTrace trace;
    SearchParams params;
    bool offcenter_target = false; ///< target is not the center of its 3x3 block
};

/// Builds |psi_k> level by level, amplifies the target amplitude, and accounts
/// every lattice time step.
///
/// The level reflection about |psi_{k-1}> is applied as a direct rank-1 update
/// on the stored state and billed as the circuit it stands for (the level
/// recursion re-applied around a target rotation); apply_U runs that circuit
/// literally and the two are asserted equal in the test suite.
///
/// With a local error configured, the recorded alpha_k is the overlap taken in
/// the error-conjugated frame (the state as it enters the subsquare reflection
/// block), which obeys the ideal recursion seeded with the perturbed first
/// overlap; at nu = 0 it reduces to the plain overlap.
class SearchEngine {
public:
    explicit SearchEngine(const SearchParams& p);

    const SearchParams& params() const { return params_; }
    const LatticeGeometry& geometry() const { return geom_; }
    Vertex target() const { return target_; }
    const ErrorChannel& channel() const { return channel_; }
    bool built() const { return !trace_.levels.empty(); }
    const RecursionTrace& trace() const;
    /// Stored level state psi_k, k in 0..n-1 (and n after a diagnostic build).
    const QuantumState& psi(int kappa) const;
    const CostLedger& build_ledger() const { return build_ledger_; }

    const RecursionTrace& build_psi();
    SearchResult amplify();
    SearchResult run_search();

    /// Literal circuit recursion; st == nullptr charges the ledger only.
    void apply_U(QuantumState* st, int kappa, bool adjoint, CostLedger& ledger) const;
    /// Equivalent chain over stored level states; bills identical steps.
    /// Requires build_psi() to have run for kappa <= n-1.
    void apply_U_fast(QuantumState& st, int kappa, bool adjoint, CostLedger& ledger) const;

private:
    void bill_psi_reflection(int kappa_minus_1, CostLedger& ledger) const;
    complex measured_alpha(const QuantumState& state, int level) const;

    SearchParams params_;
    LatticeGeometry geom_;
    Vertex target_;
    ErrorChannel channel_;
    std::vector<QuantumState> psi_store_;
    RecursionTrace trace_;
    CostLedger build_ledger_;
};

} // namespace rqss
