#pragma once

#include <cstdint>
#include <vector>

#include "rqss/phase_ops.hpp"

namespace rqss {

/// Systematic error configuration. The same config realizes bit-identical
/// operators on every invocation, and an adjoint request realizes the exact
/// adjoint of the forward realization (reproducible, reversible errors).
struct ErrorConfig {
    double epsilon = 0.0;   ///< phase offset on target-selective rotations
    double delta = 0.0;     ///< phase offset on subsquare-selective rotations
    double nu = 0.0;        ///< local-error rotation amplitude
    std::uint64_t seed = 1; ///< seeds the local-error angle pattern
    bool straddle = false;  ///< allow pairs across level-1 block boundaries

    // Per-channel switches; a disabled channel behaves as error free.
    bool target_channel = true;
    bool subsquare_channel = true;
    bool local_channel = true;

    double effective_epsilon() const { return target_channel ? epsilon : 0.0; }
    double effective_delta() const { return subsquare_channel ? delta : 0.0; }
    double effective_nu() const { return local_channel ? nu : 0.0; }
    /// Delta = max(|delta|, |epsilon|); derived, never stored.
    double max_phase_error() const;
};

/// kappa-independent nearest-neighbour unitary perturbation: one layer of
/// disjoint x-pair rotations followed by one layer of disjoint y-pair
/// rotations. Angles are nu * u with u drawn i.i.d. uniform in [-1, 1] from
/// the seeded generator, so the operator is a pure function of
/// (nu, seed, geometry, straddle). The restricted pairing (straddle = false)
/// keeps every pair inside its level-1 block, so the operator cannot move
/// amplitude across block boundaries; the straddle mode pairs across them to
/// study violations of that condition.
class LocalErrorOperator {
public:
    LocalErrorOperator(double nu, std::uint64_t seed, const LatticeGeometry& g, bool straddle);

    void apply(QuantumState& psi, bool adjoint = false) const;
    bool identity() const { return rotations_.empty(); }

    struct Rotation {
        std::int64_t i, j; ///< flat indices of the coupled pair
        double c, s;
    };
    const std::vector<Rotation>& rotations() const { return rotations_; }

private:
    std::vector<Rotation> rotations_;
};

/// Interposition layer: maps requested (nominal) operators to the operators
/// the erroneous device actually implements.
///
///   requested I^0(t)        -> I^epsilon(t), adjoint -> I^{-epsilon}(t)
///   requested block phases  -> delta-shifted likewise
///   requested S_k           -> E^dag S_k;  S_k^dag -> S_k^dag E
///   requested bigS          -> E^dag S_k I^delta(00k) S_k^dag E
///
/// Bare L_b / S_kx / S_ky requests realize themselves; the local error is a
/// miscalibration of the full builders. Ledger charges are always those of
/// the requested operator; the perturbation is never billed.
///
/// Every apply method accepts `st == nullptr` to charge the ledger without
/// touching amplitudes (dry run).
class ErrorChannel {
public:
    ErrorChannel(const ErrorConfig& cfg, const LatticeGeometry& g);

    const ErrorConfig& config() const { return cfg_; }
    const LocalErrorOperator& local_error() const { return local_; }
    const LatticeGeometry& geometry() const { return geom_; }

    void target_phase(QuantumState* st, Vertex t, bool adjoint, CostLedger& ledger) const;
    void origin_block_phase(QuantumState* st, int level, bool adjoint, CostLedger& ledger) const;
    void S_k(QuantumState* st, int level, bool adjoint, CostLedger& ledger) const;
    void big_S(QuantumState* st, int level, bool adjoint, BigSPath path, CostLedger& ledger) const;
    /// Reflection about a stored state with the target-channel offset.
    /// Unbilled here: callers bill the recomposed circuit this stands for.
    void psi_reflection(QuantumState& st, const QuantumState& chi, bool adjoint) const;

    /// Generic dispatch (dense oracle, verification drivers).
    void apply(const OperatorRequest& req, QuantumState* st, CostLedger& ledger) const;

private:
    void big_S_impl(QuantumState* st, int level, double total_phase, bool adjoint, BigSPath path,
                    CostLedger& ledger) const;

    ErrorConfig cfg_;
    LatticeGeometry geom_;
    LocalErrorOperator local_;
};

} // namespace rqss
