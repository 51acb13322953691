#include "rqss/error_injection.hpp"

#include <cmath>
#include <random>
#include <string>

namespace rqss {

double ErrorConfig::max_phase_error() const {
    return std::max(std::abs(effective_epsilon()), std::abs(effective_delta()));
}

namespace {

// Raw 64-bit draws mapped to [-1, 1) by hand; distribution adapters are
// implementation defined and would break bit reproducibility across builds.
double next_uniform(std::mt19937_64& rng) {
    const double u01 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return 2.0 * u01 - 1.0;
}

} // namespace

LocalErrorOperator::LocalErrorOperator(double nu, std::uint64_t seed, const LatticeGeometry& g,
                                       bool straddle) {
    if (nu < 0.0) throw std::invalid_argument("local error strength must be >= 0");
    if (nu == 0.0) return;

    std::mt19937_64 rng(seed);
    const std::int64_t step = straddle ? 2 : 3;
    // x layer: pairs of adjacent rows (x0, x0 + 1); restricted pairing starts
    // each pair at a block-local row 0, so no pair crosses a level-1 block.
    for (std::int64_t x0 = 0; x0 + 1 < g.side; x0 += step) {
        for (std::int64_t y = 0; y < g.side; ++y) {
            const double a = nu * next_uniform(rng);
            rotations_.push_back(
                {x0 * g.side + y, (x0 + 1) * g.side + y, std::cos(a), std::sin(a)});
        }
    }
    // y layer: pairs of adjacent columns.
    for (std::int64_t y0 = 0; y0 + 1 < g.side; y0 += step) {
        for (std::int64_t x = 0; x < g.side; ++x) {
            const double a = nu * next_uniform(rng);
            const std::int64_t i = x * g.side + y0;
            rotations_.push_back({i, i + 1, std::cos(a), std::sin(a)});
        }
    }
}

void LocalErrorOperator::apply(QuantumState& psi, bool adjoint) const {
    auto a = psi.amplitudes();
    auto rotate = [&a](const Rotation& r, double sign) {
        const complex u = a[r.i];
        const complex v = a[r.j];
        const double s = sign * r.s;
        a[r.i] = r.c * u - s * v;
        a[r.j] = s * u + r.c * v;
    };
    if (!adjoint) {
        for (const Rotation& r : rotations_) rotate(r, 1.0);
    } else {
        for (auto it = rotations_.rbegin(); it != rotations_.rend(); ++it) rotate(*it, -1.0);
    }
}

ErrorChannel::ErrorChannel(const ErrorConfig& cfg, const LatticeGeometry& g)
    : cfg_(cfg), geom_(g), local_(cfg.effective_nu(), cfg.seed, g, cfg.straddle) {}

void ErrorChannel::target_phase(QuantumState* st, Vertex t, bool adjoint,
                                CostLedger& ledger) const {
    const double theta = cfg_.effective_epsilon();
    if (st) apply_selective_phase(*st, t, adjoint ? -theta : theta, &ledger);
    else ledger.charge(OpKind::selective_phase_target, 1);
}

void ErrorChannel::origin_block_phase(QuantumState* st, int level, bool adjoint,
                                      CostLedger& ledger) const {
    const double theta = cfg_.effective_delta();
    if (st) apply_origin_block_phase(*st, level, adjoint ? -theta : theta, &ledger);
    else ledger.charge(OpKind::selective_phase_origin_block, 1);
}

void ErrorChannel::S_k(QuantumState* st, int level, bool adjoint, CostLedger& ledger) const {
    if (!st) {
        ledger.charge(OpKind::S_k, 2 * (pow3(level) - 1));
        return;
    }
    if (!adjoint) {
        // requested S_k realizes E^dag S_k
        apply_Sk(*st, level, false, &ledger);
        if (!local_.identity()) local_.apply(*st, true);
    } else {
        // requested S_k^dag realizes S_k^dag E
        if (!local_.identity()) local_.apply(*st, false);
        apply_Sk(*st, level, true, &ledger);
    }
}

namespace {

void charge_bigS(CostLedger& ledger, int level) {
    ledger.charge(OpKind::S_k, 4 * (pow3(level) - 1));
    ledger.charge(OpKind::selective_phase_origin_block, 1);
}

} // namespace

// Shared realization of the simultaneous block reflection with a total phase
// offset (nominal + channel). The realized operator is E^dag S_k I^theta(00k)
// S_k^dag E; the adjoint flag negates theta and the components adjoint
// themselves, which is exactly the operator adjoint.
void ErrorChannel::big_S_impl(QuantumState* st, int level, double total_phase, bool adjoint,
                              BigSPath path, CostLedger& ledger) const {
    if (!st) {
        charge_bigS(ledger, level);
        return;
    }
    const double theta = adjoint ? -total_phase : total_phase;
    if (path == BigSPath::circuit) {
        if (!local_.identity()) local_.apply(*st, false);
        apply_Sk(*st, level, true, &ledger);
        apply_origin_block_phase(*st, level, theta, &ledger);
        apply_Sk(*st, level, false, &ledger);
        if (!local_.identity()) local_.apply(*st, true);
    } else {
        if (!local_.identity()) local_.apply(*st, false);
        apply_bigS(*st, level, theta, false, BigSPath::fast, &ledger);
        if (!local_.identity()) local_.apply(*st, true);
    }
}

void ErrorChannel::big_S(QuantumState* st, int level, bool adjoint, BigSPath path,
                         CostLedger& ledger) const {
    big_S_impl(st, level, cfg_.effective_delta(), adjoint, path, ledger);
}

void ErrorChannel::psi_reflection(QuantumState& st, const QuantumState& chi, bool adjoint) const {
    const double theta = cfg_.effective_epsilon();
    apply_selective_phase(st, chi, adjoint ? -theta : theta);
}

void ErrorChannel::apply(const OperatorRequest& req, QuantumState* st, CostLedger& ledger) const {
    switch (req.kind) {
        case OpKind::selective_phase_target: {
            const double theta = req.nominal_phase + cfg_.effective_epsilon();
            if (st) apply_selective_phase(*st, req.target, req.adjoint ? -theta : theta, &ledger);
            else ledger.charge(OpKind::selective_phase_target, 1);
            return;
        }
        case OpKind::selective_phase_origin_block: {
            const double theta = req.nominal_phase + cfg_.effective_delta();
            if (st) apply_origin_block_phase(*st, req.level, req.adjoint ? -theta : theta, &ledger);
            else ledger.charge(OpKind::selective_phase_origin_block, 1);
            return;
        }
        case OpKind::L_b:
            if (st) apply_Lb(*st, req.level, req.b, req.axis, req.adjoint, &ledger);
            else ledger.charge(OpKind::L_b, 1);
            return;
        case OpKind::S_kx:
        case OpKind::S_ky:
            if (st) {
                apply_Sk_axis(*st, req.level, req.kind == OpKind::S_kx ? Axis::x : Axis::y,
                              req.adjoint, &ledger);
            } else {
                ledger.charge(req.kind, pow3(req.level) - 1);
            }
            return;
        case OpKind::S_k:
            S_k(st, req.level, req.adjoint, ledger);
            return;
        case OpKind::big_S:
            big_S_impl(st, req.level, req.nominal_phase + cfg_.effective_delta(), req.adjoint,
                       req.path, ledger);
            return;
    }
}

} // namespace rqss
