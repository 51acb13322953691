#include "rqss/phase_ops.hpp"

#include <cmath>
#include <string>

#include "rqss/kahan.hpp"

namespace rqss {

complex f_phase(double theta) { return 1.0 + std::polar(1.0, theta); }

void apply_selective_phase(QuantumState& psi, const QuantumState& chi, double theta) {
    if (!(psi.geometry() == chi.geometry())) {
        throw std::invalid_argument("selective phase: geometry mismatch");
    }
    const double n2 = chi.norm_sq();
    if (std::abs(n2 - 1.0) > 1e-9) {
        throw std::invalid_argument("selective phase: |chi> is not unit norm");
    }
    const complex coeff = f_phase(theta) * inner_product(chi, psi);
    auto out = psi.amplitudes();
    const auto ref = chi.amplitudes();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= coeff * ref[i];
}

void apply_selective_phase(QuantumState& psi, Vertex chi, double theta, CostLedger* ledger) {
    // Diagonal on one vertex: amplitude picks up the factor 1 - f = -e^{i theta}.
    psi.at(chi) *= -std::polar(1.0, theta);
    if (ledger) ledger->charge(OpKind::selective_phase_target, 1);
}

void apply_origin_block_phase(QuantumState& psi, int level, double theta, CostLedger* ledger) {
    const LatticeGeometry& g = psi.geometry();
    if (level < 1 || level > g.n) {
        throw std::out_of_range("origin block phase: level " + std::to_string(level));
    }
    const std::int64_t b = pow3(level);
    const complex factor = -std::polar(1.0, theta);
    for (std::int64_t x = 0; x < g.side; x += b) {
        const std::int64_t row = x * g.side;
        for (std::int64_t y = 0; y < g.side; y += b) psi[row + y] *= factor;
    }
    if (ledger) ledger->charge(OpKind::selective_phase_origin_block, 1);
}

namespace {

struct Givens {
    double c, s;
};

Givens lb_rotation(int level, std::int64_t b) {
    const double m = static_cast<double>(pow3(level) - b + 1);
    return {1.0 / std::sqrt(m), std::sqrt((m - 1.0) / m)};
}

} // namespace

void apply_Lb(QuantumState& psi, int level, std::int64_t b, Axis axis, bool adjoint,
              CostLedger* ledger) {
    const LatticeGeometry& g = psi.geometry();
    if (level < 1 || level > g.n) {
        throw std::out_of_range("L_b: level " + std::to_string(level));
    }
    const std::int64_t block = pow3(level);
    if (b < 1 || b > block - 1) {
        throw std::out_of_range("L_b: b = " + std::to_string(b) + " outside 1.." +
                                std::to_string(block - 1));
    }
    const auto [c, s0] = lb_rotation(level, b);
    const double s = adjoint ? -s0 : s0;
    auto a = psi.amplitudes();

    if (axis == Axis::x) {
        // Rows x0 = block_start + b - 1 and x0 + 1, across every column.
        for (std::int64_t start = 0; start < g.side; start += block) {
            const std::int64_t lo = (start + b - 1) * g.side;
            const std::int64_t hi = lo + g.side;
            for (std::int64_t y = 0; y < g.side; ++y) {
                const complex u = a[lo + y];
                const complex v = a[hi + y];
                a[lo + y] = c * u - s * v;
                a[hi + y] = s * u + c * v;
            }
        }
    } else {
        for (std::int64_t x = 0; x < g.side; ++x) {
            const std::int64_t row = x * g.side;
            for (std::int64_t start = 0; start < g.side; start += block) {
                const std::int64_t lo = row + start + b - 1;
                const complex u = a[lo];
                const complex v = a[lo + 1];
                a[lo] = c * u - s * v;
                a[lo + 1] = s * u + c * v;
            }
        }
    }
    if (ledger) ledger->charge(OpKind::L_b, 1);
}

void apply_Sk_axis(QuantumState& psi, int level, Axis axis, bool adjoint, CostLedger* ledger) {
    const std::int64_t last = pow3(level) - 1;
    if (!adjoint) {
        for (std::int64_t b = 1; b <= last; ++b) apply_Lb(psi, level, b, axis);
    } else {
        for (std::int64_t b = last; b >= 1; --b) apply_Lb(psi, level, b, axis, true);
    }
    if (ledger) ledger->charge(axis == Axis::x ? OpKind::S_kx : OpKind::S_ky, last);
}

void apply_Sk(QuantumState& psi, int level, bool adjoint, CostLedger* ledger) {
    if (!adjoint) {
        apply_Sk_axis(psi, level, Axis::y);
        apply_Sk_axis(psi, level, Axis::x);
    } else {
        apply_Sk_axis(psi, level, Axis::x, true);
        apply_Sk_axis(psi, level, Axis::y, true);
    }
    if (ledger) ledger->charge(OpKind::S_k, 2 * (pow3(level) - 1));
}

std::vector<complex> block_overlaps(const QuantumState& psi, int level) {
    const LatticeGeometry& g = psi.geometry();
    const std::int64_t b = pow3(level);
    const std::int64_t blocks = g.side / b;
    const double amp = 1.0 / static_cast<double>(b);
    std::vector<complex> out(static_cast<std::size_t>(blocks * blocks));
    for (std::int64_t alpha = 0; alpha < blocks; ++alpha) {
        for (std::int64_t beta = 0; beta < blocks; ++beta) {
            KahanComplexSum acc;
            for (std::int64_t x = alpha * b; x < (alpha + 1) * b; ++x) {
                const std::int64_t row = x * g.side;
                for (std::int64_t y = beta * b; y < (beta + 1) * b; ++y) acc.add(psi[row + y]);
            }
            out[static_cast<std::size_t>(alpha * blocks + beta)] = acc.value() * amp;
        }
    }
    return out;
}

void apply_bigS(QuantumState& psi, int level, double delta_phase, bool adjoint, BigSPath path,
                CostLedger* ledger) {
    const double theta = adjoint ? -delta_phase : delta_phase;
    if (path == BigSPath::circuit) {
        apply_Sk(psi, level, true, ledger);
        apply_origin_block_phase(psi, level, theta, ledger);
        apply_Sk(psi, level, false, ledger);
        return;
    }

    // Fast path: psi -= f_theta sum_blocks <s|psi> |s>. Bills the circuit it
    // replaces.
    const LatticeGeometry& g = psi.geometry();
    const std::int64_t b = pow3(level);
    const std::int64_t blocks = g.side / b;
    const double amp = 1.0 / static_cast<double>(b);
    const complex f = f_phase(theta);
    const std::vector<complex> ov = block_overlaps(psi, level);
    for (std::int64_t alpha = 0; alpha < blocks; ++alpha) {
        for (std::int64_t beta = 0; beta < blocks; ++beta) {
            const complex shift = f * ov[static_cast<std::size_t>(alpha * blocks + beta)] * amp;
            for (std::int64_t x = alpha * b; x < (alpha + 1) * b; ++x) {
                const std::int64_t row = x * g.side;
                for (std::int64_t y = beta * b; y < (beta + 1) * b; ++y) psi[row + y] -= shift;
            }
        }
    }
    if (ledger) {
        ledger->charge(OpKind::S_k, 2 * (b - 1));
        ledger->charge(OpKind::selective_phase_origin_block, 1);
        ledger->charge(OpKind::S_k, 2 * (b - 1));
    }
}

std::int64_t cost_of(OpKind kind, int level) {
    switch (kind) {
        case OpKind::selective_phase_target:
        case OpKind::selective_phase_origin_block:
        case OpKind::L_b:
            return 1;
        case OpKind::S_kx:
        case OpKind::S_ky:
            return pow3(level) - 1;
        case OpKind::S_k:
            return 2 * (pow3(level) - 1);
        case OpKind::big_S:
            return 4 * pow3(level) - 3;
    }
    return 0;
}

} // namespace rqss
