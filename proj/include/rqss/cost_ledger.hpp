#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace rqss {

enum class OpKind : int {
    selective_phase_target,
    selective_phase_origin_block,
    L_b,
    S_kx,
    S_ky,
    S_k,
    big_S,
};

inline constexpr int kOpKindCount = 7;

constexpr std::string_view to_string(OpKind k) {
    switch (k) {
        case OpKind::selective_phase_target: return "selective_phase_target";
        case OpKind::selective_phase_origin_block: return "selective_phase_origin_block";
        case OpKind::L_b: return "L_b";
        case OpKind::S_kx: return "S_kx";
        case OpKind::S_ky: return "S_ky";
        case OpKind::S_k: return "S_k";
        case OpKind::big_S: return "big_S";
    }
    return "unknown";
}

/// Lattice-time-step counter: every local operator costs 1 step, costs add
/// under composition, and an adjoint costs the same as the operator itself.
struct CostLedger {
    std::int64_t steps = 0;
    std::array<std::int64_t, kOpKindCount> breakdown{};

    void charge(OpKind kind, std::int64_t n = 1) {
        steps += n;
        breakdown[static_cast<int>(kind)] += n;
    }
    std::int64_t kind_steps(OpKind kind) const { return breakdown[static_cast<int>(kind)]; }
};

} // namespace rqss
