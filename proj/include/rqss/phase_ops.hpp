#pragma once

#include <cstdint>
#include <vector>

#include "rqss/cost_ledger.hpp"
#include "rqss/lattice.hpp"

namespace rqss {

/// Coefficient of the selective phase rotation by angle pi + theta:
/// I^theta(chi) = 1 - f_theta |chi><chi| with f_theta = 1 + e^{i theta}.
/// f_0 = 2 is selective inversion, f_pi = 0 is the identity.
complex f_phase(double theta);

struct PhaseGate {
    double theta = 0.0;
    complex f() const { return f_phase(theta); }
};

enum class Axis : std::uint8_t { x, y };
enum class BigSPath : std::uint8_t { circuit, fast };

/// Uniform handle for one primitive application. The error-injection layer
/// interposes on these requests (see error_injection.hpp); the dense oracle
/// builds explicit matrices from them.
struct OperatorRequest {
    OpKind kind = OpKind::S_k;
    int level = 1;
    bool adjoint = false;
    double nominal_phase = 0.0; ///< offset over the nominal pi rotation
    Vertex target{};            ///< selective_phase_target only
    std::int64_t b = 1;         ///< L_b only
    Axis axis = Axis::x;        ///< L_b only
    BigSPath path = BigSPath::fast;

    OperatorRequest adjointed() const {
        OperatorRequest r = *this;
        r.adjoint = !r.adjoint;
        return r;
    }
};

// Primitive applications with nominal phases (no error injection).

/// Reflection psi <- psi - f_theta <chi|psi> chi about an arbitrary unit
/// state. Step cost is accounted by the caller (nonlocal in general).
void apply_selective_phase(QuantumState& psi, const QuantumState& chi, double theta);

/// Phase pi + theta on a single vertex; local, cost 1.
void apply_selective_phase(QuantumState& psi, Vertex chi, double theta,
                           CostLedger* ledger = nullptr);

/// Simultaneous phase pi + theta on the |0,0> vertex of every level-k block;
/// diagonal and local, cost 1.
void apply_origin_block_phase(QuantumState& psi, int level, double theta,
                              CostLedger* ledger = nullptr);

/// Two-level rotation coupling local coordinate b-1 to b along the axis, in
/// every level-k block and every transverse coordinate at once:
/// |b-1> -> (|b-1> + sqrt(m-1)|b>)/sqrt(m) with m = 3^k - b + 1, completed as
/// the real Givens rotation with angle arccos(1/sqrt(m)). Local, cost 1.
void apply_Lb(QuantumState& psi, int level, std::int64_t b, Axis axis, bool adjoint = false,
              CostLedger* ledger = nullptr);

/// Chain L_1 .. L_{3^k-1} along one axis; spreads |0> uniformly over the
/// block's axis range. Cost 3^k - 1.
void apply_Sk_axis(QuantumState& psi, int level, Axis axis, bool adjoint = false,
                   CostLedger* ledger = nullptr);

/// Superposition builder: maps |0,0> of every level-k block to the block's
/// uniform superposition. Applies the y chain first, then the x chain; the
/// adjoint reverses. Cost 2(3^k - 1).
void apply_Sk(QuantumState& psi, int level, bool adjoint = false, CostLedger* ledger = nullptr);

/// Simultaneous selective phase about every level-k block u.s.s.
/// The circuit path runs S_k^dag, the origin-block phase, then S_k; the fast
/// path applies the equivalent rank-9^{n-k} update directly. Both bill the
/// circuit cost 2 T[S_k] + 1 = 4*3^k - 3.
void apply_bigS(QuantumState& psi, int level, double delta_phase, bool adjoint = false,
                BigSPath path = BigSPath::fast, CostLedger* ledger = nullptr);

/// Closed-form step cost of one request kind at a level.
std::int64_t cost_of(OpKind kind, int level);

/// Overlaps <s_k^{ab}|psi> for every level-k block, in block row-major order,
/// each accumulated with compensated summation.
std::vector<complex> block_overlaps(const QuantumState& psi, int level);

} // namespace rqss
