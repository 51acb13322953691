#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rqss/dense_oracle.hpp"
#include "rqss/error_injection.hpp"
#include "rqss/phase_ops.hpp"

using namespace rqss;

namespace {

double state_diff(const QuantumState& a, const QuantumState& b) {
    double worst = 0.0;
    for (std::int64_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

} // namespace

TEST_CASE("phase coefficient") {
    CHECK(f_phase(0.0) == complex{2.0, 0.0});
    CHECK(std::abs(f_phase(M_PI)) <= 1e-15);
    for (double theta : {0.3, -1.2, 2.9}) {
        CHECK(std::norm(f_phase(theta)) == doctest::Approx(2.0 + 2.0 * std::cos(theta)));
    }
    CHECK(PhaseGate{0.4}.f() == f_phase(0.4));
}

TEST_CASE("selective phase on the rotated state itself") {
    const LatticeGeometry g(1);
    SUBCASE("theta = 0 reflects") {
        QuantumState st = QuantumState::basis(g, {1, 1});
        apply_selective_phase(st, Vertex{1, 1}, 0.0);
        CHECK(std::abs(st.at({1, 1}) - complex{-1.0, 0.0}) <= 1e-15);
    }
    SUBCASE("theta = pi is the identity") {
        QuantumState st = probe_state(g, 3);
        QuantumState orig = st;
        apply_selective_phase(st, orig, M_PI);
        CHECK(state_diff(st, orig) <= 1e-15);
    }
    SUBCASE("theta = pi/2 multiplies by -i") {
        QuantumState st = QuantumState::basis(g, {2, 0});
        apply_selective_phase(st, Vertex{2, 0}, M_PI / 2);
        CHECK(std::abs(st.at({2, 0}) - complex{0.0, -1.0}) <= 1e-15);
    }
    SUBCASE("state overload agrees with the vertex overload") {
        QuantumState a = probe_state(g, 4);
        QuantumState b = a;
        apply_selective_phase(a, Vertex{0, 2}, 0.7);
        apply_selective_phase(b, QuantumState::basis(g, {0, 2}), 0.7);
        CHECK(state_diff(a, b) <= 1e-14);
    }
    SUBCASE("non-unit chi is rejected") {
        QuantumState st = probe_state(g, 5);
        QuantumState bad(g);
        bad.at({0, 0}) = 0.5;
        CHECK_THROWS_AS(apply_selective_phase(st, bad, 0.0), std::invalid_argument);
    }
}

TEST_CASE("L_b rotation images") {
    const LatticeGeometry g(1);
    SUBCASE("b = 1 from column 0") {
        QuantumState st = QuantumState::basis(g, {0, 1});
        apply_Lb(st, 1, 1, Axis::x);
        CHECK(std::abs(st.at({0, 1}) - complex{1.0 / std::sqrt(3.0), 0.0}) <= 1e-15);
        CHECK(std::abs(st.at({1, 1}) - complex{std::sqrt(2.0 / 3.0), 0.0}) <= 1e-15);
        CHECK(std::abs(st.at({2, 1})) <= 1e-15);
    }
    SUBCASE("b = 2 from column 1") {
        QuantumState st = QuantumState::basis(g, {1, 2});
        apply_Lb(st, 1, 2, Axis::x);
        CHECK(std::abs(st.at({1, 2}) - complex{1.0 / std::sqrt(2.0), 0.0}) <= 1e-15);
        CHECK(std::abs(st.at({2, 2}) - complex{1.0 / std::sqrt(2.0), 0.0}) <= 1e-15);
    }
    SUBCASE("adjoint undoes") {
        QuantumState st = probe_state(g, 6);
        const QuantumState orig = st;
        apply_Lb(st, 1, 2, Axis::y);
        apply_Lb(st, 1, 2, Axis::y, true);
        CHECK(state_diff(st, orig) <= 1e-12);
    }
    SUBCASE("b out of range") {
        QuantumState st = QuantumState::basis(g, {0, 0});
        CHECK_THROWS_AS(apply_Lb(st, 1, 0, Axis::x), std::out_of_range);
        CHECK_THROWS_AS(apply_Lb(st, 1, 3, Axis::x), std::out_of_range);
    }
}

TEST_CASE("superposition builder") {
    SUBCASE("S_1 maps block corners to block u.s.s., every block") {
        const LatticeGeometry g(2);
        QuantumState st(g);
        // corner of block (1, 2) at level 1
        st.at({3, 6}) = 1.0;
        CostLedger ledger;
        apply_Sk(st, 1, false, &ledger);
        CHECK(ledger.steps == 4);
        for (std::int64_t x = 3; x < 6; ++x) {
            for (std::int64_t y = 6; y < 9; ++y) {
                CHECK(std::abs(st.at({x, y}) - complex{1.0 / 3.0, 0.0}) <= 1e-14);
            }
        }
        CHECK(max_abs_outside_block(st, {1, 1, 2}) <= 1e-15);
    }
    SUBCASE("adjoint round trip at every level") {
        const LatticeGeometry g(3);
        for (int level = 1; level <= 3; ++level) {
            QuantumState st = probe_state(g, 7 + static_cast<std::uint64_t>(level));
            const QuantumState orig = st;
            apply_Sk(st, level);
            st.assert_unit(1e-12);
            apply_Sk(st, level, true);
            CHECK(state_diff(st, orig) <= 1e-12);
        }
    }
    SUBCASE("ledger cost 2(3^k - 1) as integers") {
        const LatticeGeometry g(3);
        for (int level = 1; level <= 3; ++level) {
            QuantumState st = QuantumState::basis(g, {0, 0});
            CostLedger ledger;
            apply_Sk(st, level, false, &ledger);
            CHECK(ledger.steps == 2 * (pow3(level) - 1));
        }
    }
}

TEST_CASE("simultaneous block reflection") {
    SUBCASE("ledger costs") {
        const LatticeGeometry g(2);
        for (int level = 1; level <= 2; ++level) {
            for (BigSPath path : {BigSPath::circuit, BigSPath::fast}) {
                QuantumState st = probe_state(g, 11);
                CostLedger ledger;
                apply_bigS(st, level, 0.2, false, path, &ledger);
                CHECK(ledger.steps == 4 * pow3(level) - 3);
            }
        }
    }
    SUBCASE("delta = pi is the identity") {
        const LatticeGeometry g(2);
        QuantumState st = probe_state(g, 12);
        const QuantumState orig = st;
        apply_bigS(st, 1, M_PI, false, BigSPath::fast);
        CHECK(state_diff(st, orig) <= 1e-14);
    }
    SUBCASE("circuit and fast paths agree on random states") {
        const LatticeGeometry g(3);
        for (int level = 1; level <= 3; ++level) {
            for (int trial = 0; trial < 5; ++trial) {
                QuantumState a = probe_state(g, 100 + static_cast<std::uint64_t>(trial));
                QuantumState b = a;
                apply_bigS(a, level, -0.7, true, BigSPath::circuit);
                apply_bigS(b, level, -0.7, true, BigSPath::fast);
                CHECK(state_diff(a, b) <= 1e-10);
            }
        }
    }
    SUBCASE("n = 1 dense matrix equals 1 - 2|s><s|") {
        const LatticeGeometry g(1);
        const OperatorRequest req{OpKind::big_S, 1, false, 0.0, {}, 1, Axis::x, BigSPath::fast};
        const DenseMatrix m = dense_matrix(req, g);
        for (std::int64_t r = 0; r < 9; ++r) {
            for (std::int64_t c = 0; c < 9; ++c) {
                const double expect = (r == c ? 1.0 : 0.0) - 2.0 / 9.0;
                CHECK(std::abs(m.at(r, c) - complex{expect, 0.0}) <= 1e-12);
            }
        }
    }
}

TEST_CASE("operator requests") {
    OperatorRequest req;
    req.kind = OpKind::big_S;
    req.level = 2;
    req.nominal_phase = 0.3;
    const OperatorRequest twice = req.adjointed().adjointed();
    CHECK(twice.adjoint == req.adjoint);
    CHECK(twice.kind == req.kind);
    CHECK(twice.nominal_phase == req.nominal_phase);
}

TEST_CASE("closed-form costs match ledger charges through level 7") {
    const LatticeGeometry g(7);
    const ErrorChannel channel({}, g);
    for (int level = 1; level <= 7; ++level) {
        CostLedger ledger;
        channel.S_k(nullptr, level, false, ledger);
        CHECK(ledger.steps == cost_of(OpKind::S_k, level));
        CHECK(ledger.steps == 2 * (pow3(level) - 1));
        CostLedger big;
        channel.big_S(nullptr, level, false, BigSPath::fast, big);
        CHECK(big.steps == cost_of(OpKind::big_S, level));
        CHECK(big.steps == 4 * pow3(level) - 3);
    }
    CHECK(cost_of(OpKind::L_b, 5) == 1);
    CHECK(cost_of(OpKind::S_kx, 3) == 26);
}

TEST_CASE("block overlaps match a direct sum") {
    const LatticeGeometry g(2);
    const QuantumState st = probe_state(g, 13);
    const auto fast = block_overlaps(st, 1);
    std::size_t idx = 0;
    for (std::int64_t alpha = 0; alpha < 3; ++alpha) {
        for (std::int64_t beta = 0; beta < 3; ++beta, ++idx) {
            const QuantumState uss = uss_state({1, alpha, beta}, g);
            CHECK(std::abs(fast[idx] - inner_product(uss, st)) <= 1e-14);
        }
    }
}

TEST_CASE("dense oracle basics") {
    const LatticeGeometry g(1);
    SUBCASE("S_1 column at the block corner is the u.s.s.") {
        const OperatorRequest req{OpKind::S_k, 1, false, 0.0, {}, 1, Axis::x, BigSPath::fast};
        const DenseMatrix m = dense_matrix(req, g);
        const std::int64_t corner = flat_index(0, 0, g);
        for (std::int64_t r = 0; r < 9; ++r) {
            CHECK(std::abs(m.at(r, corner) - complex{1.0 / 3.0, 0.0}) <= 1e-12);
        }
    }
    SUBCASE("unitarity of a sample of kinds") {
        for (OpKind kind : {OpKind::selective_phase_target, OpKind::L_b, OpKind::S_kx,
                            OpKind::S_k, OpKind::big_S}) {
            OperatorRequest req;
            req.kind = kind;
            req.level = 1;
            req.target = {1, 1};
            req.b = 1;
            CHECK(unitarity_defect(dense_matrix(req, g)) <= 1e-10);
        }
    }
    SUBCASE("guard at n > 2") {
        const LatticeGeometry g3(3);
        OperatorRequest req;
        CHECK_THROWS_AS(dense_matrix(req, g3), std::invalid_argument);
    }
}
