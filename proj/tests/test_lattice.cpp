#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "rqss/lattice.hpp"

using namespace rqss;

TEST_CASE("geometry sides and guards") {
    const LatticeGeometry g1(1);
    CHECK(g1.side == 3);
    CHECK(g1.num_vertices == 9);
    const LatticeGeometry g4(4);
    CHECK(g4.side == 81);
    CHECK(g4.num_vertices == 6561);
    CHECK_THROWS_AS(LatticeGeometry(0), std::invalid_argument);
    CHECK_THROWS_AS(LatticeGeometry(8), std::invalid_argument); // default guard
    CHECK_NOTHROW(LatticeGeometry(8, 9));                       // guard is configurable
}

TEST_CASE("flat index examples and round trip") {
    const LatticeGeometry g2(2);
    const LatticeGeometry g1(1);
    CHECK(flat_index(0, 0, g2) == 0);
    CHECK(flat_index(1, 2, g1) == 5);
    CHECK(flat_index(8, 8, g2) == 80);
    CHECK_THROWS_AS(flat_index(9, 0, g2), std::out_of_range);
    CHECK_THROWS_AS(flat_index(0, -1, g2), std::out_of_range);

    for (std::int64_t i = 0; i < g2.num_vertices; ++i) {
        const Vertex v = vertex_of(i, g2);
        CHECK(flat_index(v.x, v.y, g2) == i);
    }
}

TEST_CASE("subsquare_of examples") {
    const LatticeGeometry g2(2);
    const SubsquareId s = subsquare_of(4, 7, 1, g2);
    CHECK(s.alpha == 1);
    CHECK(s.beta == 2);
    const Vertex off = local_offset(4, 7, 1, g2);
    CHECK(off.x == 1);
    CHECK(off.y == 1);

    CHECK(subsquare_of(0, 0, 1, g2) == SubsquareId{1, 0, 0});
    CHECK(subsquare_of(8, 3, 2, g2) == SubsquareId{2, 0, 0});
    const Vertex off2 = local_offset(8, 3, 2, g2);
    CHECK(off2.x == 8);
    CHECK(off2.y == 3);

    CHECK_THROWS_AS(subsquare_of(0, 0, 3, g2), std::out_of_range);
    CHECK_THROWS_AS(subsquare_of(0, 0, 0, g2), std::out_of_range);
}

TEST_CASE("subsquare tiling and nesting") {
    const LatticeGeometry g(3);
    for (int level = 1; level <= 3; ++level) {
        std::set<std::pair<std::int64_t, std::int64_t>> seen;
        for (std::int64_t x = 0; x < g.side; ++x) {
            for (std::int64_t y = 0; y < g.side; ++y) {
                const SubsquareId b = subsquare_of(x, y, level, g);
                CHECK(block_contains(b, {x, y}, g));
                seen.insert({b.alpha, b.beta});
            }
        }
        const std::int64_t blocks = g.side / pow3(level);
        CHECK(static_cast<std::int64_t>(seen.size()) == blocks * blocks);
    }
    // the level-k block sits inside the level-(k+1) block of the same vertex
    for (std::int64_t x = 0; x < g.side; x += 5) {
        for (std::int64_t y = 0; y < g.side; y += 7) {
            for (int level = 1; level < 3; ++level) {
                const SubsquareId inner = subsquare_of(x, y, level, g);
                const SubsquareId outer = subsquare_of(x, y, level + 1, g);
                const Vertex o = block_origin(inner, g);
                CHECK(block_contains(outer, o, g));
                CHECK(block_contains(outer,
                                     {o.x + pow3(level) - 1, o.y + pow3(level) - 1}, g));
            }
        }
    }
}

TEST_CASE("uss states") {
    const LatticeGeometry g2(2);
    const QuantumState whole = uss_state({2, 0, 0}, g2);
    for (std::int64_t i = 0; i < whole.size(); ++i) {
        CHECK(whole[i] == complex{1.0 / 9.0, 0.0});
    }
    CHECK(std::abs(whole.norm_sq() - 1.0) <= 1e-12);

    const LatticeGeometry g1(1);
    const QuantumState block = uss_state({1, 0, 0}, g1);
    for (std::int64_t i = 0; i < block.size(); ++i) CHECK(block[i] == complex{1.0 / 3.0, 0.0});

    // nested tau-block overlap is exactly 1/3
    const QuantumState inner = uss_state(subsquare_of(4, 4, 1, g2), g2);
    const QuantumState outer = uss_state(subsquare_of(4, 4, 2, g2), g2);
    CHECK(std::abs(inner_product(outer, inner) - complex{1.0 / 3.0, 0.0}) <= 1e-12);
}

TEST_CASE("inner product") {
    const LatticeGeometry g2(2);
    const QuantumState t = QuantumState::basis(g2, {4, 4});
    CHECK(std::abs(inner_product(t, t) - complex{1.0, 0.0}) <= 1e-15);

    const QuantumState s1 = uss_state(subsquare_of(4, 4, 1, g2), g2);
    CHECK(std::abs(inner_product(s1, t) - complex{1.0 / 3.0, 0.0}) <= 1e-15);

    const QuantumState other = QuantumState::basis(g2, {0, 0});
    CHECK(inner_product(other, t) == complex{0.0, 0.0});

    // conjugate symmetry
    QuantumState a(g2), b(g2);
    a.at({1, 2}) = {0.6, 0.3};
    a.at({2, 2}) = {0.0, std::sqrt(1 - 0.45)};
    b.at({1, 2}) = {0.1, -0.7};
    b.at({7, 0}) = {std::sqrt(1 - 0.5), 0.0};
    CHECK(std::abs(inner_product(a, b) - std::conj(inner_product(b, a))) <= 1e-15);

    const LatticeGeometry g1(1);
    const QuantumState small(g1);
    CHECK_THROWS_AS(inner_product(t, small), std::invalid_argument);
}

TEST_CASE("norm drift surfaces as an error") {
    const LatticeGeometry g(1);
    QuantumState st = QuantumState::basis(g, {1, 1});
    CHECK_NOTHROW(st.assert_unit());
    st[0] = 0.1;
    CHECK_THROWS_AS(st.assert_unit(1e-10), unitarity_error);
}

TEST_CASE("block helpers") {
    const LatticeGeometry g(2);
    QuantumState st(g);
    st.at({3, 3}) = {0.8, 0.0};
    st.at({0, 0}) = {0.0, 0.6};
    const SubsquareId b = subsquare_of(3, 3, 1, g);
    CHECK(max_abs_outside_block(st, b) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(std::abs(block_uss_overlap(st, b) - complex{0.8 / 3.0, 0.0}) <= 1e-15);
}
