#include "rqss/lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "rqss/kahan.hpp"

namespace rqss {

std::int64_t pow3(int k) {
    std::int64_t p = 1;
    for (int i = 0; i < k; ++i) p *= 3;
    return p;
}

LatticeGeometry::LatticeGeometry(int depth, int max_depth) : n(depth) {
    if (depth < 1) {
        throw std::invalid_argument("lattice depth must be >= 1, got " + std::to_string(depth));
    }
    if (depth > max_depth) {
        throw std::invalid_argument("lattice depth " + std::to_string(depth) +
                                    " exceeds memory guard " + std::to_string(max_depth));
    }
    side = pow3(depth);
    num_vertices = side * side;
}

std::int64_t flat_index(std::int64_t x, std::int64_t y, const LatticeGeometry& g) {
    if (x < 0 || x >= g.side || y < 0 || y >= g.side) {
        throw std::out_of_range("vertex (" + std::to_string(x) + "," + std::to_string(y) +
                                ") outside lattice of side " + std::to_string(g.side));
    }
    return x * g.side + y;
}

Vertex vertex_of(std::int64_t index, const LatticeGeometry& g) {
    if (index < 0 || index >= g.num_vertices) {
        throw std::out_of_range("flat index " + std::to_string(index) + " outside lattice");
    }
    return {index / g.side, index % g.side};
}

namespace {

void check_level(int level, const LatticeGeometry& g) {
    if (level < 1 || level > g.n) {
        throw std::out_of_range("level " + std::to_string(level) + " outside 1.." +
                                std::to_string(g.n));
    }
}

} // namespace

SubsquareId subsquare_of(std::int64_t x, std::int64_t y, int level, const LatticeGeometry& g) {
    check_level(level, g);
    (void)flat_index(x, y, g); // range check
    const std::int64_t b = pow3(level);
    return {level, x / b, y / b};
}

Vertex local_offset(std::int64_t x, std::int64_t y, int level, const LatticeGeometry& g) {
    check_level(level, g);
    (void)flat_index(x, y, g);
    const std::int64_t b = pow3(level);
    return {x % b, y % b};
}

Vertex block_origin(const SubsquareId& block, const LatticeGeometry& g) {
    check_level(block.level, g);
    const std::int64_t b = pow3(block.level);
    const std::int64_t blocks = g.side / b;
    if (block.alpha < 0 || block.alpha >= blocks || block.beta < 0 || block.beta >= blocks) {
        throw std::out_of_range("subsquare (" + std::to_string(block.alpha) + "," +
                                std::to_string(block.beta) + ") outside level " +
                                std::to_string(block.level) + " grid");
    }
    return {block.alpha * b, block.beta * b};
}

bool block_contains(const SubsquareId& block, Vertex v, const LatticeGeometry& g) {
    const Vertex o = block_origin(block, g);
    const std::int64_t b = pow3(block.level);
    return v.x >= o.x && v.x < o.x + b && v.y >= o.y && v.y < o.y + b;
}

QuantumState::QuantumState(const LatticeGeometry& g)
    : geom_(g), amps_(static_cast<std::size_t>(g.num_vertices)) {}

QuantumState QuantumState::basis(const LatticeGeometry& g, Vertex v) {
    QuantumState s(g);
    s.at(v) = 1.0;
    return s;
}

double QuantumState::norm_sq() const {
    KahanSum acc;
    for (const complex& a : amps_) acc.add(std::norm(a));
    return acc.value();
}

void QuantumState::assert_unit(double tol) const {
    const double n2 = norm_sq();
    if (std::abs(n2 - 1.0) > tol) {
        throw unitarity_error("state norm^2 drifted to " + std::to_string(n2) +
                              " (tolerance " + std::to_string(tol) + ")");
    }
}

QuantumState uss_state(const SubsquareId& block, const LatticeGeometry& g) {
    QuantumState s(g);
    const Vertex o = block_origin(block, g);
    const std::int64_t b = pow3(block.level);
    const double amp = 1.0 / static_cast<double>(b);
    for (std::int64_t x = o.x; x < o.x + b; ++x) {
        const std::int64_t row = x * g.side;
        for (std::int64_t y = o.y; y < o.y + b; ++y) s[row + y] = amp;
    }
    return s;
}

complex inner_product(const QuantumState& a, const QuantumState& b) {
    if (!(a.geometry() == b.geometry())) {
        throw std::invalid_argument("inner_product: geometry mismatch");
    }
    KahanComplexSum acc;
    const auto av = a.amplitudes();
    const auto bv = b.amplitudes();
    for (std::size_t i = 0; i < av.size(); ++i) acc.add(std::conj(av[i]) * bv[i]);
    return acc.value();
}

double max_abs_outside_block(const QuantumState& psi, const SubsquareId& block) {
    const LatticeGeometry& g = psi.geometry();
    const Vertex o = block_origin(block, g);
    const std::int64_t b = pow3(block.level);
    double worst = 0.0;
    for (std::int64_t x = 0; x < g.side; ++x) {
        const bool x_in = x >= o.x && x < o.x + b;
        const std::int64_t row = x * g.side;
        for (std::int64_t y = 0; y < g.side; ++y) {
            if (x_in && y >= o.y && y < o.y + b) continue;
            worst = std::max(worst, std::abs(psi[row + y]));
        }
    }
    return worst;
}

complex block_uss_overlap(const QuantumState& psi, const SubsquareId& block) {
    const LatticeGeometry& g = psi.geometry();
    const Vertex o = block_origin(block, g);
    const std::int64_t b = pow3(block.level);
    KahanComplexSum acc;
    for (std::int64_t x = o.x; x < o.x + b; ++x) {
        const std::int64_t row = x * g.side;
        for (std::int64_t y = o.y; y < o.y + b; ++y) acc.add(psi[row + y]);
    }
    return acc.value() / static_cast<double>(b);
}

} // namespace rqss
