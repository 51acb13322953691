#include "rqss/dense_oracle.hpp"

#include <cmath>
#include <cstring>
#include <random>
#include <string>

namespace rqss {

DenseMatrix dense_matrix(const OperatorRequest& req, const LatticeGeometry& g,
                         const ErrorConfig& cfg) {
    if (g.n > 2) {
        throw std::invalid_argument("dense oracle limited to n <= 2, got n = " +
                                    std::to_string(g.n));
    }
    const ErrorChannel channel(cfg, g);
    DenseMatrix m(g.num_vertices);
    for (std::int64_t col = 0; col < g.num_vertices; ++col) {
        QuantumState st = QuantumState::basis(g, vertex_of(col, g));
        CostLedger scratch;
        channel.apply(req, &st, scratch);
        for (std::int64_t row = 0; row < g.num_vertices; ++row) m.at(row, col) = st[row];
    }
    return m;
}

QuantumState probe_state(const LatticeGeometry& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    QuantumState st(g);
    auto a = st.amplitudes();
    for (auto& z : a) {
        const double re = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
        const double im = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
        z = {re, im};
    }
    const double norm = std::sqrt(st.norm_sq());
    for (auto& z : a) z /= norm;
    return st;
}

std::uint64_t probe_hash(const OperatorRequest& req, const LatticeGeometry& g,
                         const ErrorConfig& cfg, std::uint64_t probe_seed) {
    const ErrorChannel channel(cfg, g);
    QuantumState st = probe_state(g, probe_seed);
    CostLedger scratch;
    channel.apply(req, &st, scratch);

    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const complex& z : st.amplitudes()) {
        unsigned char bytes[sizeof(complex)];
        std::memcpy(bytes, &z, sizeof(complex));
        for (unsigned char b : bytes) {
            h ^= b;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

} // namespace rqss
