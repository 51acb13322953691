#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace rqss {

using complex = std::complex<double>;

/// Thrown when a state's squared norm drifts beyond tolerance. Drift is never
/// repaired by renormalizing; it has to surface as an error.
class unitarity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Default memory guard: N = 9^7 is about 4.8M amplitudes (~77 MB per state).
inline constexpr int kDefaultMaxDepth = 7;

std::int64_t pow3(int k);

/// Square lattice of side 3^n, N = 9^n vertices.
struct LatticeGeometry {
    int n = 1;
    std::int64_t side = 3;
    std::int64_t num_vertices = 9;

    LatticeGeometry() = default;
    explicit LatticeGeometry(int depth, int max_depth = kDefaultMaxDepth);

    friend bool operator==(const LatticeGeometry&, const LatticeGeometry&) = default;
};

struct Vertex {
    std::int64_t x = 0;
    std::int64_t y = 0;
    friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Level-k block of side 3^k; (alpha, beta) index the grid of blocks.
struct SubsquareId {
    int level = 1;
    std::int64_t alpha = 0;
    std::int64_t beta = 0;
    friend bool operator==(const SubsquareId&, const SubsquareId&) = default;
};

/// Row-major flat index x * 3^n + y. A level-k block is then a strided range,
/// which keeps block-local operator application cache friendly.
std::int64_t flat_index(std::int64_t x, std::int64_t y, const LatticeGeometry& g);
Vertex vertex_of(std::int64_t index, const LatticeGeometry& g);

/// Block containing (x, y) at the given level: alpha = floor(x / 3^k), beta likewise.
SubsquareId subsquare_of(std::int64_t x, std::int64_t y, int level, const LatticeGeometry& g);
/// Coordinates of (x, y) inside its level-k block: (x mod 3^k, y mod 3^k).
Vertex local_offset(std::int64_t x, std::int64_t y, int level, const LatticeGeometry& g);
/// Lattice coordinates of the block's (0, 0) corner.
Vertex block_origin(const SubsquareId& block, const LatticeGeometry& g);
/// True when v lies inside the block.
bool block_contains(const SubsquareId& block, Vertex v, const LatticeGeometry& g);

/// Dense complex amplitude vector over the lattice vertices.
class QuantumState {
public:
    explicit QuantumState(const LatticeGeometry& g);
    static QuantumState basis(const LatticeGeometry& g, Vertex v);

    const LatticeGeometry& geometry() const { return geom_; }
    std::int64_t size() const { return static_cast<std::int64_t>(amps_.size()); }

    complex& operator[](std::int64_t i) { return amps_[static_cast<std::size_t>(i)]; }
    const complex& operator[](std::int64_t i) const { return amps_[static_cast<std::size_t>(i)]; }
    complex& at(Vertex v) { return amps_[static_cast<std::size_t>(flat_index(v.x, v.y, geom_))]; }
    const complex& at(Vertex v) const {
        return amps_[static_cast<std::size_t>(flat_index(v.x, v.y, geom_))];
    }

    std::span<complex> amplitudes() { return amps_; }
    std::span<const complex> amplitudes() const { return amps_; }

    /// Compensated sum of |amplitude|^2.
    double norm_sq() const;
    /// Throws unitarity_error when |norm_sq - 1| > tol.
    void assert_unit(double tol = 1e-10) const;

private:
    LatticeGeometry geom_;
    std::vector<complex> amps_;
};

/// Equal amplitude 3^{-k} on the 9^k vertices of the block, zero elsewhere.
QuantumState uss_state(const SubsquareId& block, const LatticeGeometry& g);

/// <a|b> = sum conj(a_i) b_i, compensated. Throws on geometry mismatch.
complex inner_product(const QuantumState& a, const QuantumState& b);

/// Largest |amplitude| outside the block (the orthogonality residual).
double max_abs_outside_block(const QuantumState& psi, const SubsquareId& block);

/// Overlap <s_block|psi> without materializing the u.s.s. state.
complex block_uss_overlap(const QuantumState& psi, const SubsquareId& block);

} // namespace rqss
