#include "rqss/dense_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace rqss {

using complex = std::complex<double>;

DenseMatrix DenseMatrix::identity(std::int64_t d) {
    DenseMatrix m(d);
    for (std::int64_t i = 0; i < d; ++i) m.at(i, i) = 1.0;
    return m;
}

DenseMatrix multiply(const DenseMatrix& lhs, const DenseMatrix& rhs) {
    if (lhs.dim != rhs.dim) throw std::invalid_argument("matrix multiply: dimension mismatch");
    DenseMatrix out(lhs.dim);
    for (std::int64_t r = 0; r < lhs.dim; ++r) {
        for (std::int64_t k = 0; k < lhs.dim; ++k) {
            const complex l = lhs.at(r, k);
            if (l == complex{}) continue;
            for (std::int64_t c = 0; c < lhs.dim; ++c) out.at(r, c) += l * rhs.at(k, c);
        }
    }
    return out;
}

std::vector<complex> multiply(const DenseMatrix& m, std::span<const complex> v) {
    if (static_cast<std::int64_t>(v.size()) != m.dim) {
        throw std::invalid_argument("matrix-vector multiply: dimension mismatch");
    }
    std::vector<complex> out(v.size());
    for (std::int64_t r = 0; r < m.dim; ++r) {
        complex acc = 0.0;
        for (std::int64_t c = 0; c < m.dim; ++c) acc += m.at(r, c) * v[static_cast<std::size_t>(c)];
        out[static_cast<std::size_t>(r)] = acc;
    }
    return out;
}

DenseMatrix adjoint(const DenseMatrix& m) {
    DenseMatrix out(m.dim);
    for (std::int64_t r = 0; r < m.dim; ++r) {
        for (std::int64_t c = 0; c < m.dim; ++c) out.at(r, c) = std::conj(m.at(c, r));
    }
    return out;
}

double max_abs_diff(const DenseMatrix& lhs, const DenseMatrix& rhs) {
    if (lhs.dim != rhs.dim) throw std::invalid_argument("matrix diff: dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < lhs.a.size(); ++i) {
        worst = std::max(worst, std::abs(lhs.a[i] - rhs.a[i]));
    }
    return worst;
}

double unitarity_defect(const DenseMatrix& m) {
    return max_abs_diff(multiply(adjoint(m), m), DenseMatrix::identity(m.dim));
}

} // namespace rqss
