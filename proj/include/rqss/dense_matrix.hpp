#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace rqss {

/// Small row-major complex matrix for brute-force checks and dense iteration.
struct DenseMatrix {
    std::int64_t dim = 0;
    std::vector<std::complex<double>> a;

    DenseMatrix() = default;
    explicit DenseMatrix(std::int64_t d) : dim(d), a(static_cast<std::size_t>(d * d)) {}
    static DenseMatrix identity(std::int64_t d);

    std::complex<double>& at(std::int64_t r, std::int64_t c) {
        return a[static_cast<std::size_t>(r * dim + c)];
    }
    const std::complex<double>& at(std::int64_t r, std::int64_t c) const {
        return a[static_cast<std::size_t>(r * dim + c)];
    }
};

DenseMatrix multiply(const DenseMatrix& lhs, const DenseMatrix& rhs);
std::vector<std::complex<double>> multiply(const DenseMatrix& m,
                                           std::span<const std::complex<double>> v);
DenseMatrix adjoint(const DenseMatrix& m);
double max_abs_diff(const DenseMatrix& lhs, const DenseMatrix& rhs);
/// ||M^dag M - 1||_max
double unitarity_defect(const DenseMatrix& m);

} // namespace rqss
