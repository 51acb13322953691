#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace rqss {

/// Closed-form amplitude trace: alpha_k and omega_k = |alpha_k|^2 for
/// k = 1..n, iterated without any state vector.
struct AmplitudeTrace {
    int n = 0;
    double epsilon = 0.0;
    double delta = 0.0;
    std::vector<std::complex<double>> alpha; ///< alpha[k-1] = alpha_k
    std::vector<double> omega;
    std::vector<double> omega_tilde; ///< 1 - 2 omega_k
};

/// Exact complex iteration
///   alpha_{k+1} = (alpha_k / 3) [1 - f_eps - f_del + f_eps f_del |alpha_k|^2]
/// from alpha_1 (1/3 for an ideal start; a local-error run is seeded with the
/// perturbed first overlap instead).
AmplitudeTrace alpha_recursion(int n, double epsilon, double delta,
                               std::complex<double> alpha1 = {1.0 / 3.0, 0.0});

struct OmegaTrace {
    int n = 0;
    std::vector<double> omega;
    bool clamped = false; ///< a ratio went negative (model breakdown); clamped to 0
};

/// Second-order model: iterates
///   omega_{k+1}/omega_k = (1 - 4 omega_k / 3)^2
///                         - (ot_k / 9) [eps^2 + del^2 + ot_k (eps - del)^2]
/// with ot_k = 1 - 2 omega_k, from omega_1 = 1/9. Valid for |eps|, |del|
/// small; a negative ratio clamps to zero and sets the flag rather than
/// throwing, since large-error sweeps leave the validity regime on purpose.
OmegaTrace omega_recursion(int n, double epsilon, double delta);

/// Success-amplitude floor 11/(150 n) - Delta^2 / 15, valid for
/// Delta << 1/sqrt(n).
double omega_lower_bound(int n, double delta_max);

/// T[U_k] = (4k - 1) 3^k + 1.
std::int64_t cost_formula(int kappa);
/// Same quantity by unrolling T[U_k] = 3 T[U_{k-1}] + 4*3^k - 2, T[U_0] = 0.
std::int64_t cost_recursion(int kappa);
/// T of the simultaneous block reflection: 4*3^k - 3.
std::int64_t bigS_cost(int kappa);

/// Iteration count that centers sin((2j+1) asin|alpha|) on its peak,
/// clamped to >= 0. Throws std::domain_error when alpha_mag is 0.
int auto_amplification_count(double alpha_mag);

struct ComplexityBreakdown {
    int n = 0;
    int iterations = 0;            ///< amplification iterations j
    std::int64_t preparation = 0;  ///< T[S_n] + T[U_{n-1}]
    std::int64_t per_iteration = 0;///< 2 T[U_{n-1}] + (4*3^n - 3) + 1
    std::int64_t total = 0;
    double sqrtN_lnN = 0.0;   ///< asymptotic reference sqrt(N) ln N
    double sqrtN_ln3N = 0.0;  ///< asymptotic reference sqrt(N) ln^3 N
};

/// Step count of the full search at depth n. When j is not given it is the
/// auto count for the zero-error amplitude alpha_n.
ComplexityBreakdown total_complexity(int n, std::optional<int> j = std::nullopt);

} // namespace rqss
