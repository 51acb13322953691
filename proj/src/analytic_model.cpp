#include "rqss/analytic_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rqss/lattice.hpp"
#include "rqss/phase_ops.hpp"

namespace rqss {

AmplitudeTrace alpha_recursion(int n, double epsilon, double delta,
                               std::complex<double> alpha1) {
    if (n < 1) throw std::invalid_argument("alpha_recursion: n must be >= 1");
    AmplitudeTrace t;
    t.n = n;
    t.epsilon = epsilon;
    t.delta = delta;
    const complex fe = f_phase(epsilon);
    const complex fd = f_phase(delta);
    complex a = alpha1;
    for (int k = 1; k <= n; ++k) {
        if (k > 1) a = (a / 3.0) * (1.0 - fe - fd + fe * fd * std::norm(a));
        t.alpha.push_back(a);
        t.omega.push_back(std::norm(a));
        t.omega_tilde.push_back(1.0 - 2.0 * std::norm(a));
    }
    return t;
}

OmegaTrace omega_recursion(int n, double epsilon, double delta) {
    if (n < 1) throw std::invalid_argument("omega_recursion: n must be >= 1");
    OmegaTrace t;
    t.n = n;
    double w = 1.0 / 9.0;
    t.omega.push_back(w);
    for (int k = 1; k < n; ++k) {
        const double wt = 1.0 - 2.0 * w;
        const double base = 1.0 - 4.0 * w / 3.0;
        const double penalty =
            (wt / 9.0) * (epsilon * epsilon + delta * delta + wt * (epsilon - delta) * (epsilon - delta));
        double ratio = base * base - penalty;
        if (ratio < 0.0) {
            ratio = 0.0;
            t.clamped = true;
        }
        w *= ratio;
        t.omega.push_back(w);
    }
    return t;
}

double omega_lower_bound(int n, double delta_max) {
    if (n < 1) throw std::invalid_argument("omega_lower_bound: n must be >= 1");
    return 11.0 / (150.0 * n) - delta_max * delta_max / 15.0;
}

std::int64_t cost_formula(int kappa) {
    if (kappa < 0) throw std::invalid_argument("cost_formula: kappa must be >= 0");
    return (4 * static_cast<std::int64_t>(kappa) - 1) * pow3(kappa) + 1;
}

std::int64_t cost_recursion(int kappa) {
    if (kappa < 0) throw std::invalid_argument("cost_recursion: kappa must be >= 0");
    std::int64_t t = 0;
    for (int k = 1; k <= kappa; ++k) t = 3 * t + 4 * pow3(k) - 2;
    return t;
}

std::int64_t bigS_cost(int kappa) { return 4 * pow3(kappa) - 3; }

int auto_amplification_count(double alpha_mag) {
    if (!(alpha_mag > 0.0)) {
        throw std::domain_error("amplification amplitude is degenerate (|alpha_n| = 0)");
    }
    const double theta = std::asin(std::min(1.0, alpha_mag));
    const long j = std::lround(M_PI / (4.0 * theta) - 0.5);
    return static_cast<int>(std::max(0L, j));
}

ComplexityBreakdown total_complexity(int n, std::optional<int> j) {
    if (n < 1) throw std::invalid_argument("total_complexity: n must be >= 1");
    ComplexityBreakdown b;
    b.n = n;
    if (j) {
        b.iterations = *j;
    } else {
        const AmplitudeTrace t = alpha_recursion(n, 0.0, 0.0);
        b.iterations = auto_amplification_count(std::abs(t.alpha.back()));
    }
    const std::int64_t t_u = cost_formula(n - 1);
    b.preparation = 2 * (pow3(n) - 1) + t_u;
    b.per_iteration = 2 * t_u + bigS_cost(n) + 1;
    b.total = b.preparation + static_cast<std::int64_t>(b.iterations) * b.per_iteration;
    const double sqrt_n_vertices = std::pow(3.0, n);
    const double ln_n_vertices = std::log(std::pow(9.0, n));
    b.sqrtN_lnN = sqrt_n_vertices * ln_n_vertices;
    b.sqrtN_ln3N = sqrt_n_vertices * std::pow(ln_n_vertices, 3);
    return b;
}

} // namespace rqss
