#include "rqss/gqsa.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace rqss {

using complex = std::complex<double>;

double GqsaSpectrum::theta_min() const {
    double m = M_PI;
    for (const SpectrumEntry& e : others) m = std::min(m, std::abs(e.theta));
    return m;
}

double GqsaSpectrum::total_weight() const {
    double w = w_s;
    for (const SpectrumEntry& e : others) w += e.weight;
    return w;
}

void GqsaSpectrum::validate() const {
    if (w_s < 0.0) throw std::invalid_argument("spectrum: negative s weight");
    for (const SpectrumEntry& e : others) {
        if (e.weight < 0.0) throw std::invalid_argument("spectrum: negative weight");
        if (std::abs(e.theta) > M_PI + 1e-12) {
            throw std::invalid_argument("spectrum: eigenphase outside [-pi, pi]");
        }
    }
    if (std::abs(total_weight() - 1.0) > 1e-10) {
        throw std::invalid_argument("spectrum: weights sum to " + std::to_string(total_weight()) +
                                    ", expected 1");
    }
}

GqsaSpectrum GqsaSpectrum::grover(std::int64_t n_items) {
    if (n_items < 2) throw std::invalid_argument("grover spectrum needs N >= 2");
    GqsaSpectrum s;
    s.w_s = 1.0 / static_cast<double>(n_items);
    s.others.push_back({M_PI, 1.0 - s.w_s});
    return s;
}

GqsaSpectrum GqsaSpectrum::synthetic_pair(std::int64_t n_items, double lambda2) {
    if (n_items < 2) throw std::invalid_argument("synthetic spectrum needs N >= 2");
    if (lambda2 <= 0.0) throw std::invalid_argument("synthetic spectrum needs lambda2 > 0");
    GqsaSpectrum s;
    s.w_s = 1.0 / static_cast<double>(n_items);
    const double w = 1.0 - s.w_s;
    // w cot^2(theta/2) = lambda2, split evenly over +-theta so Lambda_1 = 0.
    const double theta = 2.0 * std::atan(std::sqrt(w / lambda2));
    s.others.push_back({theta, w / 2.0});
    s.others.push_back({-theta, w / 2.0});
    return s;
}

GqsaSpectrum GqsaSpectrum::synthetic_uniform(std::int64_t n_items, int pairs, double theta_lo) {
    if (n_items < 2 || pairs < 1) throw std::invalid_argument("bad synthetic spectrum request");
    if (theta_lo <= 0.0 || theta_lo >= M_PI) {
        throw std::invalid_argument("theta_lo must lie in (0, pi)");
    }
    GqsaSpectrum s;
    s.w_s = 1.0 / static_cast<double>(n_items);
    const double w_each = (1.0 - s.w_s) / (2.0 * pairs);
    for (int k = 0; k < pairs; ++k) {
        const double t = pairs == 1
                             ? theta_lo
                             : theta_lo + (M_PI - theta_lo) * static_cast<double>(k) / (pairs - 1);
        s.others.push_back({t, w_each});
        s.others.push_back({-t, w_each});
    }
    return s;
}

GqsaSpectrum GqsaSpectrum::from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("spectrum csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "theta,weight") {
        throw std::invalid_argument("spectrum csv: expected header 'theta,weight', got '" + line +
                                    "'");
    }
    GqsaSpectrum s;
    bool seen_s = false;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("spectrum csv row " + std::to_string(row) +
                                        ": missing comma");
        }
        double theta = 0.0, weight = 0.0;
        try {
            theta = std::stod(line.substr(0, comma));
            weight = std::stod(line.substr(comma + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("spectrum csv row " + std::to_string(row) +
                                        ": bad number");
        }
        if (theta == 0.0) {
            if (seen_s) {
                throw std::invalid_argument("spectrum csv: more than one theta = 0 row");
            }
            seen_s = true;
            s.w_s = weight;
        } else {
            s.others.push_back({theta, weight});
        }
    }
    if (!seen_s) throw std::invalid_argument("spectrum csv: no theta = 0 row marks the start state");
    s.validate();
    return s;
}

Moments moments(const GqsaSpectrum& spectrum) {
    Moments m;
    for (const SpectrumEntry& e : spectrum.others) {
        if (e.theta == 0.0) {
            throw std::domain_error("moments: eigenphase 0 outside the s entry (cot singularity)");
        }
        const double c = 1.0 / std::tan(e.theta / 2.0);
        m.lambda1 += e.weight * c;
        m.lambda2 += e.weight * c * c;
    }
    return m;
}

GqsaReport gqsa_performance(const GqsaSpectrum& spectrum, double phi) {
    if (!(spectrum.w_s > 0.0)) {
        throw std::domain_error("gqsa performance: start-target overlap is zero");
    }
    const double half_sin = std::sin(phi / 2.0);
    if (half_sin == 0.0) throw std::domain_error("gqsa performance: degenerate phase phi");

    const Moments m = moments(spectrum);
    GqsaReport r;
    r.lambda1 = m.lambda1;
    r.lambda2 = m.lambda2;
    r.phi = phi;
    r.overlap_st = std::sqrt(spectrum.w_s);
    r.A = 1.0 / std::tan(phi / 2.0) + m.lambda1;
    r.B = std::sqrt(1.0 + m.lambda2);
    // cot(2 eta) = A / (2 B |<t|s>|) with 2 eta in (0, pi).
    const double cot2eta = r.A / (2.0 * r.B * r.overlap_st);
    const double two_eta = M_PI / 2.0 - std::atan(cot2eta);
    r.eta = two_eta / 2.0;
    const double sin2eta = std::sin(two_eta);
    const double sqrt_pm = sin2eta / (r.B * half_sin);
    r.P_m = sqrt_pm * sqrt_pm;
    r.q_m = M_PI * r.B * sin2eta / (4.0 * r.overlap_st);
    return r;
}

AkrTime akr_time(const GqsaReport& report, double n_items) {
    AkrTime t;
    const double sin2eta = std::sin(2.0 * report.eta);
    if (!(sin2eta > 0.0)) {
        t.divergent = true;
        t.t_akr = std::numeric_limits<double>::infinity();
        t.t_gqsa = std::numeric_limits<double>::infinity();
        return t;
    }
    const double root_n = std::sqrt(n_items);
    const double half_sin = std::sin(report.phi / 2.0);
    t.t_akr = root_n * report.B * half_sin * (M_PI * report.B / 2.0 + 1.0 / sin2eta);
    // Generic composition with unit local costs: T[S] = 2, T[I_t] = 1 and the
    // nonlocal start reflection at 2 sqrt(N).
    t.t_gqsa = (1.0 / std::sqrt(report.P_m)) * (2.0 * report.q_m * 2.0 + 2.0 * root_n + 1.0);
    return t;
}

GqsaIteration iterate_gqsa(const DenseMatrix& diffusion, double phi, int iterations,
                           std::span<const complex> s, std::span<const complex> t) {
    if (diffusion.dim > 4096) {
        throw std::invalid_argument("iterate_gqsa: dimension above dense limit 4096");
    }
    if (static_cast<std::int64_t>(s.size()) != diffusion.dim ||
        static_cast<std::int64_t>(t.size()) != diffusion.dim) {
        throw std::invalid_argument("iterate_gqsa: vector dimension mismatch");
    }
    if (iterations < 0) throw std::invalid_argument("iterate_gqsa: negative iteration count");

    // D_s must preserve |s>.
    const std::vector<complex> ds = multiply(diffusion, s);
    double defect = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) defect = std::max(defect, std::abs(ds[i] - s[i]));
    if (defect > 1e-10) {
        throw std::invalid_argument("iterate_gqsa: diffusion does not preserve the start state");
    }

    auto overlap_with_t = [&t](std::span<const complex> v) {
        complex acc = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) acc += std::conj(t[i]) * v[i];
        return std::abs(acc);
    };

    const complex phase_factor = std::polar(1.0, phi) - 1.0;
    std::vector<complex> state(s.begin(), s.end());
    GqsaIteration out;
    out.overlap.push_back(overlap_with_t(state));
    for (int k = 1; k <= iterations; ++k) {
        // I_t^phi: state += (e^{i phi} - 1) <t|state> |t>
        complex tp = 0.0;
        for (std::size_t i = 0; i < state.size(); ++i) tp += std::conj(t[i]) * state[i];
        const complex coeff = phase_factor * tp;
        for (std::size_t i = 0; i < state.size(); ++i) state[i] += coeff * t[i];
        state = multiply(diffusion, state);
        out.overlap.push_back(overlap_with_t(state));
    }
    out.argmax = static_cast<int>(
        std::max_element(out.overlap.begin(), out.overlap.end()) - out.overlap.begin());
    out.peak = out.overlap[static_cast<std::size_t>(out.argmax)];
    return out;
}

DenseMatrix grover_diffusion(std::int64_t dim) {
    if (dim < 2) throw std::invalid_argument("grover diffusion needs dim >= 2");
    DenseMatrix d(dim);
    const double off = 2.0 / static_cast<double>(dim);
    for (std::int64_t r = 0; r < dim; ++r) {
        for (std::int64_t c = 0; c < dim; ++c) d.at(r, c) = off - (r == c ? 1.0 : 0.0);
    }
    return d;
}

PlaneRotationDiffusion::PlaneRotationDiffusion(std::int64_t dim, std::span<const double> angles,
                                               std::uint64_t seed)
    : dim_(dim), angles_(angles.begin(), angles.end()) {
    if (dim < 3 || dim % 2 == 0) {
        throw std::invalid_argument("plane-rotation diffusion needs odd dimension >= 3");
    }
    if (static_cast<std::int64_t>(angles.size()) != (dim - 1) / 2) {
        throw std::invalid_argument("plane-rotation diffusion: need (dim-1)/2 angles");
    }

    // Random orthonormal basis with column 0 fixed to the uniform start:
    // Gaussian columns, Gram-Schmidt against the previous ones.
    std::mt19937_64 rng(seed);
    auto gauss = [&rng]() {
        // Box-Muller on hand-mapped uniforms for cross-build determinism.
        const double u1 =
            (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53; // (0, 1]
        const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    };

    basis_ = DenseMatrix(dim);
    const double unif = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::int64_t r = 0; r < dim; ++r) basis_.at(r, 0) = unif;
    for (std::int64_t c = 1; c < dim; ++c) {
        std::vector<double> v(static_cast<std::size_t>(dim));
        double norm2 = 0.0;
        for (int attempt = 0; attempt < 64; ++attempt) {
            for (auto& x : v) x = gauss();
            for (std::int64_t p = 0; p < c; ++p) {
                double dot = 0.0;
                for (std::int64_t r = 0; r < dim; ++r) dot += basis_.at(r, p).real() * v[r];
                for (std::int64_t r = 0; r < dim; ++r) v[r] -= dot * basis_.at(r, p).real();
            }
            norm2 = 0.0;
            for (double x : v) norm2 += x * x;
            if (norm2 > 1e-12) break;
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (std::int64_t r = 0; r < dim; ++r) basis_.at(r, c) = v[r] * inv;
    }

    // matrix = V blockdiag(1, R(a_1), ..., R(a_p)) V^T
    matrix_ = DenseMatrix(dim);
    auto add_outer = [this, dim](std::int64_t col_u, std::int64_t col_v, double coeff) {
        for (std::int64_t r = 0; r < dim; ++r) {
            const double ur = basis_.at(r, col_u).real();
            if (ur == 0.0) continue;
            for (std::int64_t c = 0; c < dim; ++c) {
                matrix_.at(r, c) += coeff * ur * basis_.at(c, col_v).real();
            }
        }
    };
    add_outer(0, 0, 1.0);
    for (std::size_t k = 0; k < angles_.size(); ++k) {
        const std::int64_t i = 1 + 2 * static_cast<std::int64_t>(k);
        const double ca = std::cos(angles_[k]);
        const double sa = std::sin(angles_[k]);
        add_outer(i, i, ca);
        add_outer(i, i + 1, -sa);
        add_outer(i + 1, i, sa);
        add_outer(i + 1, i + 1, ca);
    }
}

std::vector<complex> PlaneRotationDiffusion::start() const {
    const double unif = 1.0 / std::sqrt(static_cast<double>(dim_));
    return std::vector<complex>(static_cast<std::size_t>(dim_), complex{unif, 0.0});
}

GqsaSpectrum PlaneRotationDiffusion::spectrum_for(std::span<const complex> t) const {
    if (static_cast<std::int64_t>(t.size()) != dim_) {
        throw std::invalid_argument("spectrum_for: dimension mismatch");
    }
    auto column_dot = [this, &t](std::int64_t c) {
        complex acc = 0.0;
        for (std::int64_t r = 0; r < dim_; ++r) acc += basis_.at(r, c).real() * t[r];
        return acc;
    };
    GqsaSpectrum s;
    s.w_s = std::norm(column_dot(0));
    for (std::size_t k = 0; k < angles_.size(); ++k) {
        const std::int64_t i = 1 + 2 * static_cast<std::int64_t>(k);
        const complex a = column_dot(i);
        const complex b = column_dot(i + 1);
        // eigenvectors (v_i -+ i v_{i+1})/sqrt(2) with phases +-angle
        s.others.push_back({angles_[k], 0.5 * std::norm(a + complex{0, 1} * b)});
        s.others.push_back({-angles_[k], 0.5 * std::norm(a - complex{0, 1} * b)});
    }
    return s;
}

std::vector<SweepRow> sensitivity_sweep(const GqsaSpectrum& spectrum,
                                        std::span<const double> epsilon_grid, double n_items) {
    spectrum.validate();
    const double n_eff = n_items > 0.0 ? n_items : 1.0 / spectrum.w_s;
    std::vector<SweepRow> rows;
    rows.reserve(epsilon_grid.size());
    for (double eps : epsilon_grid) {
        const GqsaReport r = gqsa_performance(spectrum, M_PI + eps);
        const AkrTime t = akr_time(r, n_eff);
        rows.push_back({eps, r.A, r.eta, r.P_m, r.q_m, t.t_akr});
    }
    return rows;
}

} // namespace rqss
