#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "rqss/dense_matrix.hpp"

namespace rqss {

/// Eigenphase spectrum of a diffusion operator with target overlap weights.
/// The theta = 0 entry (the preserved state) is held separately as w_s.
struct SpectrumEntry {
    double theta = 0.0;  ///< eigenphase in [-pi, pi], nonzero
    double weight = 0.0; ///< |<l|t>|^2
};

struct GqsaSpectrum {
    std::vector<SpectrumEntry> others;
    double w_s = 0.0; ///< |<s|t>|^2

    double theta_min() const;
    double total_weight() const;
    /// Checks weight normalization and phase ranges; throws on violation.
    void validate() const;

    /// Diffusion with eigenphase pi on everything orthogonal to the start.
    static GqsaSpectrum grover(std::int64_t n_items);
    /// One symmetric pair at +-theta carrying all non-s weight, with theta
    /// chosen so the second moment is exactly lambda2 (first moment is 0).
    static GqsaSpectrum synthetic_pair(std::int64_t n_items, double lambda2);
    /// Symmetric pairs with uniformly spaced eigenphases in [theta_lo, pi]
    /// and equal weights.
    static GqsaSpectrum synthetic_uniform(std::int64_t n_items, int pairs, double theta_lo);

    /// CSV with header "theta,weight"; exactly one theta = 0 row marks s.
    static GqsaSpectrum from_csv(std::istream& in);
};

struct Moments {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
};

/// Lambda_p = sum_{l != s} w_l cot^p(theta_l / 2), p = 1, 2.
/// Throws std::domain_error when some non-s entry has theta = 0.
Moments moments(const GqsaSpectrum& spectrum);

struct GqsaReport {
    double lambda1 = 0.0, lambda2 = 0.0;
    double phi = 0.0;      ///< applied target phase
    double overlap_st = 0; ///< |<t|s>| = sqrt(w_s)
    double A = 0.0;        ///< cot(phi/2) + Lambda_1 (signed)
    double B = 1.0;        ///< sqrt(1 + Lambda_2)
    double eta = 0.0;      ///< branch in [0, pi/2]
    double P_m = 0.0;      ///< peak success probability
    double q_m = 0.0;      ///< iterations to the peak
};

/// Performance parameters of iterating D_s I_t^phi on |s>.
/// Requires w_s > 0 and sin(phi/2) != 0.
GqsaReport gqsa_performance(const GqsaSpectrum& spectrum, double phi);

struct AkrTime {
    double t_akr = 0.0;  ///< sqrt(N) B sin(phi/2) [pi B / 2 + csc(2 eta)]
    double t_gqsa = 0.0; ///< P_m^{-1/2} (2 q_m T[S] + T[I_s] + T[I_t]), unit local costs
    bool divergent = false; ///< eta = 0: the iteration never builds overlap
};

/// Walk-search time at lattice size N (|<t|s>| = 1/sqrt(N) regime); the
/// generic time uses T[S] = 2 and T[I_s] = 2 sqrt(N).
AkrTime akr_time(const GqsaReport& report, double n_items);

struct GqsaIteration {
    std::vector<double> overlap; ///< |<t|S^k|s>| for k = 0..q
    int argmax = 0;
    double peak = 0.0;
};

/// Dense iteration of S = D I_t^phi on |s>. Requires D|s> = |s> to 1e-10
/// and dimension <= 4096.
GqsaIteration iterate_gqsa(const DenseMatrix& diffusion, double phi, int iterations,
                           std::span<const std::complex<double>> s,
                           std::span<const std::complex<double>> t);

/// 2|s><s| - 1 over the uniform start.
DenseMatrix grover_diffusion(std::int64_t dim);

/// Real orthogonal diffusion assembled from plane rotations in a random
/// orthonormal basis whose first vector is the uniform start; the spectrum is
/// known by construction, so predictions can be checked against iteration
/// without an eigensolver.
class PlaneRotationDiffusion {
public:
    /// dim must be odd so the non-s space splits into whole planes.
    PlaneRotationDiffusion(std::int64_t dim, std::span<const double> angles, std::uint64_t seed);

    const DenseMatrix& matrix() const { return matrix_; }
    std::vector<std::complex<double>> start() const; ///< |s>, the uniform vector
    /// Exact spectrum weights for a given target vector.
    GqsaSpectrum spectrum_for(std::span<const std::complex<double>> t) const;

private:
    std::int64_t dim_;
    std::vector<double> angles_;
    DenseMatrix basis_; ///< orthonormal columns, column 0 = |s>
    DenseMatrix matrix_;
};

struct SweepRow {
    double epsilon = 0.0;
    double A = 0.0;
    double eta = 0.0;
    double P_m = 0.0;
    double q_m = 0.0;
    double T_akr = 0.0;
};

/// Evaluates the performance/time formulas at phi = pi + eps over the grid.
std::vector<SweepRow> sensitivity_sweep(const GqsaSpectrum& spectrum,
                                        std::span<const double> epsilon_grid,
                                        double n_items = 0.0 /* 0: derive 1/w_s */);

} // namespace rqss
