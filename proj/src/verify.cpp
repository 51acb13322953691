#include "rqss/verify.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rqss/dense_oracle.hpp"
#include "rqss/gqsa.hpp"
#include "rqss/recursive_engine.hpp"

namespace rqss {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::runtime_error(what);
}

std::vector<OperatorRequest> request_catalog(int n) {
    std::vector<OperatorRequest> reqs;
    const LatticeGeometry g(n);
    const Vertex t{g.side / 2, g.side / 2};
    reqs.push_back({OpKind::selective_phase_target, 1, false, 0.0, t, 1, Axis::x, BigSPath::fast});
    reqs.push_back({OpKind::selective_phase_target, 1, false, 0.4, t, 1, Axis::x, BigSPath::fast});
    for (int k = 1; k <= n; ++k) {
        reqs.push_back(
            {OpKind::selective_phase_origin_block, k, false, 0.0, t, 1, Axis::x, BigSPath::fast});
        for (Axis ax : {Axis::x, Axis::y}) {
            for (std::int64_t b = 1; b <= pow3(k) - 1; ++b) {
                reqs.push_back({OpKind::L_b, k, false, 0.0, t, b, ax, BigSPath::fast});
            }
            reqs.push_back({ax == Axis::x ? OpKind::S_kx : OpKind::S_ky, k, false, 0.0, t, 1, ax,
                            BigSPath::fast});
        }
        reqs.push_back({OpKind::S_k, k, false, 0.0, t, 1, Axis::x, BigSPath::fast});
        reqs.push_back({OpKind::big_S, k, false, 0.0, t, 1, Axis::x, BigSPath::fast});
        reqs.push_back({OpKind::big_S, k, false, 0.0, t, 1, Axis::x, BigSPath::circuit});
    }
    return reqs;
}

std::vector<ErrorConfig> config_catalog() {
    ErrorConfig clean;
    ErrorConfig phases;
    phases.epsilon = 0.2;
    phases.delta = -0.3;
    ErrorConfig local;
    local.epsilon = 0.1;
    local.delta = 0.05;
    local.nu = 0.08;
    local.seed = 7;
    ErrorConfig straddle = local;
    straddle.straddle = true;
    straddle.seed = 11;
    return {clean, phases, local, straddle};
}

void check_dense_unitarity() {
    for (int n = 1; n <= 2; ++n) {
        const LatticeGeometry g(n);
        for (const ErrorConfig& cfg : config_catalog()) {
            for (const OperatorRequest& req : request_catalog(n)) {
                for (bool adj : {false, true}) {
                    OperatorRequest r = req;
                    r.adjoint = adj;
                    const double defect = unitarity_defect(dense_matrix(r, g, cfg));
                    require(defect <= 1e-10,
                            "unitarity defect " + std::to_string(defect) + " for kind " +
                                std::string(to_string(r.kind)) + " at n=" + std::to_string(n));
                }
            }
        }
    }
}

void check_circuit_vs_fast() {
    for (int n = 2; n <= 3; ++n) {
        const LatticeGeometry g(n);
        for (int k = 1; k <= n; ++k) {
            for (int trial = 0; trial < 10; ++trial) {
                QuantumState a = probe_state(g, 1000 + static_cast<std::uint64_t>(trial));
                QuantumState b = a;
                apply_bigS(a, k, 0.3, false, BigSPath::circuit);
                apply_bigS(b, k, 0.3, false, BigSPath::fast);
                double worst = 0.0;
                for (std::int64_t i = 0; i < a.size(); ++i) {
                    worst = std::max(worst, std::abs(a[i] - b[i]));
                }
                require(worst <= 1e-10, "circuit/fast paths differ by " + std::to_string(worst) +
                                            " at n=" + std::to_string(n) +
                                            " k=" + std::to_string(k));
            }
        }
    }
}

void check_adjoint_roundtrips() {
    const LatticeGeometry g(2);
    for (const ErrorConfig& cfg : config_catalog()) {
        const ErrorChannel channel(cfg, g);
        for (const OperatorRequest& req : request_catalog(2)) {
            QuantumState st = probe_state(g, 42);
            const QuantumState orig = st;
            CostLedger ledger;
            channel.apply(req, &st, ledger);
            channel.apply(req.adjointed(), &st, ledger);
            double worst = 0.0;
            for (std::int64_t i = 0; i < st.size(); ++i) {
                worst = std::max(worst, std::abs(st[i] - orig[i]));
            }
            require(worst <= 1e-12, "adjoint round trip residue " + std::to_string(worst) +
                                        " for kind " + std::string(to_string(req.kind)));
        }
    }
}

void check_cost_ledger() {
    for (int k = 0; k <= 12; ++k) {
        require(cost_formula(k) == cost_recursion(k),
                "cost closed form != recursion at k=" + std::to_string(k));
    }
    SearchParams p;
    p.n = 6;
    SearchEngine engine(p);
    for (int k = 0; k <= 6; ++k) {
        CostLedger ledger;
        engine.apply_U(nullptr, k, false, ledger);
        require(ledger.steps == cost_formula(k),
                "ledger T[U_" + std::to_string(k) + "] = " + std::to_string(ledger.steps) +
                    ", expected " + std::to_string(cost_formula(k)));
    }
    const LatticeGeometry g6(6);
    const ErrorChannel channel({}, g6);
    for (int k = 1; k <= 6; ++k) {
        CostLedger ledger;
        channel.big_S(nullptr, k, false, BigSPath::fast, ledger);
        require(ledger.steps == bigS_cost(k),
                "ledger subsquare reflection cost mismatch at k=" + std::to_string(k));
    }
    // Real application bills the same as the dry run.
    const LatticeGeometry g2(2);
    QuantumState st = probe_state(g2, 5);
    CostLedger real;
    apply_Sk(st, 2, false, &real);
    require(real.steps == 2 * (pow3(2) - 1), "S_k ledger cost mismatch");
}

void check_chain_identity() {
    // After L_1..L_a on |0, y>, the amplitude profile along the axis equals
    // the partial uniform chain state.
    const int n = 3;
    const LatticeGeometry g(n);
    for (int k = 1; k <= 3; ++k) {
        const std::int64_t m = pow3(k);
        QuantumState st = QuantumState::basis(g, Vertex{0, 1});
        for (std::int64_t a = 1; a <= m - 1; ++a) {
            apply_Lb(st, k, a, Axis::x);
            QuantumState expect(g);
            const double root = std::sqrt(static_cast<double>(m));
            for (std::int64_t x = 0; x < a; ++x) expect.at({x, 1}) = 1.0 / root;
            expect.at({a, 1}) = std::sqrt(static_cast<double>(m - a)) / root;
            double worst = 0.0;
            for (std::int64_t i = 0; i < st.size(); ++i) {
                worst = std::max(worst, std::abs(st[i] - expect[i]));
            }
            require(worst <= 1e-12, "chain state mismatch at k=" + std::to_string(k) +
                                        " a=" + std::to_string(a));
        }
    }
}

void check_base_overlaps() {
    for (double eps : {0.0, 0.3, -3.1}) {
        SearchParams p;
        p.n = 3;
        p.errors.epsilon = eps;
        p.errors.delta = -eps / 2;
        SearchEngine engine(p);
        const RecursionTrace& tr = engine.build_psi();
        require(std::abs(tr.levels[0].alpha - complex{1.0 / 3.0, 0.0}) <= 1e-12,
                "alpha_1 != 1/3");
        require(std::abs(tr.levels[0].omega - 1.0 / 9.0) <= 1e-12, "omega_1 != 1/9");
    }
}

void check_reproducibility() {
    const LatticeGeometry g2(2);
    ErrorConfig cfg;
    cfg.epsilon = 0.12;
    cfg.delta = -0.07;
    cfg.nu = 0.05;
    cfg.seed = 99;
    OperatorRequest req{OpKind::big_S, 2, false, 0.0, Vertex{4, 4}, 1, Axis::x, BigSPath::fast};
    require(probe_hash(req, g2, cfg) == probe_hash(req, g2, cfg),
            "identical configs produced different probe actions");
    const DenseMatrix a = dense_matrix(req, g2, cfg);
    const DenseMatrix b = dense_matrix(req, g2, cfg);
    require(max_abs_diff(a, b) == 0.0, "identical configs produced different dense matrices");

    const LatticeGeometry g3(3);
    require(probe_hash(req, g3, cfg) == probe_hash(req, g3, cfg),
            "probe hash differs between invocations at n=3");
}

void check_model_agreement_grid() {
    for (int n = 3; n <= 5; ++n) {
        for (int ie = 0; ie < 5; ++ie) {
            for (int id = 0; id < 5; ++id) {
                const double eps = -0.3 + 0.15 * ie;
                const double del = -0.3 + 0.15 * id;
                SearchParams p;
                p.n = n;
                p.errors.epsilon = eps;
                p.errors.delta = del;
                SearchEngine engine(p);
                const RecursionTrace& tr = engine.build_psi();
                const AmplitudeTrace model = alpha_recursion(n, eps, del);
                for (int k = 1; k <= n; ++k) {
                    const double diff = std::abs(tr.levels[static_cast<std::size_t>(k - 1)].alpha -
                                                 model.alpha[static_cast<std::size_t>(k - 1)]);
                    require(diff <= 1e-9, "alpha mismatch " + std::to_string(diff) + " at n=" +
                                              std::to_string(n) + " k=" + std::to_string(k));
                }
            }
        }
    }
}

void check_second_order_consistency() {
    // The truncated ratio keeps only the leading order in omega, so its gap
    // to the exact recursion contracts quadratically when the error halves
    // (factor ~4, with higher-order tails), and stays within 1e-3 at
    // Delta = 0.1, n = 4.
    const int n = 4;
    auto gap = [n](double e, double d) {
        const AmplitudeTrace exact = alpha_recursion(n, e, d);
        const OmegaTrace second = omega_recursion(n, e, d);
        return std::abs(second.omega.back() - exact.omega.back());
    };
    for (auto [e, d] : {std::pair{0.2, -0.2}, std::pair{0.2, 0.2}, std::pair{0.24, 0.1}}) {
        const double g1 = gap(e, d);
        const double g2 = gap(e / 2, d / 2);
        const double ratio = g1 / g2;
        require(g2 > 0.0 && ratio >= 3.0 && ratio <= 6.0,
                "second-order gap contraction " + std::to_string(ratio) +
                    " outside the quadratic band [3, 6]");
    }
    require(gap(0.1, 0.1) <= 1e-3, "second-order model drifts past 1e-3 at Delta = 0.1");
}

void check_robustness_floor() {
    for (int n : {4, 5, 6}) {
        for (double scale : {0.0, 0.5, 1.0}) {
            const double d = scale * 0.1 / std::sqrt(static_cast<double>(n));
            for (double sign : {1.0, -1.0}) {
                SearchParams p;
                p.n = n;
                p.errors.epsilon = d;
                p.errors.delta = sign * d;
                SearchEngine engine(p);
                const RecursionTrace& tr = engine.build_psi();
                const double bound = omega_lower_bound(n, d);
                require(tr.omega_n() >= bound,
                        "omega_n " + std::to_string(tr.omega_n()) + " below floor " +
                            std::to_string(bound) + " at n=" + std::to_string(n));
            }
        }
    }
}

void check_monotone_decay() {
    SearchParams p;
    p.n = 6;
    SearchEngine engine(p);
    const RecursionTrace& tr = engine.build_psi();
    for (std::size_t k = 0; k + 1 < tr.levels.size(); ++k) {
        const double w = tr.levels[k].omega;
        const double wn = tr.levels[k + 1].omega;
        require(wn < w, "overlap decay not monotone");
        const double expect = (1.0 - 4.0 * w / 3.0) * (1.0 - 4.0 * w / 3.0);
        require(std::abs(wn / w - expect) <= 1e-12, "zero-error decay ratio off");
    }
}

void check_amplification_correctness() {
    for (int n : {2, 3, 4}) {
        SearchParams p;
        p.n = n;
        SearchEngine engine(p);
        const SearchResult res = engine.run_search();
        const double theta = std::asin(std::abs(res.trace.alpha_n()));
        const double expect = std::pow(std::sin((2.0 * res.amplification_iterations + 1) * theta), 2);
        require(std::abs(res.success_probability - expect) <= 1e-6,
                "amplified probability differs from the closed form at n=" + std::to_string(n));
    }
}

void check_gqsa_crosschecks() {
    // Grover reduction.
    const GqsaReport r = gqsa_performance(GqsaSpectrum::grover(16), M_PI);
    require(std::abs(r.P_m - 1.0) <= 1e-12 && std::abs(r.q_m - M_PI) <= 1e-12,
            "grover reduction off");
    // Dense iteration at N = 64 peaks on schedule.
    const DenseMatrix d = grover_diffusion(64);
    std::vector<complex> s(64, complex{1.0 / 8.0, 0.0});
    std::vector<complex> t(64);
    t[17] = 1.0;
    const GqsaIteration it = iterate_gqsa(d, M_PI, 10, s, t);
    require(std::abs(it.argmax - 6) <= 1 && it.peak >= 0.99, "grover iteration peak off");
    // Prediction vs iteration for a random plane-rotation diffusion; the
    // target keeps |<s|t>| = 0.04 so the small-overlap premise holds.
    for (std::uint64_t seed : {3ULL, 4ULL}) {
        std::vector<double> angles(127);
        for (std::size_t i = 0; i < angles.size(); ++i) {
            angles[i] = 0.6 + 2.2 * static_cast<double>(i) / 126.0;
        }
        const PlaneRotationDiffusion diff(255, angles, seed);
        std::vector<complex> start = diff.start();
        const double unif = 1.0 / std::sqrt(255.0);
        std::vector<complex> target(255, -unif * unif);
        target[33] += 1.0;
        double norm2 = 0.0;
        for (const auto& z : target) norm2 += std::norm(z);
        const double overlap = 0.04;
        const double scale = std::sqrt((1.0 - overlap * overlap) / norm2);
        for (auto& z : target) z = z * scale + overlap * unif;
        const GqsaSpectrum spec = diff.spectrum_for(target);
        const GqsaReport pred = gqsa_performance(spec, M_PI);
        const GqsaIteration run =
            iterate_gqsa(diff.matrix(), M_PI, static_cast<int>(pred.q_m * 1.6) + 2, start, target);
        require(std::abs(run.peak - std::sqrt(pred.P_m)) <= 0.1 * std::sqrt(pred.P_m),
                "plane-rotation peak off prediction");
        require(std::abs(run.argmax - pred.q_m) <= std::max(1.0, 0.1 * pred.q_m),
                "plane-rotation argmax off prediction");
    }
    // Compensating phase restores A = 0.
    GqsaSpectrum asym;
    asym.w_s = 0.1;
    asym.others = {{M_PI / 2, 0.5}, {-M_PI / 2, 0.4}};
    const Moments m = moments(asym);
    const double phi_c = 2.0 * (M_PI / 2.0 - std::atan(-m.lambda1));
    const GqsaReport rc = gqsa_performance(asym, phi_c);
    require(std::abs(rc.A) <= 1e-12, "compensating phase left A nonzero");
}

void check_local_error_conjugation() {
    for (int n : {3, 4}) {
        SearchParams p;
        p.n = n;
        p.errors.epsilon = 0.1;
        p.errors.delta = -0.15;
        p.errors.nu = 0.05;
        p.errors.seed = 21;
        SearchEngine engine(p);
        const RecursionTrace& tr = engine.build_psi();

        const LatticeGeometry g(n);
        QuantumState seed_state = QuantumState::basis(g, engine.target());
        engine.channel().local_error().apply(seed_state, false);
        const complex alpha1 =
            block_uss_overlap(seed_state, subsquare_of(engine.target().x, engine.target().y, 1, g));
        const AmplitudeTrace model =
            alpha_recursion(n, p.errors.epsilon, p.errors.delta, alpha1);
        for (int k = 1; k <= n; ++k) {
            const double diff = std::abs(tr.levels[static_cast<std::size_t>(k - 1)].alpha -
                                         model.alpha[static_cast<std::size_t>(k - 1)]);
            require(diff <= 1e-9, "conjugated trace mismatch at n=" + std::to_string(n) +
                                      " k=" + std::to_string(k));
        }
    }
}

} // namespace

int run_verify(bool full, std::ostream& out) {
    std::vector<std::pair<std::string, std::function<void()>>> checks = {
        {"dense unitarity (all kinds, n <= 2, error configs)", check_dense_unitarity},
        {"circuit vs fast subsquare reflection", check_circuit_vs_fast},
        {"adjoint and reversibility round trips", check_adjoint_roundtrips},
        {"cost ledger identities", check_cost_ledger},
        {"superposition chain identity", check_chain_identity},
        {"base overlap values", check_base_overlaps},
        {"bit reproducibility", check_reproducibility},
    };
    if (full) {
        checks.emplace_back("model agreement grid (n <= 5)", check_model_agreement_grid);
        checks.emplace_back("second-order model consistency", check_second_order_consistency);
        checks.emplace_back("robustness floor (n = 4, 5, 6)", check_robustness_floor);
        checks.emplace_back("monotone overlap decay", check_monotone_decay);
        checks.emplace_back("amplification correctness", check_amplification_correctness);
        checks.emplace_back("walk-model cross checks", check_gqsa_crosschecks);
        checks.emplace_back("local-error conjugation identity", check_local_error_conjugation);
    }

    int failures = 0;
    for (const auto& [name, fn] : checks) {
        try {
            fn();
            out << "PASS " << name << "\n";
        } catch (const std::exception& e) {
            ++failures;
            out << "FAIL " << name << ": " << e.what() << "\n";
        }
    }
    out << (failures == 0 ? "verify: all checks passed" : "verify: FAILURES") << "\n";
    return failures;
}

} // namespace rqss
