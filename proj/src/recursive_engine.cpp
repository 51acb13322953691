#include "rqss/recursive_engine.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rqss {

double RecursionTrace::max_residual() const {
    double worst = 0.0;
    for (const LevelRecord& r : levels) worst = std::max(worst, r.residual);
    return worst;
}

namespace {

Vertex default_target(const LatticeGeometry& g) {
    const std::int64_t c = (g.side - 1) / 2; // center vertex; c mod 3 == 1 for every depth
    return {c, c};
}

} // namespace

SearchEngine::SearchEngine(const SearchParams& p)
    : params_(p),
      geom_(p.n, p.max_depth),
      target_(p.target.value_or(default_target(geom_))),
      channel_(p.errors, geom_) {
    (void)flat_index(target_.x, target_.y, geom_); // range check
}

const RecursionTrace& SearchEngine::trace() const {
    if (!built()) throw std::logic_error("trace requested before build_psi()");
    return trace_;
}

const QuantumState& SearchEngine::psi(int kappa) const {
    if (kappa < 0 || kappa >= static_cast<int>(psi_store_.size())) {
        throw std::out_of_range("psi level " + std::to_string(kappa) + " not stored");
    }
    return psi_store_[static_cast<std::size_t>(kappa)];
}

void SearchEngine::bill_psi_reflection(int kappa_minus_1, CostLedger& ledger) const {
    apply_U(nullptr, kappa_minus_1, false, ledger);
    channel_.target_phase(nullptr, target_, false, ledger);
    apply_U(nullptr, kappa_minus_1, true, ledger);
}

complex SearchEngine::measured_alpha(const QuantumState& state, int level) const {
    const SubsquareId block = subsquare_of(target_.x, target_.y, level, geom_);
    if (channel_.local_error().identity()) return block_uss_overlap(state, block);
    QuantumState conj_frame = state;
    channel_.local_error().apply(conj_frame, false);
    return block_uss_overlap(conj_frame, block);
}

const RecursionTrace& SearchEngine::build_psi() {
    psi_store_.clear();
    trace_.levels.clear();
    build_ledger_ = CostLedger{};

    QuantumState state = QuantumState::basis(geom_, target_);
    psi_store_.push_back(state);

    for (int k = 1; k < params_.n; ++k) {
        const complex alpha = measured_alpha(state, k);
        const double residual =
            max_abs_outside_block(state, subsquare_of(target_.x, target_.y, k, geom_));

        channel_.big_S(&state, k, false, params_.path(), build_ledger_);
        bill_psi_reflection(k - 1, build_ledger_);
        channel_.psi_reflection(state, psi_store_[static_cast<std::size_t>(k - 1)], false);
        state.assert_unit(1e-10);
        psi_store_.push_back(state);

        trace_.levels.push_back({k, alpha, std::norm(alpha), residual, build_ledger_.steps});
    }

    // Level n: overlap with the whole-lattice u.s.s.; no further operators in
    // the build, the amplification consumes psi_{n-1}.
    const complex alpha_n = measured_alpha(state, params_.n);
    const double residual_n =
        max_abs_outside_block(state, subsquare_of(target_.x, target_.y, params_.n, geom_));
    trace_.levels.push_back(
        {params_.n, alpha_n, std::norm(alpha_n), residual_n, build_ledger_.steps});

    if (params_.build_through_n) {
        channel_.big_S(&state, params_.n, false, params_.path(), build_ledger_);
        bill_psi_reflection(params_.n - 1, build_ledger_);
        channel_.psi_reflection(state, psi_store_.back(), false);
        state.assert_unit(1e-10);
        psi_store_.push_back(state);
    }
    return trace_;
}

void SearchEngine::apply_U(QuantumState* st, int kappa, bool adjoint, CostLedger& ledger) const {
    if (kappa < 0 || kappa > params_.n) {
        throw std::out_of_range("apply_U: level " + std::to_string(kappa));
    }
    if (kappa == 0) return; // U_0 = identity, zero cost
    if (!adjoint) {
        apply_U(st, kappa - 1, false, ledger);
        channel_.big_S(st, kappa, false, params_.path(), ledger);
        apply_U(st, kappa - 1, true, ledger);
        channel_.target_phase(st, target_, false, ledger);
        apply_U(st, kappa - 1, false, ledger);
    } else {
        apply_U(st, kappa - 1, true, ledger);
        channel_.target_phase(st, target_, true, ledger);
        apply_U(st, kappa - 1, false, ledger);
        channel_.big_S(st, kappa, true, params_.path(), ledger);
        apply_U(st, kappa - 1, true, ledger);
    }
}

void SearchEngine::apply_U_fast(QuantumState& st, int kappa, bool adjoint,
                                CostLedger& ledger) const {
    if (kappa == 0) return;
    if (static_cast<int>(psi_store_.size()) < kappa) {
        throw std::logic_error("apply_U_fast needs the stored level states; run build_psi()");
    }
    if (!adjoint) {
        for (int k = 1; k <= kappa; ++k) {
            channel_.big_S(&st, k, false, params_.path(), ledger);
            bill_psi_reflection(k - 1, ledger);
            channel_.psi_reflection(st, psi_store_[static_cast<std::size_t>(k - 1)], false);
        }
    } else {
        for (int k = kappa; k >= 1; --k) {
            bill_psi_reflection(k - 1, ledger);
            channel_.psi_reflection(st, psi_store_[static_cast<std::size_t>(k - 1)], true);
            channel_.big_S(&st, k, true, params_.path(), ledger);
        }
    }
}

SearchResult SearchEngine::amplify() {
    if (!built()) build_psi();

    SearchResult res;
    res.params = params_;
    res.trace = trace_;
    res.offcenter_target = (target_.x % 3 != 1) || (target_.y % 3 != 1);

    int run_iterations = 0;
    switch (params_.policy) {
        case AmpPolicy::automatic:
            run_iterations = auto_amplification_count(std::abs(trace_.alpha_n()));
            break;
        case AmpPolicy::fixed:
            run_iterations = params_.fixed_j;
            break;
        case AmpPolicy::scan:
            run_iterations = params_.scan_max_j;
            break;
    }
    if (run_iterations < 0) throw std::invalid_argument("amplification count must be >= 0");

    CostLedger ledger;
    QuantumState state = QuantumState::basis(geom_, Vertex{0, 0});
    channel_.S_k(&state, params_.n, false, ledger); // prepares the lattice u.s.s.
    apply_U_fast(state, params_.n - 1, true, ledger);
    state.assert_unit(1e-10);

    std::vector<double> probs{std::norm(state.at(target_))};
    std::vector<std::int64_t> steps{ledger.steps};
    for (int it = 1; it <= run_iterations; ++it) {
        channel_.target_phase(&state, target_, false, ledger);
        apply_U_fast(state, params_.n - 1, false, ledger);
        channel_.big_S(&state, params_.n, false, params_.path(), ledger);
        apply_U_fast(state, params_.n - 1, true, ledger);
        state.assert_unit(1e-10);
        probs.push_back(std::norm(state.at(target_)));
        steps.push_back(ledger.steps);
    }

    int chosen = run_iterations;
    if (params_.policy == AmpPolicy::scan) {
        chosen = 0;
        for (int j = 1; j <= run_iterations; ++j) {
            if (probs[static_cast<std::size_t>(j)] > probs[static_cast<std::size_t>(chosen)]) {
                chosen = j;
            }
        }
    }
    res.amplification_iterations = chosen;
    res.success_probability = probs[static_cast<std::size_t>(chosen)];
    res.total_steps = steps[static_cast<std::size_t>(chosen)];
    return res;
}

SearchResult SearchEngine::run_search() {
    build_psi();
    return amplify();
}

} // namespace rqss
