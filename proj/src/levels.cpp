#include "l0lab/levels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

#include "l0lab/common.hpp"
#include "l0lab/errors.hpp"

namespace l0lab {

namespace {

long long support_cap_from_env() {
    if (const char* s = std::getenv("L0LAB_MAX_SUPPORTS")) {
        char* end = nullptr;
        const long long v = std::strtoll(s, &end, 10);
        if (end != s && v > 0) return v;
    }
    return 2'000'000;
}

}  // namespace

void validate_instance(const Instance& inst) {
    if (inst.b.size() != inst.A.rows())
        throw InvalidInputError("instance: A and b row counts differ");
    for (double v : inst.b) {
        if (!std::isfinite(v)) throw InvalidInputError("instance: b entries must be finite");
    }
    if (inst.p != 1 && inst.p != 2)
        throw InvalidInputError("instance: p must be 1 or 2");
    if (inst.max_enumeration_cols < 1 || inst.max_enumeration_cols > 31)
        throw InvalidInputError("instance: max_enumeration_cols must be in [1, 31]");
}

AchievingSupport solve_on_support(const Instance& inst, std::span<const int> support) {
    AchievingSupport out;
    out.support.assign(support.begin(), support.end());
    out.minimizer.assign(inst.A.cols(), 0.0);
    if (support.empty()) {
        out.residual = lp_norm(inst.b, inst.p);
        return out;
    }
    const DenseMatrix sub = inst.A.select_columns(support);
    if (inst.p == 2) {
        LsResult ls = least_squares(sub, inst.b);
        for (std::size_t j = 0; j < support.size(); ++j)
            out.minimizer[support[j]] = ls.minimizer[j];
        out.residual = ls.residual_norm;
    } else {
        L1Result l1 = l1_regression(sub, inst.b);
        for (std::size_t j = 0; j < support.size(); ++j)
            out.minimizer[support[j]] = l1.minimizer[j];
        out.residual = l1.residual_l1;
    }
    return out;
}

ResidualStaircase residual_staircase(const Instance& inst) {
    validate_instance(inst);
    const int n = static_cast<int>(inst.A.cols());
    if (n > inst.max_enumeration_cols) {
        throw ResourceLimitError(
            "support enumeration guard: n = " + std::to_string(n) + " exceeds cap " +
            std::to_string(inst.max_enumeration_cols) + "; largest layer C(n, n/2) = " +
            std::to_string(binomial(n, n / 2)));
    }
    const long long total = 1LL << n;
    const long long cap = support_cap_from_env();
    if (total > cap) {
        throw ResourceLimitError(
            "support enumeration guard: sum_k C(" + std::to_string(n) + ", k) = " +
            std::to_string(total) + " supports exceeds L0LAB_MAX_SUPPORTS = " +
            std::to_string(cap) + " (largest layer C(n, n/2) = " +
            std::to_string(binomial(n, n / 2)) + ")");
    }

    ResidualStaircase st{inst, {}, {}, {}};
    st.best_exact.assign(n + 1, std::numeric_limits<double>::infinity());
    st.evals.resize(n + 1);
    for (int k = 0; k <= n; ++k) {
        st.evals[k].reserve(static_cast<std::size_t>(binomial(n, k)));
        std::vector<int> support(k);
        std::iota(support.begin(), support.end(), 0);
        do {
            const AchievingSupport sol = solve_on_support(inst, support);
            st.evals[k].push_back({indices_to_mask(support), sol.residual});
            st.best_exact[k] = std::min(st.best_exact[k], sol.residual);
        } while (k > 0 && next_combination(support, n));
    }
    st.best_r = st.best_exact;
    for (int k = 1; k <= n; ++k) st.best_r[k] = std::min(st.best_r[k], st.best_r[k - 1]);
    return st;
}

std::vector<AchievingSupport> staircase_achieving(const ResidualStaircase& st, int k) {
    if (k < 0 || k > st.n()) throw InvalidInputError("staircase_achieving: k out of range");
    std::vector<AchievingSupport> out;
    const double target = st.best_r[k];
    for (int j = 0; j <= k; ++j) {
        for (const SupportEval& ev : st.evals[j]) {
            if (ev.residual <= target + kTieTol * std::max(1.0, target)) {
                const auto idx = mask_to_indices(ev.mask);
                out.push_back(solve_on_support(st.instance, idx));
            }
        }
    }
    return out;
}

std::vector<int> LevelSequence::s() const {
    std::vector<int> v(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) v[i] = levels[i].s;
    return v;
}

std::vector<double> LevelSequence::rho() const {
    std::vector<double> v(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) v[i] = levels[i].rho;
    return v;
}

double LevelSequence::rho_tol() const {
    return kTieTol * std::max(1.0, levels.back().rho);
}

LevelSequence levels(const ResidualStaircase& st, const PhiSpec& phi) {
    const int n = st.n();
    const Instance& inst = st.instance;

    std::vector<double> phi_of_best(n + 1);
    for (int k = 0; k <= n; ++k) phi_of_best[k] = phi_eval(phi, st.best_r[k]);
    const double rho_last = phi_of_best[0];  // phi(||b||_p)
    const double tol = kTieTol * std::max(1.0, rho_last);

    const auto min_card_at = [&](double rho) {
        for (int k = 0; k <= n; ++k) {
            if (std::abs(phi_of_best[k] - rho) <= tol) return k;
        }
        throw AnalysisError("level iteration: no cardinality attains the level value");
    };

    std::vector<int> s_seq;
    std::vector<double> rho_seq;
    rho_seq.push_back(phi_of_best[n]);
    s_seq.push_back(min_card_at(rho_seq.back()));
    while (s_seq.back() > 0) {
        const double next_rho = phi_of_best[s_seq.back() - 1];
        rho_seq.push_back(next_rho);
        s_seq.push_back(min_card_at(next_rho));
    }

    LevelSequence seq;
    seq.L = static_cast<int>(s_seq.size()) - 1;
    seq.phi = phi;
    seq.p = inst.p;
    seq.n = n;
    seq.instance = inst;
    const bool exhaustive_family =
        inst.p == 2;  // per-support minimizers are unique at full column rank
    for (std::size_t i = 0; i < s_seq.size(); ++i) {
        Level lvl;
        lvl.s = s_seq[i];
        lvl.rho = rho_seq[i];
        if (lvl.s == 0) {
            AchievingSupport zero;
            zero.minimizer.assign(n, 0.0);
            zero.residual = st.norm_b();
            lvl.members.push_back(std::move(zero));
            lvl.omega_infinite = false;
        } else {
            for (const SupportEval& ev : st.evals[lvl.s]) {
                if (std::abs(phi_eval(phi, ev.residual) - lvl.rho) > tol) continue;
                const auto idx = mask_to_indices(ev.mask);
                AchievingSupport sol = solve_on_support(inst, idx);
                if (count_nonzeros(sol.minimizer) != lvl.s) continue;
                if (numerical_rank(inst.A.select_columns(idx)) != lvl.s) continue;
                lvl.members.push_back(std::move(sol));
            }
            lvl.omega_infinite =
                !(exhaustive_family && phi_singleton_level_set(phi, lvl.rho));
        }
        seq.levels.push_back(std::move(lvl));
    }
    return seq;
}

LevelSequence levels_from_arrays(std::vector<int> s, std::vector<double> rho) {
    if (s.empty() || s.size() != rho.size())
        throw InvalidInputError("levels_from_arrays: s and rho must be nonempty and equal-sized");
    if (s.back() != 0) throw InvalidInputError("levels_from_arrays: s must end at 0");
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] >= s[i - 1]) throw InvalidInputError("levels_from_arrays: s must strictly decrease");
        if (rho[i] <= rho[i - 1]) throw InvalidInputError("levels_from_arrays: rho must strictly increase");
    }
    LevelSequence seq;
    seq.L = static_cast<int>(s.size()) - 1;
    seq.phi = PhiSpec::identity();
    seq.p = 0;
    seq.n = s.front();
    for (std::size_t i = 0; i < s.size(); ++i) {
        Level lvl;
        lvl.s = s[i];
        lvl.rho = rho[i];
        seq.levels.push_back(std::move(lvl));
    }
    return seq;
}

const std::vector<AchievingSupport>& level_representatives(const LevelSequence& seq, int i) {
    if (i < 0 || i > seq.L) throw InvalidInputError("level_representatives: index out of range");
    return seq.levels[i].members;
}

}  // namespace l0lab
