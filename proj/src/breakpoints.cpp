#include "l0lab/breakpoints.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "l0lab/common.hpp"
#include "l0lab/errors.hpp"

namespace l0lab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_identity_phi(const PhiSpec& phi) {
    return phi.variant == PhiVariant::Identity ||
           (phi.variant == PhiVariant::Power && phi.p == 1);
}

void require_identity(const LevelSequence& seq, const char* op) {
    // Synthetic sequences (p == 0) carry raw residual levels by construction.
    if (seq.p != 0 && !is_identity_phi(seq.phi))
        throw PreconditionError(std::string(op) + ": requires an identity-phi level sequence");
}

}  // namespace

BreakpointSequence breakpoints(const LevelSequence& seq) {
    const std::vector<int> s = seq.s();
    const std::vector<double> rho = seq.rho();
    const int L = seq.L;

    BreakpointSequence bp;
    bp.tie_sets.push_back({0});  // Lambda_{-1}
    int i = 0;
    while (std::find(bp.tie_sets.back().begin(), bp.tie_sets.back().end(), L) ==
           bp.tie_sets.back().end()) {
        const int ti = *std::max_element(bp.tie_sets.back().begin(), bp.tie_sets.back().end());
        bp.t.push_back(ti);
        double best = -kInf;
        for (int j = ti + 1; j <= L; ++j)
            best = std::max(best, (s[ti] - s[j]) / (rho[j] - rho[ti]));
        std::vector<int> ties;
        for (int j = ti + 1; j <= L; ++j) {
            const double ratio = (s[ti] - s[j]) / (rho[j] - rho[ti]);
            if (near(ratio, best, best)) ties.push_back(j);
        }
        bp.lambda.push_back(best);
        bp.tie_sets.push_back(std::move(ties));
        ++i;
    }
    bp.K = i;
    bp.t.push_back(L);
    bp.lambda.push_back(0.0);
    return bp;
}

MarginalF marginal_F(const LevelSequence& seq, const BreakpointSequence& bp) {
    const std::vector<int> s = seq.s();
    const std::vector<double> rho = seq.rho();
    MarginalF f;
    if (bp.K == 0) {
        f.pieces.push_back({0.0, kInf, 0, rho[0], static_cast<double>(s[0])});
        return f;
    }
    f.pieces.push_back({0.0, bp.lambda[bp.K - 1], seq.L, rho[seq.L], static_cast<double>(s[seq.L])});
    for (int i = bp.K - 1; i >= 1; --i) {
        const int lvl = bp.t[i];
        f.pieces.push_back(
            {bp.lambda[i], bp.lambda[i - 1], lvl, rho[lvl], static_cast<double>(s[lvl])});
    }
    f.pieces.push_back({bp.lambda[0], kInf, 0, rho[0], static_cast<double>(s[0])});
    return f;
}

std::vector<int> active_levels(const LevelSequence& seq, const BreakpointSequence& bp,
                               double lambda) {
    if (bp.K == 0) return {0};
    for (int j = 0; j < bp.K; ++j) {
        if (near(lambda, bp.lambda[j], bp.lambda[j])) {
            std::vector<int> act{bp.t[j]};
            const auto& ties = bp.tie_set(j);
            act.insert(act.end(), ties.begin(), ties.end());
            return act;
        }
    }
    if (lambda > bp.lambda[0]) return {0};
    for (int i = 1; i <= bp.K; ++i) {
        if (lambda > bp.lambda[i] && lambda < bp.lambda[i - 1]) return {bp.t[i]};
    }
    return {seq.L};  // lambda below lambda_{K-1}
}

FValue marginal_F_eval(const LevelSequence& seq, const BreakpointSequence& bp, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw InvalidInputError("marginal_F_eval: lambda must be positive");
    FValue out;
    out.active_levels = active_levels(seq, bp, lambda);
    const int lvl = out.active_levels.front();
    out.value = seq.levels[lvl].s + lambda * seq.levels[lvl].rho;
    return out;
}

PenaltySelection optimal_set_penalty(const LevelSequence& seq, const BreakpointSequence& bp,
                                     double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw InvalidInputError("optimal_set_penalty: lambda must be positive");
    PenaltySelection sel;
    sel.level_indices = active_levels(seq, bp, lambda);
    for (int lvl : sel.level_indices) {
        const auto& members = seq.levels[lvl].members;
        sel.representatives.insert(sel.representatives.end(), members.begin(), members.end());
    }
    return sel;
}

int marginal_H(const LevelSequence& seq_identity, double sigma) {
    require_identity(seq_identity, "marginal_H");
    const double tol = seq_identity.rho_tol();
    const double sigma_star = seq_identity.levels.front().rho;
    if (sigma < sigma_star - tol)
        throw InfeasibleError("marginal_H: sigma below the best achievable residual " +
                                  format_double(sigma_star),
                              sigma_star);
    int k = 0;
    for (int i = 0; i <= seq_identity.L; ++i) {
        if (seq_identity.levels[i].rho <= sigma + tol) k = i;
    }
    return seq_identity.levels[k].s;
}

MarginalH marginal_H_table(const LevelSequence& seq_identity) {
    require_identity(seq_identity, "marginal_H_table");
    MarginalH h;
    for (int i = 0; i < seq_identity.L; ++i) {
        h.pieces.push_back(
            {seq_identity.levels[i].rho, seq_identity.levels[i + 1].rho, seq_identity.levels[i].s});
    }
    h.pieces.push_back({seq_identity.levels[seq_identity.L].rho, kInf, 0});
    return h;
}

ConstrainedSelection optimal_set_constrained(const LevelSequence& seq_identity, double sigma) {
    require_identity(seq_identity, "optimal_set_constrained");
    const double tol = seq_identity.rho_tol();
    const double sigma_star = seq_identity.levels.front().rho;
    if (sigma < sigma_star - tol)
        throw InfeasibleError("optimal_set_constrained: sigma below the best achievable residual " +
                                  format_double(sigma_star),
                              sigma_star);
    ConstrainedSelection sel;
    for (int i = 0; i <= seq_identity.L; ++i) {
        if (seq_identity.levels[i].rho <= sigma + tol) sel.level_index = i;
    }
    sel.exact = sel.level_index == seq_identity.L ||
                std::abs(sigma - seq_identity.levels[sel.level_index].rho) <= tol;
    sel.representatives = seq_identity.levels[sel.level_index].members;
    return sel;
}

void write_plot_csv(std::ostream& os, const LevelSequence& seq, const BreakpointSequence& bp) {
    os << "level_index,slope,intercept,lambda_lo,lambda_hi,active\n";
    for (int i = 0; i <= seq.L; ++i) {
        double lo = 0.0, hi = 0.0;
        int active = 0;
        for (int j = 0; j <= bp.K; ++j) {
            if (bp.t[j] == i) {
                active = 1;
                lo = bp.lambda[j];
                hi = j == 0 ? kInf : bp.lambda[j - 1];
            }
        }
        if (active == 0) {
            for (int j = 0; j < bp.K; ++j) {
                const auto& ties = bp.tie_set(j);
                if (std::find(ties.begin(), ties.end(), i) != ties.end()) {
                    lo = hi = bp.lambda[j];  // touches the envelope at one point
                }
            }
        }
        os << i << ',' << format_double(seq.levels[i].rho) << ','
           << format_double(static_cast<double>(seq.levels[i].s)) << ',' << format_double(lo)
           << ',' << format_double(hi) << ',' << active << '\n';
    }
}

}  // namespace l0lab
