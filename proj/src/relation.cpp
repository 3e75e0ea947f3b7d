#include "l0lab/relation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "l0lab/common.hpp"
#include "l0lab/errors.hpp"

namespace l0lab {

RelationReport classify(const LevelSequence& seq_identity, const BreakpointSequence& bp,
                        double sigma) {
    const double tol = seq_identity.rho_tol();
    const std::vector<double> rho = seq_identity.rho();
    const double sigma_star = rho.front();
    const double norm_b = rho.back();
    if (sigma < sigma_star - tol)
        throw InfeasibleError("classify: sigma below the best achievable residual " +
                                  format_double(sigma_star),
                              sigma_star);
    if (sigma >= norm_b - tol)
        throw PreconditionError(
            "classify: sigma at or above ||b||_p is the trivial regime (zero vector optimal)");

    RelationReport rep;
    for (int i = 0; i < seq_identity.L; ++i) {
        if (rho[i] <= sigma + tol) rep.k = i;
    }
    rep.equality_on_window = std::abs(sigma - rho[rep.k]) <= tol;

    // Window of the breakpoint structure where level k is active.
    for (int j = 0; j <= bp.K; ++j) {
        if (bp.t[j] == rep.k) {
            rep.rel_case = RelationCase::InT;
            rep.j = j;
            rep.window_empty = false;
            rep.window.lo = bp.lambda[j];
            rep.window.point = false;
            rep.window.unbounded_hi = j == 0;
            rep.window.hi = j == 0 ? std::numeric_limits<double>::infinity() : bp.lambda[j - 1];
            rep.intersection_level = rep.k;
            rep.subset_on_window = true;
            rep.strict_subset_on_window =
                seq_identity.p == 2 && !rep.equality_on_window;
            return rep;
        }
    }
    for (int j = 0; j < bp.K; ++j) {
        const auto& ties = bp.tie_set(j);
        if (std::find(ties.begin(), ties.end(), rep.k) != ties.end()) {
            rep.rel_case = RelationCase::InTieSetsNotT;
            rep.j = j;
            rep.window_empty = false;
            rep.window.lo = rep.window.hi = bp.lambda[j];
            rep.window.point = true;
            rep.intersection_level = rep.k;
            rep.subset_on_window = false;
            return rep;
        }
    }
    rep.rel_case = RelationCase::Never;
    return rep;
}

ThresholdResult noiseless_threshold(const Instance& inst) {
    return noiseless_threshold(inst, PhiSpec::power(inst.p));
}

ThresholdResult noiseless_threshold(const Instance& inst, const PhiSpec& phi) {
    const ResidualStaircase st = residual_staircase(inst);
    const double sigma_star = st.sigma_star();
    if (!near(sigma_star, 0.0, st.norm_b()))
        throw InfeasibleError(
            "noiseless_threshold: Ax = b is infeasible; best residual " + format_double(sigma_star),
            sigma_star);
    ThresholdResult out;
    out.seq = levels(st, phi);
    out.bp = breakpoints(out.seq);
    if (out.seq.L == 0) {
        out.lambda_star = 0.0;
        out.all_lambda_exact = true;
    } else {
        out.lambda_star = out.bp.lambda[0];
    }
    return out;
}

ThresholdResult exact_penalty_threshold(const Instance& inst, const PhiSpec& phi, double sigma) {
    if (!phi_exact_for(phi, sigma))
        throw PreconditionError(
            "exact_penalty_threshold: phi must vanish exactly on [0, sigma] and be positive "
            "beyond it; got zero threshold " +
            format_double(phi_properties(phi).zero_threshold) + " for sigma " +
            format_double(sigma));
    const ResidualStaircase st = residual_staircase(inst);
    if (sigma < st.sigma_star() - kTieTol * std::max(1.0, st.sigma_star()))
        throw InfeasibleError("exact_penalty_threshold: sigma below the best achievable residual " +
                                  format_double(st.sigma_star()),
                              st.sigma_star());
    ThresholdResult out;
    out.seq = levels(st, phi);
    out.bp = breakpoints(out.seq);
    if (out.seq.L == 0) {
        out.lambda_star = 0.0;
        out.all_lambda_exact = true;
    } else {
        out.lambda_star = out.bp.lambda[0];
    }
    return out;
}

namespace {

// Supports achieving the brute-force optimum of ||x||_0 + lambda*phi(res),
// at representative granularity (support + its canonical minimizer).
std::set<std::uint32_t> penalty_achieving_supports(const ResidualStaircase& st,
                                                   const PhiSpec& phi, double lambda,
                                                   double* opt_out, int* card_out) {
    const int n = st.n();
    double opt = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= n; ++k)
        opt = std::min(opt, k + lambda * phi_eval(phi, st.best_exact[k]));
    const double tol = kTieTol * std::max(1.0, opt);
    std::set<std::uint32_t> supports;
    int min_card = n + 1;
    for (int k = 0; k <= n; ++k) {
        for (const SupportEval& ev : st.evals[k]) {
            if (k + lambda * phi_eval(phi, ev.residual) > opt + tol) continue;
            const AchievingSupport sol = solve_on_support(st.instance, mask_to_indices(ev.mask));
            if (count_nonzeros(sol.minimizer) != k) continue;
            supports.insert(ev.mask);
            min_card = std::min(min_card, k);
        }
    }
    if (opt_out) *opt_out = opt;
    if (card_out) *card_out = min_card;
    return supports;
}

// Supports achieving the constrained optimum min{||x||_0 : res <= sigma}.
std::set<std::uint32_t> constrained_achieving_supports(const ResidualStaircase& st, double sigma,
                                                       int* card_out) {
    const int n = st.n();
    const double tol = kTieTol * std::max(1.0, sigma);
    int h = -1;
    for (int k = 0; k <= n; ++k) {
        if (st.best_r[k] <= sigma + tol) {
            h = k;
            break;
        }
    }
    if (h < 0)
        throw InfeasibleError("constrained problem infeasible at sigma " + format_double(sigma),
                              st.sigma_star());
    std::set<std::uint32_t> supports;
    for (const SupportEval& ev : st.evals[h]) {
        if (ev.residual > sigma + tol) continue;
        const AchievingSupport sol = solve_on_support(st.instance, mask_to_indices(ev.mask));
        if (count_nonzeros(sol.minimizer) != h) continue;
        supports.insert(ev.mask);
    }
    if (card_out) *card_out = h;
    return supports;
}

}  // namespace

ExactnessReport verify_exactness(const Instance& inst, const PhiSpec& phi, double sigma,
                                 std::span<const double> lambdas) {
    const ThresholdResult thr = exact_penalty_threshold(inst, phi, sigma);
    const ResidualStaircase st = residual_staircase(inst);

    ExactnessReport rep;
    rep.lambda_star = thr.lambda_star;
    for (double lambda : lambdas) {
        ExactnessSample sample;
        sample.lambda = lambda;
        double opt = 0.0;
        const auto pen = penalty_achieving_supports(st, phi, lambda, &opt, &sample.penalty_cardinality);
        const auto con = constrained_achieving_supports(st, sigma, &sample.constrained_cardinality);
        sample.pass = pen == con &&
                      sample.penalty_cardinality == sample.constrained_cardinality &&
                      near(opt, static_cast<double>(sample.constrained_cardinality), opt);
        rep.samples.push_back(sample);
        rep.all_pass = rep.all_pass && sample.pass;
    }
    return rep;
}

}  // namespace l0lab
