#include "l0lab/smooth_penalty.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "l0lab/common.hpp"
#include "l0lab/errors.hpp"

namespace l0lab {

void validate_problem(const SmoothPenaltyProblem& prob) {
    validate_instance(prob.instance);
    if (prob.instance.p != 2)
        throw InvalidInputError("smooth penalty: instance must use the l2 residual norm");
    if (prob.sigma < 0.0 || !std::isfinite(prob.sigma))
        throw InvalidInputError("smooth penalty: sigma must be a finite nonnegative real");
    if (!(prob.lambda > 0.0) || !std::isfinite(prob.lambda))
        throw InvalidInputError("smooth penalty: lambda must be positive");
}

namespace {

std::vector<double> residual_of(const SmoothPenaltyProblem& prob, std::span<const double> x) {
    auto r = prob.instance.A.apply(x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= prob.instance.b[i];
    return r;
}

int exact_support_size(std::span<const double> x) {
    int c = 0;
    for (double v : x) {
        if (v != 0.0) ++c;
    }
    return c;
}

}  // namespace

double phi_big_eval(const SmoothPenaltyProblem& prob, std::span<const double> x) {
    validate_problem(prob);
    const double hinge = std::max(l2_norm(residual_of(prob, x)) - prob.sigma, 0.0);
    return 0.5 * hinge * hinge;
}

std::vector<double> phi_big_grad(const SmoothPenaltyProblem& prob, std::span<const double> x) {
    validate_problem(prob);
    auto r = residual_of(prob, x);
    const double rn = l2_norm(r);
    if (rn <= prob.sigma) return std::vector<double>(prob.instance.A.cols(), 0.0);
    const double f = 1.0 - prob.sigma / rn;
    for (double& v : r) v *= f;
    return prob.instance.A.apply_transpose(r);
}

double lipschitz_bound(const SmoothPenaltyProblem& prob) {
    validate_problem(prob);
    const double s = spectral_norm(prob.instance.A).value;
    return s * s;
}

double default_step(const SmoothPenaltyProblem& prob) {
    const double bound = lipschitz_bound(prob);
    if (bound == 0.0) return 1.0;
    return 0.99 / (prob.lambda * bound);
}

SolveResult prox_grad_solve(const SmoothPenaltyProblem& prob, std::span<const double> x0,
                            int max_iters, double step, std::ostream* trace) {
    validate_problem(prob);
    if (x0.size() != prob.instance.A.cols())
        throw InvalidInputError("prox_grad_solve: x0 has wrong dimension");
    if (max_iters < 0) throw InvalidInputError("prox_grad_solve: max_iters must be nonnegative");
    const double bound = lipschitz_bound(prob);
    if (!(step > 0.0) || (bound > 0.0 && step * prob.lambda > (1.0 + 1e-12) / bound))
        throw InvalidInputError(
            "prox_grad_solve: step must lie in (0, 1/(lambda*||A||_2^2)]");

    const double threshold = std::sqrt(2.0 * step);
    std::vector<double> x(x0.begin(), x0.end());
    auto objective = [&](std::span<const double> v) {
        return exact_support_size(v) + prob.lambda * phi_big_eval(prob, v);
    };
    double obj = objective(x);
    int support = exact_support_size(x);
    if (trace) *trace << "iteration,objective,support_size\n0," << format_double(obj) << ','
                      << support << '\n';

    int iters = 0;
    for (; iters < max_iters; ++iters) {
        const auto g = phi_big_grad(prob, x);
        std::vector<double> next(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double v = x[j] - step * prob.lambda * g[j];
            next[j] = std::abs(v) >= threshold ? v : 0.0;
        }
        const double next_obj = objective(next);
        const int next_support = exact_support_size(next);
        const bool same_support = next_support == support && [&] {
            for (std::size_t j = 0; j < x.size(); ++j)
                if ((x[j] != 0.0) != (next[j] != 0.0)) return false;
            return true;
        }();
        const bool stable = same_support && std::abs(next_obj - obj) <= 1e-12;
        const bool unchanged = next == x;
        x = std::move(next);
        obj = next_obj;
        support = next_support;
        if (trace) *trace << iters + 1 << ',' << format_double(obj) << ',' << support << '\n';
        if (stable || unchanged) {
            ++iters;
            break;
        }
    }
    return {std::move(x), obj, iters};
}

}  // namespace l0lab
