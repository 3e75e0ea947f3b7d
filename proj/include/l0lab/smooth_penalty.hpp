#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "l0lab/levels.hpp"

namespace l0lab {

// The smooth exact-penalty objective ||x||_0 + lambda * Phi(x) with
// Phi(x) = (||Ax-b||_2 - sigma)_+^2 / 2. Phi is differentiable with an
// ||A||_2^2-Lipschitz gradient.
struct SmoothPenaltyProblem {
    Instance instance;  // p must be 2
    double sigma = 0.0;
    double lambda = 1.0;
};

void validate_problem(const SmoothPenaltyProblem& prob);

double phi_big_eval(const SmoothPenaltyProblem& prob, std::span<const double> x);

// Zero below the hinge, (1 - sigma/||Ax-b||_2) A^T(Ax-b) above it.
std::vector<double> phi_big_grad(const SmoothPenaltyProblem& prob, std::span<const double> x);

// ||A||_2^2, the Lipschitz constant of grad Phi.
double lipschitz_bound(const SmoothPenaltyProblem& prob);

// Largest admissible descent step times a 0.99 margin: 0.99/(lambda*||A||_2^2).
double default_step(const SmoothPenaltyProblem& prob);

struct SolveResult {
    std::vector<double> x;
    double objective = 0.0;
    int iterations = 0;
};

// Proximal-gradient iteration x+ = HardThreshold(x - step*lambda*grad Phi(x),
// sqrt(2*step)); entries exactly at the threshold are kept. Stops when the
// support and objective stabilize or max_iters is reached. Optional trace
// emits CSV rows (iteration, objective, support_size).
SolveResult prox_grad_solve(const SmoothPenaltyProblem& prob, std::span<const double> x0,
                            int max_iters, double step, std::ostream* trace = nullptr);

}  // namespace l0lab
