#pragma once

#include <span>
#include <vector>

#include "l0lab/breakpoints.hpp"
#include "l0lab/levels.hpp"

namespace l0lab {

// How the penalty problem's optimal set Omega(lambda) meets the constrained
// problem's Omega_hat(sigma) across lambda, classified by where the level k
// with rho_k <= phi(sigma) < rho_{k+1} sits in the breakpoint structure.
enum class RelationCase { InT, InTieSetsNotT, Never };

struct LambdaWindow {
    double lo = 0.0;
    double hi = 0.0;
    bool point = false;         // window is the single value lo
    bool unbounded_hi = false;  // hi is +infinity
};

struct RelationReport {
    int k = 0;                    // level index placing sigma
    RelationCase rel_case = RelationCase::Never;
    int j = -1;                   // breakpoint index of the window, when any
    bool window_empty = true;
    LambdaWindow window;
    int intersection_level = -1;  // level equal to the intersection when nonempty
    bool subset_on_window = false;         // Omega(lambda) subset of Omega_hat(sigma)
    bool equality_on_window = false;       // equality holds (sigma at the grid value)
    bool strict_subset_on_window = false;  // p=2, sigma strictly inside the level gap
};

// seq_identity: levels under identity phi (residual levels); bp: breakpoints
// under the power penalty phi(z) = z^p / p. The level structure (L, s_i,
// supports) is shared by all strictly increasing phi.
RelationReport classify(const LevelSequence& seq_identity, const BreakpointSequence& bp,
                        double sigma);

struct ThresholdResult {
    double lambda_star = 0.0;
    bool all_lambda_exact = false;  // degenerate L = 0: every lambda works
    LevelSequence seq;
    BreakpointSequence bp;
};

// Consistent system Ax = b: smallest lambda beyond which the power-penalty
// problem's optimal set equals the sparsest-solution set of Ax = b.
ThresholdResult noiseless_threshold(const Instance& inst);
ThresholdResult noiseless_threshold(const Instance& inst, const PhiSpec& phi);

// Exact penalty threshold for a phi vanishing exactly on [0, sigma]: beyond
// the returned lambda the penalty problem's optimal set equals the
// constrained problem's at representative granularity.
ThresholdResult exact_penalty_threshold(const Instance& inst, const PhiSpec& phi, double sigma);

struct ExactnessSample {
    double lambda = 0.0;
    bool pass = false;
    int penalty_cardinality = 0;
    int constrained_cardinality = 0;
};

struct ExactnessReport {
    bool all_pass = true;
    double lambda_star = 0.0;
    std::vector<ExactnessSample> samples;
};

// Brute-force check per lambda sample: the penalty optimum's achieving
// supports and objective levels coincide with the constrained problem's.
ExactnessReport verify_exactness(const Instance& inst, const PhiSpec& phi, double sigma,
                                 std::span<const double> lambdas);

}  // namespace l0lab
