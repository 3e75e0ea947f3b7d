#pragma once

#include <iosfwd>
#include <vector>

#include "l0lab/levels.hpp"

namespace l0lab {

// Breakpoints of the penalty marginal function F: the lower envelope of the
// lines f_i(lambda) = s_i + lambda * rho_i changes its active line at
// lambda_0 > lambda_1 > ... > lambda_K = 0 with active levels t_0 < ... < t_K
// and tie sets Lambda_i (levels meeting the active line exactly at lambda_i).
struct BreakpointSequence {
    int K = 0;
    std::vector<int> t;          // t_0 .. t_K, t_K = L
    std::vector<double> lambda;  // lambda_0 .. lambda_K, lambda_K = 0
    // tie_sets[0] = Lambda_{-1} = {0}; tie_sets[i+1] = Lambda_i, i = 0..K-1.
    std::vector<std::vector<int>> tie_sets;

    const std::vector<int>& tie_set(int i) const { return tie_sets[i + 1]; }
};

BreakpointSequence breakpoints(const LevelSequence& seq);

struct FPiece {
    double lambda_lo = 0.0;  // open end
    double lambda_hi = 0.0;  // closed end; +inf on the last piece
    int level = 0;           // active level index
    double slope = 0.0;      // rho of the active level
    double intercept = 0.0;  // s of the active level
};

// Piecewise-linear description of F(lambda), pieces in ascending lambda.
struct MarginalF {
    std::vector<FPiece> pieces;
};

MarginalF marginal_F(const LevelSequence& seq, const BreakpointSequence& bp);

// Active level indices at lambda: the interval's level strictly between
// breakpoints, {t_j} plus the tie set exactly at lambda_j, {0} above
// lambda_0, {L} below lambda_{K-1}.
std::vector<int> active_levels(const LevelSequence& seq, const BreakpointSequence& bp,
                               double lambda);

struct FValue {
    double value = 0.0;
    std::vector<int> active_levels;  // {t_i} inside a piece, tie set at a breakpoint
};

FValue marginal_F_eval(const LevelSequence& seq, const BreakpointSequence& bp, double lambda);

// Level indices whose optimal sets constitute the penalty problem's optimal
// solution set at the given lambda, with their representatives.
struct PenaltySelection {
    std::vector<int> level_indices;
    std::vector<AchievingSupport> representatives;
};

PenaltySelection optimal_set_penalty(const LevelSequence& seq, const BreakpointSequence& bp,
                                     double lambda);

// Constrained marginal H(sigma) = min{||x||_0 : ||Ax-b||_p <= sigma} read off
// an identity-phi level sequence. Throws InfeasibleError below sigma_star.
int marginal_H(const LevelSequence& seq_identity, double sigma);

struct HPiece {
    double sigma_lo = 0.0;  // closed end
    double sigma_hi = 0.0;  // open end; +inf on the last piece
    int value = 0;
};

struct MarginalH {
    std::vector<HPiece> pieces;
};

MarginalH marginal_H_table(const LevelSequence& seq_identity);

struct ConstrainedSelection {
    int level_index = 0;  // k with rho_k <= sigma < rho_{k+1}
    bool exact = false;   // sigma == rho_k: representatives span the whole set
    std::vector<AchievingSupport> representatives;
};

ConstrainedSelection optimal_set_constrained(const LevelSequence& seq_identity, double sigma);

// One CSV row per level: level_index, slope, intercept, lambda_lo, lambda_hi,
// active. Active rows are the envelope lines with their lambda windows.
void write_plot_csv(std::ostream& os, const LevelSequence& seq, const BreakpointSequence& bp);

}  // namespace l0lab
