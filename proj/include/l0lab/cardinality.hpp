#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "l0lab/breakpoints.hpp"
#include "l0lab/levels.hpp"

namespace l0lab {

enum class Finiteness { Finite, Infinite, Unknown };

struct CardinalityReport {
    int level_index = -1;
    Finiteness finite = Finiteness::Unknown;
    std::optional<long long> upper_bound;
    int witnesses = 0;           // stored representatives
    bool strict_minimizers = false;  // certified strict
    std::vector<bool> h2_status;     // per-column signed-sum check (p=1 paths)
    // Constructive certificate for an Infinite verdict: the representative
    // and a distinct point with equal objective on the same support.
    std::optional<std::pair<std::vector<double>, std::vector<double>>> second_point;
};

// p=2: the optimal set at level k is finite with at most C(n, s_k) points,
// one per achieving support, when the phi level set at rho_k is a singleton.
CardinalityReport p2_bound(const LevelSequence& seq, int k);

// True iff no +-1 signed combination of the entries sums to zero.
// Guard: at most 25 entries (2^m sign patterns).
bool check_h2(std::span<const double> column);

// p=1 level cardinality per the one-directional conditions: terminal level is
// a singleton; cardinality-1 levels with all-H2 columns are finite; levels
// with a representative whose residual has >= m+2-s_k nonzeros are infinite
// (with constructive certificate); otherwise unknown.
CardinalityReport p1_report(const LevelSequence& seq, int k);

struct StrictnessP2 {
    bool sigma_on_grid = false;
    bool all_strict = false;
    bool finite = false;
    bool residuals_equal_sigma = false;  // representatives sit exactly at sigma
};

// p=2 constrained problem: sigma on the level grid <=> finitely many optimal
// solutions <=> every optimal solution is strict. The three fields share one
// verdict; the residual check validates it on the representatives.
StrictnessP2 strictness_p2(const LevelSequence& seq_identity, double sigma);

// Cardinality of the penalty problem's optimal set at lambda, combining the
// active levels' verdicts.
CardinalityReport penalty_cardinality(const LevelSequence& seq, const BreakpointSequence& bp,
                                      double lambda);

}  // namespace l0lab
