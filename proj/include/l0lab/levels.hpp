#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "l0lab/linalg.hpp"
#include "l0lab/phi.hpp"

namespace l0lab {

// A problem instance: dense A (m x n), data b (m), residual norm selector p.
struct Instance {
    DenseMatrix A;
    std::vector<double> b;
    int p = 2;
    int max_enumeration_cols = 20;  // guard on n before support enumeration
};

void validate_instance(const Instance& inst);

// One evaluated support: column bitmask and its optimal residual norm.
struct SupportEval {
    std::uint32_t mask = 0;
    double residual = 0.0;
};

// A support together with its canonical representative minimizer:
// minimum-norm least squares for p=2, lexicographic vertex for p=1.
struct AchievingSupport {
    std::vector<int> support;       // sorted 0-based column indices
    std::vector<double> minimizer;  // length n
    double residual = 0.0;          // ||A x - b||_p
};

// best_r[k] = min{ ||Ax-b||_p : ||x||_0 <= k }, obtained by evaluating every
// support of exact cardinality and prefix-minimizing.
struct ResidualStaircase {
    Instance instance;
    std::vector<double> best_exact;              // min over supports of size == k
    std::vector<double> best_r;                  // min over supports of size <= k
    std::vector<std::vector<SupportEval>> evals; // all supports, by exact size, lex order

    int n() const { return static_cast<int>(instance.A.cols()); }
    double sigma_star() const { return best_r.back(); }
    double norm_b() const { return best_r.front(); }
};

ResidualStaircase residual_staircase(const Instance& inst);

// Canonical per-support subproblem solve, padded to length n.
AchievingSupport solve_on_support(const Instance& inst, std::span<const int> support);

// Supports of size <= k attaining best_r[k] within the tie tolerance.
std::vector<AchievingSupport> staircase_achieving(const ResidualStaircase& st, int k);

struct Level {
    int s = 0;
    double rho = 0.0;
    std::vector<AchievingSupport> members;
    // True when `members` may be a non-exhaustive sample of the optimal set
    // (p=1 away from the terminal level, or a plateau phi level).
    bool omega_infinite = false;
};

// The level sequence: sparsest cardinality s_i achieving the i-th residual
// level rho_i under phi, with one representative per achieving support.
// s_0 > s_1 > ... > s_L = 0 and rho_0 < rho_1 < ... < rho_L = phi(||b||_p).
struct LevelSequence {
    int L = 0;
    std::vector<Level> levels;  // size L + 1
    PhiSpec phi;
    int p = 0;  // 0 for synthetic sequences built from raw arrays
    int n = 0;
    std::optional<Instance> instance;

    std::vector<int> s() const;
    std::vector<double> rho() const;
    double rho_tol() const;  // tie tolerance: 1e-9 * max(1, rho_L)
};

LevelSequence levels(const ResidualStaircase& st, const PhiSpec& phi);

// Synthetic sequence from raw (s, rho) arrays; no supports or instance.
LevelSequence levels_from_arrays(std::vector<int> s, std::vector<double> rho);

const std::vector<AchievingSupport>& level_representatives(const LevelSequence& seq, int i);

}  // namespace l0lab
