#pragma once

#include "l0lab/levels.hpp"

namespace l0lab::fixtures {

// Bundled 4x5 sparse-recovery demo: b = A x + noise for a 2-sparse x, with
// exact decimal data. Used by the `repro` golden suite and the tests.
Instance demo_instance();

// Noise level used by the demo's constrained analyses.
inline constexpr double kDemoSigma = 3.6;

// The planted 2-sparse signal behind the demo data.
std::vector<double> demo_true_signal();

// Bundled synthetic five-level sequence whose middle line never reaches the
// lower envelope; exercises breakpoint ties.
LevelSequence demo_levels();

}  // namespace l0lab::fixtures
