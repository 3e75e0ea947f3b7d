#include "l0lab/fixtures.hpp"

namespace l0lab::fixtures {

Instance demo_instance() {
    // clang-format off
    DenseMatrix A(4, 5, {
        1, 7, 7, 7, 9,
        2, 1, 3, 7, 2,
        3, 3, 3, 9, 3,
        3, 4, 9, 8, 9,
    });
    // clang-format on
    return Instance{std::move(A), {14.43, 7.21, 4.49, 13.02}, 2, 20};
}

std::vector<double> demo_true_signal() { return {0, 1, 1, 0, 0}; }

LevelSequence demo_levels() {
    return levels_from_arrays({4, 3, 2, 1, 0}, {0.0, 0.25, 0.5, 0.5 + 1.0 / 1.5, 1.5});
}

}  // namespace l0lab::fixtures
