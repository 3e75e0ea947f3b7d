#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "l0lab/common.hpp"

namespace l0lab {

// Small dense row-major matrix of finite reals.
class DenseMatrix {
public:
    DenseMatrix(std::size_t rows, std::size_t cols);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    // Submatrix formed by the given columns, in the given order.
    DenseMatrix select_columns(std::span<const int> idx) const;
    std::vector<double> column(std::size_t j) const;

    std::vector<double> apply(std::span<const double> x) const;            // M x
    std::vector<double> apply_transpose(std::span<const double> y) const;  // M^T y

    DenseMatrix transposed() const;

private:
    std::size_t rows_, cols_;
    std::vector<double> data_;
};

struct LsResult {
    std::vector<double> minimizer;  // minimum-norm least-squares solution
    double residual_norm = 0.0;     // ||M y - v||_2
    int rank_used = 0;
};

struct L1Result {
    std::vector<double> minimizer;
    double residual_l1 = 0.0;
    std::vector<int> zeroed_rows;  // residual rows that vanish at the vertex
};

struct SpectralNormResult {
    double value = 0.0;
    bool converged = true;
};

// Minimum-norm minimizer of ||M y - v||_2 (pseudo-inverse solution), computed
// by column-pivoted Householder QR with rank truncation at kDefaultRankTol.
LsResult least_squares(const DenseMatrix& M, std::span<const double> v,
                       double rank_tol = kDefaultRankTol);

// Global minimizer of ||M y - v||_1 by enumeration of basic solutions: all
// row subsets of size rank(M) with invertible block, best value wins, ties
// broken by lexicographically smallest sorted row subset. Rank-deficient M is
// first restricted to its leftmost maximal independent column subset and the
// minimizer padded with zeros.
L1Result l1_regression(const DenseMatrix& M, std::span<const double> v,
                       double rank_tol = kDefaultRankTol);

// Number of diagonal factors of a column-pivoted QR exceeding
// tol * (largest diagonal factor); 0 for the zero matrix.
int numerical_rank(const DenseMatrix& M, double tol = kDefaultRankTol);

// Largest singular value via power iteration on M^T M, deterministic all-ones
// start, relative tolerance `tol`, capped at 10000 iterations.
SpectralNormResult spectral_norm(const DenseMatrix& M, double tol = 1e-12);

}  // namespace l0lab
