#include "l0lab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "l0lab/errors.hpp"

namespace l0lab {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    if (rows == 0 || cols == 0) throw InvalidInputError("matrix dimensions must be positive");
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw InvalidInputError("matrix dimensions must be positive");
    if (data_.size() != rows * cols) throw InvalidInputError("entry count does not match dimensions");
    for (double v : data_) {
        if (!std::isfinite(v)) throw InvalidInputError("matrix entries must be finite");
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
    return I;
}

DenseMatrix DenseMatrix::select_columns(std::span<const int> idx) const {
    DenseMatrix S(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < idx.size(); ++j) {
            if (idx[j] < 0 || static_cast<std::size_t>(idx[j]) >= cols_)
                throw InvalidInputError("column index out of range");
            S(i, j) = (*this)(i, static_cast<std::size_t>(idx[j]));
        }
    }
    return S;
}

std::vector<double> DenseMatrix::column(std::size_t j) const {
    std::vector<double> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

std::vector<double> DenseMatrix::apply(std::span<const double> x) const {
    if (x.size() != cols_) throw InvalidInputError("matrix-vector dimension mismatch");
    std::vector<double> y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

std::vector<double> DenseMatrix::apply_transpose(std::span<const double> y) const {
    if (y.size() != rows_) throw InvalidInputError("matrix-vector dimension mismatch");
    std::vector<double> x(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) x[j] += (*this)(i, j) * y[i];
    }
    return x;
}

DenseMatrix DenseMatrix::transposed() const {
    DenseMatrix T(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) T(j, i) = (*this)(i, j);
    return T;
}

namespace {

// Column-pivoted Householder QR. R is stored in `work` (upper trapezoid);
// reflections are kept to apply Q^T to right-hand sides.
struct PivotedQr {
    std::size_t m, d;
    DenseMatrix work;                         // R in permuted column order
    std::vector<std::vector<double>> reflectors;  // v_k over rows k..m-1
    std::vector<int> perm;                    // work column j = input column perm[j]
    std::vector<double> diag;                 // |R_kk| magnitudes

    explicit PivotedQr(const DenseMatrix& M)
        : m(M.rows()), d(M.cols()), work(M), perm(M.cols()) {
        std::iota(perm.begin(), perm.end(), 0);
        const std::size_t steps = std::min(m, d);
        for (std::size_t k = 0; k < steps; ++k) {
            // Pivot: bring the column with largest remaining norm to position k.
            std::size_t best = k;
            double best_norm = -1.0;
            for (std::size_t j = k; j < d; ++j) {
                double s = 0.0;
                for (std::size_t i = k; i < m; ++i) s += work(i, j) * work(i, j);
                if (s > best_norm) {
                    best_norm = s;
                    best = j;
                }
            }
            if (best != k) {
                for (std::size_t i = 0; i < m; ++i) std::swap(work(i, k), work(i, best));
                std::swap(perm[k], perm[best]);
            }
            const double normx = std::sqrt(std::max(best_norm, 0.0));
            if (normx == 0.0) {
                diag.push_back(0.0);
                reflectors.emplace_back();  // identity reflection
                continue;
            }
            std::vector<double> v(m - k);
            for (std::size_t i = k; i < m; ++i) v[i - k] = work(i, k);
            const double alpha = v[0] >= 0.0 ? -normx : normx;
            v[0] -= alpha;
            const double vnorm2 = std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
            work(k, k) = alpha;
            for (std::size_t i = k + 1; i < m; ++i) work(i, k) = 0.0;
            if (vnorm2 > 0.0) {
                for (std::size_t j = k + 1; j < d; ++j) {
                    double dot = 0.0;
                    for (std::size_t i = k; i < m; ++i) dot += v[i - k] * work(i, j);
                    const double f = 2.0 * dot / vnorm2;
                    for (std::size_t i = k; i < m; ++i) work(i, j) -= f * v[i - k];
                }
            }
            diag.push_back(std::abs(alpha));
            reflectors.push_back(std::move(v));
        }
    }

    int rank(double tol) const {
        if (diag.empty() || diag[0] == 0.0) return 0;
        int r = 0;
        for (double dv : diag) {
            if (dv > tol * diag[0]) ++r;
        }
        return r;
    }

    // Q^T y, in place.
    void apply_qt(std::vector<double>& y) const {
        for (std::size_t k = 0; k < reflectors.size(); ++k) {
            const auto& v = reflectors[k];
            if (v.empty()) continue;
            const double vnorm2 = std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
            if (vnorm2 == 0.0) continue;
            double dot = 0.0;
            for (std::size_t i = k; i < m; ++i) dot += v[i - k] * y[i];
            const double f = 2.0 * dot / vnorm2;
            for (std::size_t i = k; i < m; ++i) y[i] -= f * v[i - k];
        }
    }
};

// Solve G w = c for symmetric positive definite G, by Cholesky.
std::vector<double> spd_solve(const DenseMatrix& G, std::vector<double> c) {
    const std::size_t n = G.rows();
    DenseMatrix L(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = G(j, j);
        for (std::size_t k = 0; k < j; ++k) s -= L(j, k) * L(j, k);
        if (s <= 0.0) throw AnalysisError("matrix not positive definite in Cholesky solve");
        L(j, j) = std::sqrt(s);
        for (std::size_t i = j + 1; i < n; ++i) {
            double t = G(i, j);
            for (std::size_t k = 0; k < j; ++k) t -= L(i, k) * L(j, k);
            L(i, j) = t / L(j, j);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) c[i] -= L(i, k) * c[k];
        c[i] /= L(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t k = ii + 1; k < n; ++k) c[ii] -= L(k, ii) * c[k];
        c[ii] /= L(ii, ii);
    }
    return c;
}

double residual_norm_of(const DenseMatrix& M, std::span<const double> y,
                        std::span<const double> v) {
    auto My = M.apply(y);
    for (std::size_t i = 0; i < My.size(); ++i) My[i] -= v[i];
    return l2_norm(My);
}

// Solve the square system B y = rhs by Gaussian elimination with partial
// pivoting. Returns false when a pivot falls below tol * max|B|.
bool square_solve(const DenseMatrix& B, std::span<const double> rhs,
                  std::vector<double>& y, double tol) {
    const std::size_t n = B.rows();
    DenseMatrix A(B);
    y.assign(rhs.begin(), rhs.end());
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(A(i, j)));
    if (scale == 0.0) return false;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(A(i, k)) > std::abs(A(piv, k))) piv = i;
        if (std::abs(A(piv, k)) <= tol * scale) return false;
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A(k, j), A(piv, j));
            std::swap(y[k], y[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = A(i, k) / A(k, k);
            if (f == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) A(i, j) -= f * A(k, j);
            y[i] -= f * y[k];
        }
    }
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = ii + 1; j < n; ++j) y[ii] -= A(ii, j) * y[j];
        y[ii] /= A(ii, ii);
    }
    return true;
}

// Lexicographically first maximal independent column subset.
std::vector<int> independent_columns(const DenseMatrix& M, double rank_tol) {
    std::vector<int> cols;
    int current_rank = 0;
    for (std::size_t j = 0; j < M.cols(); ++j) {
        std::vector<int> trial = cols;
        trial.push_back(static_cast<int>(j));
        if (numerical_rank(M.select_columns(trial), rank_tol) > current_rank) {
            cols = std::move(trial);
            ++current_rank;
        }
    }
    return cols;
}

}  // namespace

LsResult least_squares(const DenseMatrix& M, std::span<const double> v, double rank_tol) {
    if (v.size() != M.rows()) throw InvalidInputError("least_squares: dimension mismatch");
    const std::size_t d = M.cols();
    PivotedQr qr(M);
    const int r = qr.rank(rank_tol);

    LsResult out;
    out.rank_used = r;
    out.minimizer.assign(d, 0.0);
    if (r == 0) {
        out.residual_norm = l2_norm(v);
        return out;
    }

    std::vector<double> c(v.begin(), v.end());
    qr.apply_qt(c);

    if (static_cast<std::size_t>(r) == d) {
        // Back-substitution on the square upper triangle.
        std::vector<double> y(d, 0.0);
        for (std::size_t ii = d; ii-- > 0;) {
            double s = c[ii];
            for (std::size_t j = ii + 1; j < d; ++j) s -= qr.work(ii, j) * y[j];
            y[ii] = s / qr.work(ii, ii);
        }
        for (std::size_t j = 0; j < d; ++j) out.minimizer[qr.perm[j]] = y[j];
    } else {
        // Rank-deficient: minimum-norm solution of the truncated system
        // R1 z = c1 with R1 the leading r x d block, z = R1^T (R1 R1^T)^{-1} c1.
        DenseMatrix G(r, r);
        for (int i = 0; i < r; ++i) {
            for (int j = 0; j <= i; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < d; ++k)
                    s += qr.work(i, k) * qr.work(j, k);
                G(i, j) = s;
                G(j, i) = s;
            }
        }
        std::vector<double> c1(c.begin(), c.begin() + r);
        const std::vector<double> w = spd_solve(G, std::move(c1));
        for (std::size_t j = 0; j < d; ++j) {
            double s = 0.0;
            for (int i = 0; i < r; ++i) s += qr.work(i, j) * w[i];
            out.minimizer[qr.perm[j]] = s;
        }
    }
    out.residual_norm = residual_norm_of(M, out.minimizer, v);
    return out;
}

L1Result l1_regression(const DenseMatrix& M, std::span<const double> v, double rank_tol) {
    if (v.size() != M.rows()) throw InvalidInputError("l1_regression: dimension mismatch");
    const std::size_t m = M.rows();
    const std::size_t d = M.cols();
    const int r = numerical_rank(M, rank_tol);

    if (static_cast<std::size_t>(r) < d) {
        // Restrict to a maximal independent column subset, pad with zeros.
        const std::vector<int> cols = independent_columns(M, rank_tol);
        L1Result sub = l1_regression(M.select_columns(cols), v, rank_tol);
        L1Result out;
        out.minimizer.assign(d, 0.0);
        for (std::size_t j = 0; j < cols.size(); ++j)
            out.minimizer[cols[j]] = sub.minimizer[j];
        out.residual_l1 = sub.residual_l1;
        out.zeroed_rows = std::move(sub.zeroed_rows);
        return out;
    }

    // Full column rank: scan all size-d row subsets in lexicographic order.
    double best_obj = std::numeric_limits<double>::infinity();
    std::vector<double> best_y;
    std::vector<int> subset(d);
    std::iota(subset.begin(), subset.end(), 0);
    std::vector<double> y;
    bool found = false;
    do {
        DenseMatrix B(d, d);
        std::vector<double> rhs(d);
        for (std::size_t i = 0; i < d; ++i) {
            rhs[i] = v[subset[i]];
            for (std::size_t j = 0; j < d; ++j) B(i, j) = M(subset[i], j);
        }
        if (!square_solve(B, rhs, y, rank_tol)) continue;
        found = true;
        auto res = M.apply(y);
        double obj = 0.0;
        for (std::size_t i = 0; i < m; ++i) obj += std::abs(res[i] - v[i]);
        if (obj < best_obj - 1e-12 * std::max(1.0, best_obj)) {
            best_obj = obj;
            best_y = y;
        }
    } while (next_combination(subset, static_cast<int>(m)));
    if (!found) throw AnalysisError("l1_regression: no invertible row subset at full column rank");

    L1Result out;
    out.minimizer = std::move(best_y);
    out.residual_l1 = best_obj;
    auto res = M.apply(out.minimizer);
    const double row_tol = kTieTol * std::max(1.0, inf_norm(v));
    for (std::size_t i = 0; i < m; ++i) {
        if (std::abs(res[i] - v[i]) <= row_tol) out.zeroed_rows.push_back(static_cast<int>(i));
    }
    return out;
}

int numerical_rank(const DenseMatrix& M, double tol) {
    if (tol <= 0.0) throw InvalidInputError("numerical_rank: tol must be positive");
    return PivotedQr(M).rank(tol);
}

SpectralNormResult spectral_norm(const DenseMatrix& M, double tol) {
    if (tol <= 0.0) throw InvalidInputError("spectral_norm: tol must be positive");
    const std::size_t d = M.cols();
    std::vector<double> u(d, 1.0 / std::sqrt(static_cast<double>(d)));
    double est = 0.0;
    bool have_est = false;
    std::size_t fallback = 0;
    for (int iter = 0; iter < 10000; ++iter) {
        const auto mu = M.apply(u);
        const double cur = l2_norm(mu);
        if (cur == 0.0) {
            // Start vector in the null space; restart from canonical basis.
            if (fallback >= d) return {0.0, true};
            u.assign(d, 0.0);
            u[fallback++] = 1.0;
            have_est = false;
            continue;
        }
        if (have_est && std::abs(cur - est) <= tol * std::max(cur, 1e-300)) {
            return {cur, true};
        }
        est = cur;
        have_est = true;
        auto w = M.apply_transpose(mu);
        const double wn = l2_norm(w);
        for (std::size_t j = 0; j < d; ++j) u[j] = w[j] / wn;
    }
    return {est, false};
}

}  // namespace l0lab
