#include "l0lab/cardinality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "l0lab/common.hpp"
#include "l0lab/errors.hpp"

namespace l0lab {

namespace {

void check_level_index(const LevelSequence& seq, int k, const char* op) {
    if (k < 0 || k > seq.L) throw InvalidInputError(std::string(op) + ": level index out of range");
}

// A nonzero vector in the null space of C, by row echelon reduction with
// partial pivoting; the first free column gets coefficient 1.
std::optional<std::vector<double>> null_vector(DenseMatrix C) {
    const std::size_t r = C.rows();
    const std::size_t d = C.cols();
    double scale = 0.0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < d; ++j) scale = std::max(scale, std::abs(C(i, j)));
    const double tol = kDefaultRankTol * std::max(scale, 1e-300);

    std::vector<int> pivot_col;
    std::size_t row = 0;
    std::vector<bool> is_pivot(d, false);
    for (std::size_t j = 0; j < d && row < r; ++j) {
        std::size_t piv = row;
        for (std::size_t i = row + 1; i < r; ++i)
            if (std::abs(C(i, j)) > std::abs(C(piv, j))) piv = i;
        if (std::abs(C(piv, j)) <= tol) continue;
        if (piv != row)
            for (std::size_t jj = 0; jj < d; ++jj) std::swap(C(row, jj), C(piv, jj));
        for (std::size_t i = row + 1; i < r; ++i) {
            const double f = C(i, j) / C(row, j);
            if (f == 0.0) continue;
            for (std::size_t jj = j; jj < d; ++jj) C(i, jj) -= f * C(row, jj);
        }
        pivot_col.push_back(static_cast<int>(j));
        is_pivot[j] = true;
        ++row;
    }
    int free_col = -1;
    for (std::size_t j = 0; j < d; ++j) {
        if (!is_pivot[j]) {
            free_col = static_cast<int>(j);
            break;
        }
    }
    if (free_col < 0) return std::nullopt;

    std::vector<double> w(d, 0.0);
    w[free_col] = 1.0;
    for (std::size_t ii = pivot_col.size(); ii-- > 0;) {
        const int c = pivot_col[ii];
        double s = 0.0;
        for (std::size_t j = c + 1; j < d; ++j) s += C(ii, j) * w[j];
        w[c] = -s / C(ii, c);
    }
    return w;
}

// Residual-sign-preserving perturbation certifying an infinite l1 optimal
// set on the support of x: a distinct same-support point with equal l1
// residual.
std::optional<std::vector<double>> l1_second_point(const Instance& inst,
                                                   const AchievingSupport& member) {
    const auto& support = member.support;
    const int d = static_cast<int>(support.size());
    const std::size_t m = inst.A.rows();
    const DenseMatrix B = inst.A.select_columns(support);

    std::vector<double> x_sub(d);
    for (int j = 0; j < d; ++j) x_sub[j] = member.minimizer[support[j]];
    auto res = B.apply(x_sub);
    for (std::size_t i = 0; i < m; ++i) res[i] -= inst.b[i];
    const double res_tol = kTieTol * std::max(1.0, inf_norm(inst.b));

    std::vector<int> nz_rows;
    for (std::size_t i = 0; i < m; ++i)
        if (std::abs(res[i]) > res_tol) nz_rows.push_back(static_cast<int>(i));
    if (static_cast<int>(nz_rows.size()) < static_cast<int>(m) + 2 - d) return std::nullopt;

    // Null-space system: signed sum over sign-fixed rows stays constant,
    // zero-residual rows stay zero.
    DenseMatrix C(m - nz_rows.size() + 1, d);
    for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int i : nz_rows) s += (res[i] > 0 ? 1.0 : -1.0) * B(i, j);
        C(0, j) = s;
    }
    std::size_t row = 1;
    for (std::size_t i = 0; i < m; ++i) {
        if (std::abs(res[i]) > res_tol) continue;
        for (int j = 0; j < d; ++j) C(row, j) = B(i, j);
        ++row;
    }
    const auto w = null_vector(std::move(C));
    if (!w) return std::nullopt;

    const auto bw = B.apply(*w);
    double eps = 1.0;
    for (int i : nz_rows)
        if (std::abs(bw[i]) > 0.0) eps = std::min(eps, 0.5 * std::abs(res[i]) / std::abs(bw[i]));
    for (int j = 0; j < d; ++j)
        if (std::abs((*w)[j]) > 0.0)
            eps = std::min(eps, 0.5 * std::abs(x_sub[j]) / std::abs((*w)[j]));
    if (!(eps > 0.0)) return std::nullopt;

    std::vector<double> y(inst.A.cols(), 0.0);
    double moved = 0.0;
    for (int j = 0; j < d; ++j) {
        y[support[j]] = x_sub[j] + eps * (*w)[j];
        moved = std::max(moved, std::abs(eps * (*w)[j]));
    }
    if (moved <= 0.0) return std::nullopt;

    // Verify: same support cardinality, equal l1 residual.
    if (count_nonzeros(y) != d) return std::nullopt;
    auto ry = inst.A.apply(y);
    for (std::size_t i = 0; i < m; ++i) ry[i] -= inst.b[i];
    if (!near(l1_norm(ry), l1_norm(res), l1_norm(res))) return std::nullopt;
    return y;
}

// Same-support interior perturbation for p=2 plateau levels: a distinct point
// whose residual stays below the phi zero threshold.
std::optional<std::vector<double>> p2_interior_second_point(const Instance& inst,
                                                            const AchievingSupport& member,
                                                            double threshold) {
    if (member.support.empty()) return std::nullopt;
    const int j0 = member.support.front();
    const double margin = threshold - member.residual;
    if (margin <= 0.0) return std::nullopt;
    const double col_norm = l2_norm(inst.A.column(j0));
    double eps = 0.9 * margin / std::max(col_norm, 1e-300);
    eps = std::min(eps, 0.5 * std::abs(member.minimizer[j0]));
    if (!(eps > 0.0)) return std::nullopt;

    std::vector<double> y = member.minimizer;
    y[j0] += eps;
    auto ry = inst.A.apply(y);
    for (std::size_t i = 0; i < ry.size(); ++i) ry[i] -= inst.b[i];
    if (l2_norm(ry) > threshold) return std::nullopt;
    if (count_nonzeros(y) != static_cast<int>(member.support.size())) return std::nullopt;
    return y;
}

}  // namespace

CardinalityReport p2_bound(const LevelSequence& seq, int k) {
    check_level_index(seq, k, "p2_bound");
    CardinalityReport rep;
    rep.level_index = k;
    rep.witnesses = static_cast<int>(seq.levels[k].members.size());
    if (seq.p != 2 || !phi_singleton_level_set(seq.phi, seq.levels[k].rho)) {
        rep.finite = Finiteness::Unknown;
        return rep;
    }
    rep.finite = Finiteness::Finite;
    rep.upper_bound = binomial(seq.n, seq.levels[k].s);
    rep.strict_minimizers = true;
    return rep;
}

bool check_h2(std::span<const double> column) {
    const int m = static_cast<int>(column.size());
    if (m == 0) throw InvalidInputError("check_h2: empty column");
    if (m > 25)
        throw ResourceLimitError("check_h2: " + std::to_string(m) +
                                 " rows would need 2^" + std::to_string(m) + " signed sums");
    // Sign symmetry: fixing the first sign covers both z and -z.
    const std::uint64_t half = 1ULL << (m - 1);
    for (std::uint64_t bits = 0; bits < half; ++bits) {
        double s = column[0];
        for (int i = 1; i < m; ++i) s += (bits >> (i - 1)) & 1ULL ? -column[i] : column[i];
        if (std::abs(s) <= kSignedSumTol) return false;
    }
    return true;
}

CardinalityReport p1_report(const LevelSequence& seq, int k) {
    check_level_index(seq, k, "p1_report");
    if (seq.p != 1) throw PreconditionError("p1_report: level sequence was not built with p = 1");
    CardinalityReport rep;
    rep.level_index = k;
    rep.witnesses = static_cast<int>(seq.levels[k].members.size());
    if (k == seq.L) {
        rep.finite = Finiteness::Finite;
        rep.upper_bound = 1;
        rep.strict_minimizers = true;
        return rep;
    }
    if (!seq.instance) {
        rep.finite = Finiteness::Unknown;
        return rep;
    }
    const Instance& inst = *seq.instance;
    const int s_k = seq.levels[k].s;
    const int m = static_cast<int>(inst.A.rows());

    if (k == seq.L - 1 && s_k == 1) {
        bool all_h2 = true;
        try {
            for (std::size_t j = 0; j < inst.A.cols(); ++j) {
                const bool ok = check_h2(inst.A.column(j));
                rep.h2_status.push_back(ok);
                all_h2 = all_h2 && ok;
            }
        } catch (const ResourceLimitError&) {
            rep.h2_status.clear();
            rep.finite = Finiteness::Unknown;
            return rep;
        }
        if (all_h2 && phi_singleton_level_set(seq.phi, seq.levels[k].rho)) {
            rep.finite = Finiteness::Finite;
            rep.upper_bound = static_cast<long long>(seq.n) << m;
        } else {
            rep.finite = Finiteness::Unknown;
        }
        return rep;
    }

    if (s_k >= 2) {
        const double res_tol = kTieTol * std::max(1.0, inf_norm(inst.b));
        for (const AchievingSupport& member : seq.levels[k].members) {
            auto r = inst.A.apply(member.minimizer);
            int nz = 0;
            for (std::size_t i = 0; i < r.size(); ++i)
                if (std::abs(r[i] - inst.b[i]) > res_tol) ++nz;
            if (nz < m + 2 - s_k) continue;
            if (auto y = l1_second_point(inst, member)) {
                rep.finite = Finiteness::Infinite;
                rep.second_point = std::make_pair(member.minimizer, std::move(*y));
                return rep;
            }
        }
    }
    rep.finite = Finiteness::Unknown;
    return rep;
}

StrictnessP2 strictness_p2(const LevelSequence& seq_identity, double sigma) {
    if (seq_identity.p != 2)
        throw PreconditionError("strictness_p2: level sequence was not built with p = 2");
    if (!(seq_identity.phi.variant == PhiVariant::Identity ||
          (seq_identity.phi.variant == PhiVariant::Power && seq_identity.phi.p == 1)))
        throw PreconditionError("strictness_p2: requires an identity-phi level sequence");
    const double tol = seq_identity.rho_tol();
    const std::vector<double> rho = seq_identity.rho();
    if (sigma < rho.front() - tol)
        throw InfeasibleError("strictness_p2: sigma below the best achievable residual " +
                                  format_double(rho.front()),
                              rho.front());
    StrictnessP2 out;
    if (sigma >= rho.back() - tol) {
        // Zero vector is the unique optimal solution.
        out.sigma_on_grid = std::abs(sigma - rho.back()) <= tol;
        out.all_strict = true;
        out.finite = true;
        out.residuals_equal_sigma = out.sigma_on_grid;
        return out;
    }
    int k = -1;
    for (int i = 0; i < seq_identity.L; ++i) {
        if (std::abs(sigma - rho[i]) <= tol) k = i;
    }
    out.sigma_on_grid = k >= 0;
    out.all_strict = out.sigma_on_grid;
    out.finite = out.sigma_on_grid;
    if (k >= 0) {
        out.residuals_equal_sigma = true;
        for (const AchievingSupport& member : seq_identity.levels[k].members)
            out.residuals_equal_sigma =
                out.residuals_equal_sigma && std::abs(member.residual - sigma) <= tol;
    }
    return out;
}

CardinalityReport penalty_cardinality(const LevelSequence& seq, const BreakpointSequence& bp,
                                      double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw InvalidInputError("penalty_cardinality: lambda must be positive");
    const std::vector<int> active = active_levels(seq, bp, lambda);
    CardinalityReport rep;
    rep.level_index = active.front();
    long long bound = 0;
    bool all_finite = true;
    bool all_bounded = true;
    bool any_unknown = false;
    for (int lvl : active) {
        rep.witnesses += static_cast<int>(seq.levels[lvl].members.size());
        CardinalityReport part;
        if (seq.p == 1) {
            part = p1_report(seq, lvl);
        } else if (seq.p == 2) {
            if (phi_singleton_level_set(seq.phi, seq.levels[lvl].rho)) {
                part.finite = Finiteness::Finite;
                part.upper_bound = binomial(seq.n, seq.levels[lvl].s);
            } else if (seq.instance) {
                // Plateau at rho = 0: a member strictly inside the feasible
                // ball yields a same-support continuum.
                const double zt = phi_properties(seq.phi).zero_threshold;
                part.finite = Finiteness::Finite;
                for (const AchievingSupport& member : seq.levels[lvl].members) {
                    if (member.residual < zt - kTieTol * std::max(1.0, zt)) {
                        if (auto y = p2_interior_second_point(*seq.instance, member, zt)) {
                            part.finite = Finiteness::Infinite;
                            part.second_point = std::make_pair(member.minimizer, std::move(*y));
                            break;
                        }
                        part.finite = Finiteness::Unknown;
                    }
                }
                part.upper_bound.reset();
            } else {
                part.finite = Finiteness::Unknown;
            }
        } else {
            part.finite = Finiteness::Unknown;
        }
        if (part.finite == Finiteness::Infinite) {
            rep.finite = Finiteness::Infinite;
            rep.level_index = lvl;
            rep.second_point = std::move(part.second_point);
            return rep;
        }
        if (part.finite == Finiteness::Unknown) any_unknown = true;
        all_finite = all_finite && part.finite == Finiteness::Finite;
        if (part.upper_bound) {
            bound += *part.upper_bound;
        } else {
            all_bounded = false;
        }
    }
    if (any_unknown || !all_finite) {
        rep.finite = Finiteness::Unknown;
        return rep;
    }
    rep.finite = Finiteness::Finite;
    if (all_bounded) rep.upper_bound = bound;
    rep.strict_minimizers =
        seq.p == 2 || (active.size() == 1 && active.front() == seq.L);
    return rep;
}

}  // namespace l0lab
