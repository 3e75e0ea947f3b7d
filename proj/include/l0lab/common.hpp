#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

namespace l0lab {

// Tolerances used across the analyzer. Instances are small integers or short
// decimals, so these separate exact structure from rounding noise.
inline constexpr double kTieTol = 1e-9;        // value-equality ties, scaled
inline constexpr double kDefaultRankTol = 1e-10;
inline constexpr double kZeroEntryTol = 1e-9;  // nonzero counting, scaled
inline constexpr double kSignedSumTol = 1e-12;

// |a - b| <= kTieTol * max(1, |scale|).
inline bool near(double a, double b, double scale) {
    return std::abs(a - b) <= kTieTol * std::max(1.0, std::abs(scale));
}

inline double l2_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline double l1_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
}

inline double lp_norm(std::span<const double> v, int p) {
    return p == 1 ? l1_norm(v) : l2_norm(v);
}

inline double inf_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s = std::max(s, std::abs(x));
    return s;
}

// Number of entries with |x_i| above kZeroEntryTol * max(1, ||x||_inf).
inline int count_nonzeros(std::span<const double> x) {
    const double tol = kZeroEntryTol * std::max(1.0, inf_norm(x));
    int c = 0;
    for (double v : x) {
        if (std::abs(v) > tol) ++c;
    }
    return c;
}

inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// 17 significant digits: enough to round-trip any double exactly.
inline std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Advance a sorted k-subset of {0..n-1} to its lexicographic successor.
// Returns false when c was the last subset.
inline bool next_combination(std::vector<int>& c, int n) {
    const int k = static_cast<int>(c.size());
    for (int i = k - 1; i >= 0; --i) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Sorted index tuple <-> bitmask helpers for supports (n <= 31).
inline std::vector<int> mask_to_indices(std::uint32_t mask) {
    std::vector<int> idx;
    for (int i = 0; mask != 0; ++i, mask >>= 1) {
        if (mask & 1u) idx.push_back(i);
    }
    return idx;
}

inline std::uint32_t indices_to_mask(std::span<const int> idx) {
    std::uint32_t m = 0;
    for (int i : idx) m |= (1u << i);
    return m;
}

}  // namespace l0lab
