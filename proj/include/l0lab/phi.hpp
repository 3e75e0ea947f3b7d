#pragma once

#include <string>

namespace l0lab {

enum class PhiVariant { Identity, Power, ShiftedPower, SquaredHinge };

// A scalar penalty function from a closed family: continuous, nondecreasing,
// phi(0) = 0. The closed family keeps analytic questions (strict
// monotonicity, zero threshold, level-set cardinality) exactly answerable.
//
//   Identity            phi(z) = z
//   Power(p)            phi(z) = z^p / p,           p in {1,2}
//   ShiftedPower(s,p)   phi(z) = (z^p - s^p)_+,     p in {1,2}, s >= 0
//   SquaredHinge(s)     phi(z) = (z - s)_+^2 / 2,   s >= 0
struct PhiSpec {
    PhiVariant variant = PhiVariant::Identity;
    int p = 2;           // exponent for the power variants
    double sigma = 0.0;  // shift for the shifted variants

    static PhiSpec identity();
    static PhiSpec power(int p);
    static PhiSpec shifted_power(double sigma, int p);
    static PhiSpec squared_hinge(double sigma);

    std::string name() const;
};

double phi_eval(const PhiSpec& spec, double z);

struct PhiProperties {
    bool strictly_increasing = false;
    double zero_threshold = 0.0;  // sup{z : phi(z) = 0}
};

PhiProperties phi_properties(const PhiSpec& spec);

// True iff phi vanishes exactly on [0, sigma] and is positive beyond it.
bool phi_exact_for(const PhiSpec& spec, double sigma);

// True iff the level set {z >= 0 : phi(z) = rho} is a single point.
bool phi_singleton_level_set(const PhiSpec& spec, double rho);

}  // namespace l0lab
