#include "l0lab/phi.hpp"

#include <cmath>

#include "l0lab/common.hpp"
#include "l0lab/errors.hpp"

namespace l0lab {

namespace {

void validate(const PhiSpec& spec) {
    if (spec.sigma < 0.0 || !std::isfinite(spec.sigma))
        throw InvalidInputError("phi: sigma must be a finite nonnegative real");
    if ((spec.variant == PhiVariant::Power || spec.variant == PhiVariant::ShiftedPower) &&
        spec.p != 1 && spec.p != 2)
        throw InvalidInputError("phi: exponent p must be 1 or 2");
}

}  // namespace

PhiSpec PhiSpec::identity() { return PhiSpec{PhiVariant::Identity, 2, 0.0}; }

PhiSpec PhiSpec::power(int p) {
    PhiSpec s{PhiVariant::Power, p, 0.0};
    validate(s);
    return s;
}

PhiSpec PhiSpec::shifted_power(double sigma, int p) {
    PhiSpec s{PhiVariant::ShiftedPower, p, sigma};
    validate(s);
    return s;
}

PhiSpec PhiSpec::squared_hinge(double sigma) {
    PhiSpec s{PhiVariant::SquaredHinge, 2, sigma};
    validate(s);
    return s;
}

std::string PhiSpec::name() const {
    switch (variant) {
        case PhiVariant::Identity: return "identity";
        case PhiVariant::Power: return "power(" + std::to_string(p) + ")";
        case PhiVariant::ShiftedPower:
            return "shifted_power(sigma=" + std::to_string(sigma) + ", p=" + std::to_string(p) + ")";
        case PhiVariant::SquaredHinge:
            return "squared_hinge(sigma=" + std::to_string(sigma) + ")";
    }
    return "?";
}

double phi_eval(const PhiSpec& spec, double z) {
    validate(spec);
    if (z < 0.0 || !std::isfinite(z)) throw InvalidInputError("phi_eval: z must be a finite nonnegative real");
    switch (spec.variant) {
        case PhiVariant::Identity:
            return z;
        case PhiVariant::Power:
            return spec.p == 1 ? z : 0.5 * z * z;
        case PhiVariant::ShiftedPower: {
            const double zp = spec.p == 1 ? z : z * z;
            const double sp = spec.p == 1 ? spec.sigma : spec.sigma * spec.sigma;
            return std::max(zp - sp, 0.0);
        }
        case PhiVariant::SquaredHinge: {
            const double h = std::max(z - spec.sigma, 0.0);
            return 0.5 * h * h;
        }
    }
    throw InvalidInputError("phi_eval: unknown variant");
}

PhiProperties phi_properties(const PhiSpec& spec) {
    validate(spec);
    PhiProperties props;
    switch (spec.variant) {
        case PhiVariant::Identity:
        case PhiVariant::Power:
            props.strictly_increasing = true;
            props.zero_threshold = 0.0;
            break;
        case PhiVariant::ShiftedPower:
        case PhiVariant::SquaredHinge:
            props.strictly_increasing = spec.sigma == 0.0;
            props.zero_threshold = spec.sigma;
            break;
    }
    return props;
}

bool phi_exact_for(const PhiSpec& spec, double sigma) {
    const PhiProperties props = phi_properties(spec);
    return near(props.zero_threshold, sigma, sigma);
}

bool phi_singleton_level_set(const PhiSpec& spec, double rho) {
    const PhiProperties props = phi_properties(spec);
    if (props.strictly_increasing) return true;
    // Shifted variants with sigma > 0: the level set at rho > 0 is a single
    // point; at rho = 0 it is the whole interval [0, sigma].
    return rho > kTieTol;
}

}  // namespace l0lab
