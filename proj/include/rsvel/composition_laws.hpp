#pragma once

#include <cmath>

#include "rsvel/errors.hpp"
#include "rsvel/velocity_core.hpp"

namespace rsvel {

/// Galilean relative velocity a - b.
inline UnboundedVelocity galilean_relative(UnboundedVelocity a, UnboundedVelocity b) {
    const double d = a.value() - b.value();
    if (!std::isfinite(d)) {
        fail(ErrorKind::NonFinite, "galilean difference overflows");
    }
    return UnboundedVelocity{d};
}

/// Einstein relative velocity (u - v) / (1 - uv/c^2).
///
/// Both factors are evaluated in whichever form is free of cancellation:
///   u - v       as (c - v) - (c - u) or (c + u) - (c + v) when u and v are
///               both beyond c/2 on the same side,
///   1 - uv/c^2  as ((c-u)(c+v) + (c+u)(c-v)) / 2c^2 when |uv| > c^2/2.
/// Every branch is symmetric under swapping u and v, so
/// einstein_relative(u, v) == -einstein_relative(v, u) bit for bit.
/// The complements of the result are c -/+ d = 2c (c -/+ u)(c +/- v) / (X + Y).
inline BoundedVelocity einstein_relative(const BoundedVelocity& u, const BoundedVelocity& v,
                                         LightSpeed c, const NumericPolicy& policy = {}) {
    const double cv = c.value();
    const double c2 = cv * cv;
    const double uu = u.value();
    const double vv = v.value();

    const double x_term = u.c_plus() * v.c_minus();   // (c + u)(c - v)
    const double y_term = u.c_minus() * v.c_plus();   // (c - u)(c + v)
    const double twice_den = x_term + y_term;         // 2 (c^2 - uv)
    if (!(twice_den > 0.0) || !std::isfinite(twice_den)) {
        fail(ErrorKind::DegenerateDenominator, "1 - uv/c^2 is not positive");
    }

    const double half_c = 0.5 * cv;
    double numerator;
    if (uu >= half_c && vv >= half_c) {
        numerator = v.c_minus() - u.c_minus();
    } else if (uu <= -half_c && vv <= -half_c) {
        numerator = u.c_plus() - v.c_plus();
    } else {
        numerator = uu - vv;
    }

    const double product = uu * vv;
    const double denominator =
        std::fabs(product) <= 0.5 * c2 ? 1.0 - product / c2 : twice_den / (2.0 * c2);
    if (!(denominator > 0.0)) {
        fail(ErrorKind::DegenerateDenominator, "1 - uv/c^2 is not positive");
    }

    double d = numerator / denominator;
    if (!std::isfinite(d)) {
        fail(ErrorKind::NonFinite, "einstein relative velocity is not finite");
    }

    const double scale = 2.0 * cv / twice_den;
    const double c_plus_raw = x_term * scale;
    const double c_minus_raw = y_term * scale;
    // Near c the complement carries the digits; the quotient does not.
    if (d > half_c) {
        d = cv - c_minus_raw;
    } else if (d < -half_c) {
        d = c_plus_raw - cv;
    }
    bool saturated = false;
    d = detail::saturate(d, c, policy.saturation_mode, saturated);
    return BoundedVelocity::from_parts(d, detail::positive_complement(c_plus_raw),
                                       detail::positive_complement(c_minus_raw), saturated);
}

/// Forward Einstein composition (u + v) / (1 + uv/c^2).
inline BoundedVelocity einstein_compose(const BoundedVelocity& u, const BoundedVelocity& v,
                                        LightSpeed c, const NumericPolicy& policy = {}) {
    return einstein_relative(u, -v, c, policy);
}

/// d and d' of one body/observer pair, and how far apart they sit once d' is
/// mapped back to the unbounded representation.
struct CrossCheckReport {
    UnboundedVelocity d_galilean;
    BoundedVelocity d_einstein;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

inline CrossCheckReport cross_representation_check(UnboundedVelocity a, UnboundedVelocity b,
                                                   LightSpeed c, double tol,
                                                   const NumericPolicy& policy = {}) {
    if (!(tol > 0.0)) {
        fail(ErrorKind::InvalidArgument, "tolerance must be positive");
    }
    CrossCheckReport report;
    report.d_galilean = galilean_relative(a, b);
    report.d_einstein = einstein_relative(to_bounded(a, c, policy), to_bounded(b, c, policy), c, policy);
    const double mapped = to_unbounded(report.d_einstein, c).value();
    report.residual = std::fabs(report.d_galilean.value() - mapped);
    report.tolerance = tol * std::max(c.value(), std::fabs(report.d_galilean.value()));
    report.pass = report.residual <= report.tolerance;
    return report;
}

}  // namespace rsvel
