#pragma once

// Bounded (Lorentz) and unbounded (Galilean) velocity representations and the
// logarithmic bijection between them:
//
//   a  = (c/2) ln((c + a') / (c - a'))
//   a' = c (exp(2a/c) - 1) / (exp(2a/c) + 1)
//
// A bounded velocity close to c cannot be recovered from its rounded value
// alone: the spacing of doubles just below c is amplified by 1/(c - |v|) in
// the logarithm. Every BoundedVelocity therefore carries its two complements
// c + v and c - v, computed to full relative precision by whichever operation
// produced it, and the inverse map reads them instead of re-deriving them.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rsvel/errors.hpp"

namespace rsvel {

/// Light speed scale. All velocities are interpreted relative to it.
class LightSpeed {
public:
    static constexpr double kSiMetresPerSecond = 299792458.0;

    LightSpeed() = default;

    explicit LightSpeed(double c) : c_(c) {
        if (!std::isfinite(c) || !(c > 0.0)) {
            fail(ErrorKind::InvalidArgument, "light speed must be positive and finite");
        }
    }

    static LightSpeed natural() { return LightSpeed{}; }
    static LightSpeed si() { return LightSpeed{kSiMetresPerSecond}; }

    [[nodiscard]] double value() const noexcept { return c_; }

private:
    double c_ = 1.0;
};

enum class SaturationMode { Clamp, Error };

struct NumericPolicy {
    double rel_tol = 1e-12;
    double abs_tol = 1e-15;  ///< absolute floor; scale with c via for_scale()
    SaturationMode saturation_mode = SaturationMode::Clamp;

    static NumericPolicy for_scale(LightSpeed c, SaturationMode mode = SaturationMode::Clamp,
                                   double rel_tol = 1e-12) {
        NumericPolicy p;
        p.rel_tol = rel_tol;
        p.abs_tol = 1e-15 * c.value();
        p.saturation_mode = mode;
        p.validate();
        return p;
    }

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
            fail(ErrorKind::InvalidArgument, "tolerances must be positive");
        }
    }

    /// residual <= max(rel_tol * scale, abs_tol)
    [[nodiscard]] bool within(double residual, double scale) const noexcept {
        return residual <= std::max(rel_tol * scale, abs_tol);
    }
};

/// Galilean-representation velocity: any finite real.
class UnboundedVelocity {
public:
    UnboundedVelocity() = default;

    explicit UnboundedVelocity(double value) : value_(value) {
        if (!std::isfinite(value)) {
            fail(ErrorKind::NonFinite, "unbounded velocity must be finite");
        }
    }

    [[nodiscard]] double value() const noexcept { return value_; }

    UnboundedVelocity operator-() const noexcept {
        UnboundedVelocity out;
        out.value_ = -value_;
        return out;
    }

private:
    double value_ = 0.0;
};

/// Lorentz-representation velocity, |value| < c.
///
/// c_plus() and c_minus() hold c + value and c - value. For values built from a
/// raw double they are plain sums; for values produced by the maps and laws
/// they are evaluated independently and stay accurate after value() has
/// rounded to the last double below c.
class BoundedVelocity {
public:
    BoundedVelocity() = default;

    /// Checked construction from a measured value. Throws AtLightCone for |v| >= c.
    static BoundedVelocity from_value(double v, LightSpeed c) {
        if (std::isnan(v)) {
            fail(ErrorKind::NonFinite, "bounded velocity is NaN");
        }
        if (!(std::fabs(v) < c.value())) {
            fail(ErrorKind::AtLightCone, "|v| >= c (v = " + std::to_string(v) + ")");
        }
        return unchecked(v, c);
    }

    /// Bypasses the range check. Only useful for exercising the error paths of
    /// operations that receive values from outside the library.
    static BoundedVelocity unchecked(double v, LightSpeed c) noexcept {
        BoundedVelocity out;
        out.value_ = v;
        out.c_plus_ = c.value() + v;
        out.c_minus_ = c.value() - v;
        return out;
    }

    /// Assembles a value together with independently computed complements.
    static BoundedVelocity from_parts(double value, double c_plus, double c_minus,
                                      bool saturated) noexcept {
        BoundedVelocity out;
        out.value_ = value;
        out.c_plus_ = c_plus;
        out.c_minus_ = c_minus;
        out.saturated_ = saturated;
        return out;
    }

    [[nodiscard]] double value() const noexcept { return value_; }
    [[nodiscard]] bool saturated() const noexcept { return saturated_; }
    [[nodiscard]] double c_plus() const noexcept { return c_plus_; }
    [[nodiscard]] double c_minus() const noexcept { return c_minus_; }

    BoundedVelocity operator-() const noexcept {
        return from_parts(-value_, c_minus_, c_plus_, saturated_);
    }

private:
    double value_ = 0.0;
    double c_plus_ = 1.0;
    double c_minus_ = 1.0;
    bool saturated_ = false;
};

namespace detail {

/// Resolves a value that rounded onto |v| >= c. Returns the largest double
/// below c with the sign of v under Clamp; throws Saturation under Error.
inline double saturate(double v, LightSpeed c, SaturationMode mode, bool& saturated) {
    if (std::fabs(v) < c.value()) {
        return v;
    }
    if (mode == SaturationMode::Error) {
        fail(ErrorKind::Saturation, "bounded result rounds onto c");
    }
    saturated = true;
    return std::copysign(std::nextafter(c.value(), 0.0), v);
}

/// Complements must stay strictly positive; clamp underflow to the smallest subnormal.
inline double positive_complement(double gap) noexcept {
    return std::max(gap, std::numeric_limits<double>::denorm_min());
}

}  // namespace detail

/// Unbounded -> bounded: c * tanh(a / c), evaluated through exp(-2|a|/c) so
/// that no intermediate overflows, and mirrored for negative a.
inline BoundedVelocity to_bounded(UnboundedVelocity a, LightSpeed c,
                                  const NumericPolicy& policy = {}) {
    const double cv = c.value();
    const double z = std::fabs(a.value()) / cv;
    const double em = std::expm1(-2.0 * z);  // e - 1
    const double e = std::exp(-2.0 * z);
    const double denom = 1.0 + e;

    const double near_gap = detail::positive_complement(cv * (2.0 * e / denom));  // c - |v|
    const double far_gap = cv * (2.0 / denom);                                    // c + |v|

    // Past |v| = c/2 the gap is the accurate quantity; c - gap rounds once.
    bool saturated = false;
    double magnitude = z <= 0.5493 ? cv * (-em / (2.0 + em)) : cv - near_gap;
    magnitude = detail::saturate(magnitude, c, policy.saturation_mode, saturated);

    if (std::signbit(a.value())) {
        return BoundedVelocity::from_parts(-magnitude, near_gap, far_gap, saturated);
    }
    return BoundedVelocity::from_parts(magnitude, far_gap, near_gap, saturated);
}

inline BoundedVelocity to_bounded(double a, LightSpeed c, const NumericPolicy& policy = {}) {
    return to_bounded(UnboundedVelocity{a}, c, policy);
}

/// Bounded -> unbounded: (c/2) ln((c + v) / (c - v)).
///
/// For |v| <= c/2 this is (c/2)(log1p(v/c) - log1p(-v/c)) on the value itself;
/// beyond that the stored complements are used.
inline UnboundedVelocity to_unbounded(const BoundedVelocity& v, LightSpeed c,
                                      const NumericPolicy& policy = {}) {
    const double cv = c.value();
    const double x = v.value();
    if (std::isnan(x) || std::isnan(v.c_plus()) || std::isnan(v.c_minus())) {
        fail(ErrorKind::NonFinite, "bounded velocity is NaN");
    }
    if (!(std::fabs(x) < cv) || !(v.c_plus() > 0.0) || !(v.c_minus() > 0.0)) {
        fail(ErrorKind::AtLightCone, "velocity at or beyond c diverges in the unbounded representation");
    }
    if (policy.saturation_mode == SaturationMode::Error && v.saturated()) {
        fail(ErrorKind::AtLightCone, "saturated bounded velocity stands for c");
    }

    const double mag = std::fabs(x);
    double result;
    if (mag <= 0.5 * cv) {
        const double y = mag / cv;
        result = 0.5 * cv * (std::log1p(y) - std::log1p(-y));
    } else {
        const double big = std::max(v.c_plus(), v.c_minus());
        const double small = std::min(v.c_plus(), v.c_minus());
        const double ratio = big / small;
        result = std::isfinite(ratio) ? 0.5 * cv * std::log(ratio)
                                      : 0.5 * cv * (std::log(big) - std::log(small));
    }
    return UnboundedVelocity{std::signbit(x) ? -result : result};
}

inline UnboundedVelocity to_unbounded(double v, LightSpeed c, const NumericPolicy& policy = {}) {
    return to_unbounded(BoundedVelocity::from_value(v, c), c, policy);
}

/// |to_unbounded(to_bounded(a)) - a|
inline double round_trip_residual(UnboundedVelocity a, LightSpeed c,
                                  const NumericPolicy& policy = {}) {
    const BoundedVelocity image = to_bounded(a, c, policy);
    return std::fabs(to_unbounded(image, c, NumericPolicy{}).value() - a.value());
}

}  // namespace rsvel
