#pragma once

// Three operational definitions of velocity for a displacement x over a time t.
//
//   Def1       x / t
//   Def2       c * ((1+y)^k - (1-y)^k) / ((1+y)^k + (1-y)^k),  y = x/cT, k = T/t
//   Def2Limit  T -> inf of Def2:  c * tanh(x / ct)
//   Def3       c * artanh(k * tanh(x / cT))
//   Def3Limit  T -> inf of Def3:  c * artanh(x / ct)
//
// Def2 is c * tanh(k * artanh(y)). Writing k = 1 + (k - 1) turns it into the
// Einstein composition of x/T with c * tanh((k - 1) artanh(y)), and Def3 into
// x/T plus the rapidity of s (-) tanh(y) with s = k tanh(y). At T = t the
// correction terms vanish identically and both definitions return x/t.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "rsvel/composition_laws.hpp"
#include "rsvel/errors.hpp"
#include "rsvel/velocity_core.hpp"

namespace rsvel {

/// One measured displacement over a duration, with the regularization scale
/// used by the finite-T definitions.
struct ObservationRecord {
    double x = 0.0;
    double t = 1.0;
    double T = 1000.0;

    static constexpr double kDefaultScaleFactor = 1000.0;

    static ObservationRecord make(double x, double t, std::optional<double> T = std::nullopt) {
        ObservationRecord obs{x, t, T.value_or(kDefaultScaleFactor * t)};
        obs.validate();
        return obs;
    }

    void validate() const {
        if (!std::isfinite(x)) {
            fail(ErrorKind::NonFinite, "displacement must be finite");
        }
        if (!std::isfinite(t) || !(t > 0.0)) {
            fail(ErrorKind::InvalidArgument, "duration t must be positive and finite");
        }
        if (!std::isfinite(T) || !(T > 0.0)) {
            fail(ErrorKind::InvalidArgument, "regularization scale T must be positive and finite");
        }
    }
};

enum class Definition { Def1, Def2, Def2Limit, Def3, Def3Limit };

constexpr std::string_view to_string(Definition d) noexcept {
    switch (d) {
        case Definition::Def1: return "def1";
        case Definition::Def2: return "def2";
        case Definition::Def2Limit: return "def2-limit";
        case Definition::Def3: return "def3";
        case Definition::Def3Limit: return "def3-limit";
    }
    return "?";
}

inline std::optional<Definition> parse_definition(std::string_view s) noexcept {
    for (auto d : {Definition::Def1, Definition::Def2, Definition::Def2Limit, Definition::Def3,
                   Definition::Def3Limit}) {
        if (to_string(d) == s) {
            return d;
        }
    }
    return std::nullopt;
}

enum class Representation { Bounded, Unbounded };

constexpr std::string_view to_string(Representation r) noexcept {
    return r == Representation::Bounded ? "bounded" : "unbounded";
}

/// A velocity value tagged with the representation it lives in.
using Measurement = std::variant<UnboundedVelocity, BoundedVelocity>;

inline double value_of(const Measurement& m) noexcept {
    return std::visit([](const auto& v) { return v.value(); }, m);
}

inline Representation representation_of(const Measurement& m) noexcept {
    return std::holds_alternative<BoundedVelocity>(m) ? Representation::Bounded
                                                      : Representation::Unbounded;
}

namespace detail {

inline double scale_excess(const ObservationRecord& obs) {
    const double excess = (obs.T - obs.t) / obs.t;  // T/t - 1
    if (!std::isfinite(excess)) {
        fail(ErrorKind::NonFinite, "T/t overflows");
    }
    return excess;
}

}  // namespace detail

inline UnboundedVelocity def1_velocity(const ObservationRecord& obs) {
    obs.validate();
    const double a = obs.x / obs.t;
    if (!std::isfinite(a)) {
        fail(ErrorKind::NonFinite, "x/t overflows");
    }
    return UnboundedVelocity{a};
}

/// Finite-T bounded definition. Requires |x| < cT.
inline BoundedVelocity def2_velocity(const ObservationRecord& obs, LightSpeed c,
                                     const NumericPolicy& policy = {}) {
    obs.validate();
    const double base = obs.x / obs.T;
    if (!(std::fabs(base) < c.value())) {
        fail(ErrorKind::OutsideOperatorDomain, "|x| >= cT: non-integer power of a non-positive base");
    }
    const BoundedVelocity collapse = BoundedVelocity::from_value(base, c);
    const double excess = detail::scale_excess(obs);

    double correction = excess * to_unbounded(collapse, c).value();
    if (!std::isfinite(correction)) {
        correction = std::copysign(std::numeric_limits<double>::max(), correction);
    }
    return einstein_compose(collapse, to_bounded(UnboundedVelocity{correction}, c, policy), c, policy);
}

/// T -> infinity limit of def2_velocity; identical to to_bounded(x / t).
inline BoundedVelocity def2_limit(const ObservationRecord& obs, LightSpeed c,
                                  const NumericPolicy& policy = {}) {
    return to_bounded(def1_velocity(obs), c, policy);
}

/// Finite-T unbounded definition. Requires |(T/t) tanh(x/cT)| < 1.
inline UnboundedVelocity def3_velocity(const ObservationRecord& obs, LightSpeed c,
                                       const NumericPolicy& policy = {}) {
    obs.validate();
    const double direct = obs.x / obs.T;
    const BoundedVelocity tau = to_bounded(UnboundedVelocity{direct}, c, policy);
    const double excess = detail::scale_excess(obs);

    // s = (T/t) tau, with c -/+ s = (c -/+ tau) -/+ (T/t - 1) tau
    const double s_value = (obs.T / obs.t) * tau.value();
    const double s_minus = tau.c_minus() - excess * tau.value();
    const double s_plus = tau.c_plus() + excess * tau.value();
    if (!(s_minus > 0.0) || !(s_plus > 0.0) || !(std::fabs(s_value) < c.value())) {
        fail(ErrorKind::BeyondLightCone, "|(T/t) tanh(x/cT)| >= 1: logarithm leaves its domain");
    }
    const BoundedVelocity s = BoundedVelocity::from_parts(s_value, s_plus, s_minus, false);

    if (obs.T < obs.t) {
        return to_unbounded(s, c);
    }
    const BoundedVelocity remainder = einstein_relative(s, tau, c);
    return UnboundedVelocity{direct + to_unbounded(remainder, c).value()};
}

/// T -> infinity limit of def3_velocity: (c/2) ln((1 + x/ct) / (1 - x/ct)).
/// Diverges at the light cone; |x| >= ct raises AtLightCone.
inline UnboundedVelocity def3_limit(const ObservationRecord& obs, LightSpeed c,
                                    const NumericPolicy& policy = {}) {
    obs.validate();
    return to_unbounded(BoundedVelocity::from_value(obs.x / obs.t, c), c, policy);
}

inline Measurement evaluate(Definition tag, const ObservationRecord& obs, LightSpeed c,
                            const NumericPolicy& policy = {}) {
    switch (tag) {
        case Definition::Def1: return def1_velocity(obs);
        case Definition::Def2: return def2_velocity(obs, c, policy);
        case Definition::Def2Limit: return def2_limit(obs, c, policy);
        case Definition::Def3: return def3_velocity(obs, c, policy);
        case Definition::Def3Limit: return def3_limit(obs, c, policy);
    }
    fail(ErrorKind::InvalidArgument, "unknown definition tag");
}

// ─── Convergence toward the T -> infinity limits ─────────────────────────────

struct ConvergenceRow {
    double T = 0.0;
    double value = 0.0;
    double abs_error_vs_limit = 0.0;
};

struct ConvergenceScan {
    std::vector<ConvergenceRow> rows;
    double limit = 0.0;
    /// Positive order p in |error| ~ T^-p; empty when the fit is degenerate.
    std::optional<double> order;

    [[nodiscard]] double order_or_throw() const {
        if (!order) {
            fail(ErrorKind::DegenerateFit, "errors vanish on at least half of the grid");
        }
        return *order;
    }
};

/// Least-squares slope of y against x.
inline double least_squares_slope(std::span<const double> xs, std::span<const double> ys) {
    const auto n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return sxy / sxx;
}

/// Evaluates Def2 or Def3 on each T of an ascending grid, records the distance
/// to the corresponding limit and fits the decay order on a log-log scale.
/// The T stored in `obs` is ignored.
inline ConvergenceScan convergence_scan(Definition tag, const ObservationRecord& obs, LightSpeed c,
                                        std::span<const double> T_grid,
                                        const NumericPolicy& policy = {}) {
    if (tag != Definition::Def2 && tag != Definition::Def3) {
        fail(ErrorKind::InvalidArgument, "convergence scan applies to def2 or def3");
    }
    if (T_grid.size() < 4) {
        fail(ErrorKind::InvalidArgument, "T grid needs at least 4 points");
    }
    for (std::size_t i = 0; i < T_grid.size(); ++i) {
        if (!std::isfinite(T_grid[i]) || !(T_grid[i] > 0.0) || (i > 0 && !(T_grid[i] > T_grid[i - 1]))) {
            fail(ErrorKind::InvalidArgument, "T grid must be positive, finite and strictly ascending");
        }
    }
    if (T_grid.back() / T_grid.front() < 1e3 * (1.0 - 1e-12)) {
        fail(ErrorKind::InvalidArgument, "T grid must span at least 3 decades");
    }

    ConvergenceScan scan;
    const bool bounded = tag == Definition::Def2;
    scan.limit = bounded ? def2_limit(obs, c, policy).value() : def3_limit(obs, c, policy).value();

    std::vector<double> log_T;
    std::vector<double> log_err;
    std::size_t zeros = 0;
    for (const double T : T_grid) {
        const ObservationRecord at{obs.x, obs.t, T};
        const double value = bounded ? def2_velocity(at, c, policy).value()
                                     : def3_velocity(at, c, policy).value();
        const double err = std::fabs(value - scan.limit);
        scan.rows.push_back({T, value, err});
        if (err == 0.0) {
            ++zeros;
        } else {
            log_T.push_back(std::log(T));
            log_err.push_back(std::log(err));
        }
    }
    if (2 * zeros < T_grid.size()) {
        scan.order = -least_squares_slope(log_T, log_err);
    }
    return scan;
}

}  // namespace rsvel
