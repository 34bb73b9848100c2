#pragma once

// Seeded property suite over the maps, laws and definitions. Each property
// draws its samples from its own mt19937_64 stream, so results depend only on
// the seed and the light speed scale.

#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "rsvel/composition_laws.hpp"
#include "rsvel/equivalence_engine.hpp"
#include "rsvel/velocity_core.hpp"
#include "rsvel/velocity_definitions.hpp"

namespace rsvel {

struct SuiteConfig {
    LightSpeed c;
    double rel_tol = 1e-12;
    std::uint64_t seed = 42;
    SaturationMode saturation = SaturationMode::Clamp;
};

/// max_residual is expressed in the unit the property is judged in: a
/// multiple of its scale for tolerance properties, ulps for the collapse
/// property, and a violation count for ordering / bitwise properties.
struct PropertyResult {
    std::string name;
    std::size_t cases = 0;
    double max_residual = 0.0;
    bool pass = true;
};

/// Uniform doubles from mt19937_64 without going through the
/// implementation-defined std::uniform_real_distribution.
class Sampler {
public:
    Sampler(std::uint64_t seed, std::uint64_t stream) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream)};
        engine_.seed(seq);
    }

    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    double symmetric(double half_width) { return uniform(-half_width, half_width); }
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

private:
    std::mt19937_64 engine_;
};

/// Distance between two finite doubles in units in the last place.
inline double ulp_distance(double a, double b) noexcept {
    auto ordered = [](double d) {
        const auto bits = std::bit_cast<std::int64_t>(d);
        return bits < 0 ? std::numeric_limits<std::int64_t>::min() - bits : bits;
    };
    const std::int64_t ia = ordered(a);
    const std::int64_t ib = ordered(b);
    return static_cast<double>(ia > ib ? ia - ib : ib - ia);
}

namespace detail {

class Tally {
public:
    explicit Tally(std::string name) { result_.name = std::move(name); }

    void record(double residual, double allowed) {
        ++result_.cases;
        result_.max_residual = std::max(result_.max_residual, residual);
        result_.pass = result_.pass && residual <= allowed;
    }

    void count(bool ok) { record(ok ? 0.0 : 1.0, 0.0); }

    PropertyResult finish() {
        if (result_.cases == 0) {
            result_.pass = false;
        }
        return result_;
    }

private:
    PropertyResult result_;
};

}  // namespace detail

inline std::vector<PropertyResult> run_property_suite(const SuiteConfig& cfg) {
    const LightSpeed c = cfg.c;
    const double cv = c.value();
    const double tol = cfg.rel_tol;
    NumericPolicy policy = NumericPolicy::for_scale(c, cfg.saturation, tol);
    NumericPolicy clamp = policy;
    clamp.saturation_mode = SaturationMode::Clamp;

    constexpr std::size_t kLarge = 10000;
    constexpr std::size_t kSmall = 1000;
    std::uint64_t stream = 0;
    auto sampler = [&] { return Sampler(cfg.seed, ++stream); };

    std::vector<PropertyResult> out;

    {
        detail::Tally tally("inverse_pair_unbounded");
        Sampler s = sampler();
        for (std::size_t i = 0; i < kLarge; ++i) {
            const double a = s.symmetric(15.0 * cv);
            const double scale = std::max(cv, std::fabs(a));
            tally.record(round_trip_residual(UnboundedVelocity{a}, c, policy) / scale, tol);
        }
        out.push_back(tally.finish());
    }
    {
        detail::Tally tally("inverse_pair_bounded");
        Sampler s = sampler();
        for (std::size_t i = 0; i < kLarge; ++i) {
            const double v = s.symmetric((1.0 - 1e-9) * cv);
            const double back = to_bounded(to_unbounded(v, c, policy), c, policy).value();
            tally.record(std::fabs(back - v) / cv, tol);
        }
        out.push_back(tally.finish());
    }
    {
        detail::Tally tally("homomorphism");
        Sampler s = sampler();
        for (std::size_t i = 0; i < kLarge; ++i) {
            const UnboundedVelocity a{s.symmetric(kCertifiedUnboundedRange * cv)};
            const UnboundedVelocity b{s.symmetric(kCertifiedUnboundedRange * cv)};
            const EquivalenceReport r = galilean_in_lorentz_check(a, b, c, tol, policy);
            tally.record(r.residual / cv, tol);
        }
        out.push_back(tally.finish());
    }
    {
        detail::Tally tally("dual_homomorphism");
        Sampler s = sampler();
        for (std::size_t i = 0; i < kLarge; ++i) {
            const auto u = BoundedVelocity::from_value(s.symmetric(kCertifiedBoundedFraction * cv), c);
            const auto v = BoundedVelocity::from_value(s.symmetric(kCertifiedBoundedFraction * cv), c);
            const EquivalenceReport r = relativistic_in_galilean_check(u, v, c, tol, policy);
            tally.record(r.residual / (r.tolerance / tol), tol);
        }
        out.push_back(tally.finish());
    }
    {
        detail::Tally tally("t_equals_T_collapse");
        Sampler s = sampler();
        for (std::size_t i = 0; i < kSmall; ++i) {
            const double t = s.log_uniform(0.1, 10.0);
            const double x = s.symmetric(0.99) * cv * t;
            const ObservationRecord obs = ObservationRecord::make(x, t, t);
            const double expected = x / t;
            const double d2 = ulp_distance(def2_velocity(obs, c, policy).value(), expected);
            const double d3 = ulp_distance(def3_velocity(obs, c, policy).value(), expected);
            tally.record(std::max(d2, d3), 2.0);
        }
        out.push_back(tally.finish());
    }
    {
        detail::Tally tally("limit_consistency");
        Sampler s = sampler();
        for (std::size_t i = 0; i < kSmall; ++i) {
            const double t = s.log_uniform(0.1, 10.0);
            const double x = s.symmetric(0.999) * cv * t;
            const ObservationRecord obs = ObservationRecord::make(x, t);
            const double r2 = std::fabs(def2_limit(obs, c, policy).value() -
                                        to_bounded(def1_velocity(obs), c, policy).value());
            const double r3 = std::fabs(def3_limit(obs, c, policy).value() -
                                        to_unbounded(x / t, c, policy).value());
            tally.record(std::max(r2, r3) / cv, tol);
        }
        out.push_back(tally.finish());
    }
    {
        detail::Tally tally("situation_consistency");
        Sampler s = sampler();
        for (std::size_t i = 0; i < kSmall; ++i) {
            const double t_body = s.log_uniform(0.1, 10.0);
            const double t_obs = s.log_uniform(0.1, 10.0);
            const auto body = ObservationRecord::make(s.symmetric(0.999) * cv * t_body, t_body);
            const auto observer = ObservationRecord::make(s.symmetric(0.999) * cv * t_obs, t_obs);
            for (const EquivalenceReport& r : situation_consistency(body, observer, c, tol, policy)) {
                tally.record(r.residual / (r.tolerance / tol), tol);
            }
        }
        out.push_back(tally.finish());
    }
    {
        detail::Tally tally("divergence_monotonicity");
        Sampler s = sampler();
        constexpr std::array<double, 4> eps{1e-2, 1e-4, 1e-6, 1e-8};
        for (std::size_t i = 0; i < kSmall; ++i) {
            const double t = s.log_uniform(0.1, 10.0);
            const LightConeScan scan = light_cone_divergence_scan(t, c, eps, policy);
            bool above_floor = true;
            for (const LightConeRow& row : scan.rows) {
                above_floor = above_floor && row.def3_limit > 0.5 * cv * std::log(1.0 / row.epsilon);
            }
            tally.count(scan.def3_increasing && scan.def2_increasing && scan.def2_below_c && above_floor);
        }
        out.push_back(tally.finish());
    }
    {
        detail::Tally tally("convergence_monotonicity");
        Sampler s = sampler();
        for (std::size_t i = 0; i < kSmall; ++i) {
            const double t = s.log_uniform(0.1, 10.0);
            const double x = s.uniform(0.01, 0.99) * cv * t;
            const ObservationRecord base = ObservationRecord::make(x, t);
            const double limit = def2_limit(base, c, policy).value();
            const double slack = std::nextafter(limit, 2.0 * cv) - limit;
            const double T0 = 10.0 * std::max(t, x / cv);
            double previous = std::numeric_limits<double>::infinity();
            bool ok = true;
            for (int j = 0; j < 8; ++j) {
                const double T = T0 * std::pow(10.0, 0.5 * j);
                const double err = std::fabs(def2_velocity({x, t, T}, c, policy).value() - limit);
                ok = ok && err <= previous + slack;
                previous = err;
            }
            tally.count(ok);
        }
        out.push_back(tally.finish());
    }
    {
        detail::Tally tally("scale_covariance");
        Sampler s = sampler();
        for (std::size_t i = 0; i < kSmall; ++i) {
            const double a = s.symmetric(15.0 * cv);
            const double k = s.log_uniform(0.01, 100.0);
            const double scaled = to_bounded(k * a, LightSpeed{k * cv}, policy).value();
            const double reference = k * to_bounded(a, c, policy).value();
            tally.record(std::fabs(scaled - reference) / (k * cv), tol);
        }
        out.push_back(tally.finish());
    }
    {
        detail::Tally tally("composition_inverse");
        Sampler s = sampler();
        for (std::size_t i = 0; i < kSmall; ++i) {
            const auto u = BoundedVelocity::from_value(s.symmetric(kCertifiedBoundedFraction * cv), c);
            const auto v = BoundedVelocity::from_value(s.symmetric(kCertifiedBoundedFraction * cv), c);
            const double back = einstein_relative(einstein_compose(u, v, c, policy), v, c, policy).value();
            tally.record(std::fabs(back - u.value()) / cv, tol);
        }
        out.push_back(tally.finish());
    }
    {
        detail::Tally tally("antisymmetry");
        Sampler s = sampler();
        for (std::size_t i = 0; i < kSmall; ++i) {
            const auto u = BoundedVelocity::from_value(s.symmetric(1.0) * std::nextafter(cv, 0.0), c);
            const auto v = BoundedVelocity::from_value(s.symmetric(1.0) * std::nextafter(cv, 0.0), c);
            const double forward = einstein_relative(u, v, c, clamp).value();
            const double backward = einstein_relative(v, u, c, clamp).value();
            tally.count(forward == -backward);
        }
        out.push_back(tally.finish());
    }
    {
        detail::Tally tally("odd_symmetry");
        Sampler s = sampler();
        for (std::size_t i = 0; i < kSmall; ++i) {
            const double a = s.symmetric(30.0 * cv);
            const double v = s.symmetric(1.0) * std::nextafter(cv, 0.0);
            const double t = s.log_uniform(0.1, 10.0);
            const double T = t * s.log_uniform(1.0, 1000.0);
            const double x = s.symmetric(0.9) * cv * t;
            const ObservationRecord pos = ObservationRecord::make(x, t, T);
            const ObservationRecord neg = ObservationRecord::make(-x, t, T);
            const bool ok =
                to_bounded(-a, c, clamp).value() == -to_bounded(a, c, clamp).value() &&
                to_unbounded(-v, c).value() == -to_unbounded(v, c).value() &&
                def2_velocity(neg, c, clamp).value() == -def2_velocity(pos, c, clamp).value() &&
                def3_velocity(neg, c, clamp).value() == -def3_velocity(pos, c, clamp).value();
            tally.count(ok);
        }
        out.push_back(tally.finish());
    }
    {
        detail::Tally tally("closure");
        Sampler s = sampler();
        for (std::size_t i = 0; i < kSmall; ++i) {
            // Half the draws crowd the light cone: c (1 - 2^-k) for k up to 60.
            auto draw = [&] {
                const double sign = s.unit() < 0.5 ? -1.0 : 1.0;
                const double mag = s.unit() < 0.5
                                       ? 1.0 - std::ldexp(1.0, -static_cast<int>(1 + s.unit() * 60.0))
                                       : s.unit();
                return BoundedVelocity::from_value(sign * std::min(mag * cv, std::nextafter(cv, 0.0)), c);
            };
            const BoundedVelocity u = draw();
            const BoundedVelocity v = draw();
            const double rel = einstein_relative(u, v, c, clamp).value();
            const double comp = einstein_compose(u, v, c, clamp).value();
            tally.count(std::fabs(rel) < cv && std::fabs(comp) < cv);
        }
        out.push_back(tally.finish());
    }
    return out;
}

inline bool all_pass(const std::vector<PropertyResult>& results) noexcept {
    for (const auto& r : results) {
        if (!r.pass) return false;
    }
    return !results.empty();
}

}  // namespace rsvel
