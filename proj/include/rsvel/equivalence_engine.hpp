#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rsvel/composition_laws.hpp"
#include "rsvel/errors.hpp"
#include "rsvel/velocity_core.hpp"
#include "rsvel/velocity_definitions.hpp"

namespace rsvel {

enum class CompositionLaw { GalileanAdditive, EinsteinRelative };

constexpr std::string_view to_string(CompositionLaw law) noexcept {
    return law == CompositionLaw::GalileanAdditive ? "galilean" : "einstein";
}

inline std::optional<CompositionLaw> parse_law(std::string_view s) noexcept {
    if (s == "galilean") return CompositionLaw::GalileanAdditive;
    if (s == "einstein") return CompositionLaw::EinsteinRelative;
    return std::nullopt;
}

/// Which kinematics a definition/law pairing describes.
///
///   Galilean situation:     def1 + galilean,  def2(-limit) + einstein
///   Relativistic situation: def1 + einstein,  def3(-limit) + galilean
///
/// The remaining pairings are computable but carry no label.
enum class Situation { Galilean, Relativistic, Unlabeled };

constexpr std::string_view to_string(Situation s) noexcept {
    switch (s) {
        case Situation::Galilean: return "galilean";
        case Situation::Relativistic: return "relativistic";
        case Situation::Unlabeled: return "unlabeled";
    }
    return "?";
}

constexpr Situation situation_of(Definition def, CompositionLaw law) noexcept {
    const bool additive = law == CompositionLaw::GalileanAdditive;
    switch (def) {
        case Definition::Def1: return additive ? Situation::Galilean : Situation::Relativistic;
        case Definition::Def2:
        case Definition::Def2Limit: return additive ? Situation::Unlabeled : Situation::Galilean;
        case Definition::Def3:
        case Definition::Def3Limit: return additive ? Situation::Relativistic : Situation::Unlabeled;
    }
    return Situation::Unlabeled;
}

/// A body and an observer measured under the same definition, compared under one law.
struct Scenario {
    ObservationRecord body;
    ObservationRecord observer;
    Definition definition = Definition::Def1;
    CompositionLaw law = CompositionLaw::GalileanAdditive;
};

struct EquivalenceReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool certified = false;  ///< inputs lie inside the range the tolerance is certified for
    std::string claim_id;
};

inline constexpr std::string_view kGalileanAsLorentz = "galilean-as-lorentz";
inline constexpr std::string_view kLorentzAsGalilean = "lorentz-as-galilean";

/// Inputs with |a|, |b| up to this many c are certified for galilean_in_lorentz_check.
inline constexpr double kCertifiedUnboundedRange = 7.0;
/// Inputs with |u|, |v| up to this fraction of c are certified for relativistic_in_galilean_check.
inline constexpr double kCertifiedBoundedFraction = 1.0 - 1e-6;

namespace detail {

/// Brings a measurement into the bounded representation for the Einstein law.
/// A Def1 quotient is read directly as a bounded velocity; unbounded values
/// from Def3 are mapped with to_bounded.
inline BoundedVelocity as_bounded(const Measurement& m, Definition def, LightSpeed c,
                                  const NumericPolicy& policy) {
    if (const auto* b = std::get_if<BoundedVelocity>(&m)) {
        return *b;
    }
    const double value = value_of(m);
    if (def == Definition::Def1) {
        return BoundedVelocity::from_value(value, c);
    }
    try {
        return to_bounded(UnboundedVelocity{value}, c, policy);
    } catch (const VelocityError& e) {
        if (e.kind() == ErrorKind::Saturation) {
            fail(ErrorKind::RepresentationMismatch,
                 "unbounded value saturates and cannot enter the Einstein law");
        }
        throw;
    }
}

inline EquivalenceReport finish(double lhs, double rhs, double tolerance, bool certified,
                                std::string_view claim) {
    EquivalenceReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = std::fabs(lhs - rhs);
    r.tolerance = tolerance;
    r.pass = r.residual <= tolerance;
    r.certified = certified;
    r.claim_id = std::string(claim);
    return r;
}

}  // namespace detail

/// Relative velocity of the body seen by the observer. The Galilean law
/// subtracts the measured values; the Einstein law composes their bounded forms.
inline Measurement relative_velocity(const Scenario& s, LightSpeed c,
                                     const NumericPolicy& policy = {}) {
    const Measurement body = evaluate(s.definition, s.body, c, policy);
    const Measurement observer = evaluate(s.definition, s.observer, c, policy);

    if (s.law == CompositionLaw::GalileanAdditive) {
        return galilean_relative(UnboundedVelocity{value_of(body)}, UnboundedVelocity{value_of(observer)});
    }
    return einstein_relative(detail::as_bounded(body, s.definition, c, policy),
                             detail::as_bounded(observer, s.definition, c, policy), c, policy);
}

/// Galilean subtraction carried into the bounded representation reproduces the
/// Einstein law: to_bounded(a - b) against einstein_relative(to_bounded(a), to_bounded(b)).
inline EquivalenceReport galilean_in_lorentz_check(UnboundedVelocity a, UnboundedVelocity b,
                                                   LightSpeed c, double tol,
                                                   const NumericPolicy& policy = {}) {
    const double lhs = to_bounded(galilean_relative(a, b), c, policy).value();
    const double rhs =
        einstein_relative(to_bounded(a, c, policy), to_bounded(b, c, policy), c, policy).value();
    const double range = kCertifiedUnboundedRange * c.value();
    const bool certified = std::fabs(a.value()) <= range && std::fabs(b.value()) <= range;
    return detail::finish(lhs, rhs, tol * c.value(), certified, kGalileanAsLorentz);
}

/// The Einstein law carried into the unbounded representation is plain subtraction:
/// to_unbounded(einstein_relative(u, v)) against to_unbounded(u) - to_unbounded(v).
inline EquivalenceReport relativistic_in_galilean_check(const BoundedVelocity& u,
                                                        const BoundedVelocity& v, LightSpeed c,
                                                        double tol,
                                                        const NumericPolicy& policy = {}) {
    const double lhs = to_unbounded(einstein_relative(u, v, c, policy), c, policy).value();
    const double au = to_unbounded(u, c, policy).value();
    const double av = to_unbounded(v, c, policy).value();
    const double rhs = au - av;
    const double scale = std::max({c.value(), std::fabs(au), std::fabs(av)});
    const double limit = kCertifiedBoundedFraction * c.value();
    const bool certified = std::fabs(u.value()) <= limit && std::fabs(v.value()) <= limit;
    return detail::finish(lhs, rhs, tol * scale, certified, kLorentzAsGalilean);
}

inline constexpr std::string_view kRelativisticSituationClaim = "relativistic:def3-galilean=def1-einstein";
inline constexpr std::string_view kGalileanSituationClaim = "galilean:def2-einstein=def1-galilean";

/// Both labelled situations, each computed along its two routes.
///
///   relativistic: relative(Def3Limit, galilean) == to_unbounded(relative(Def1, einstein))
///   galilean:     relative(Def2Limit, einstein) == to_bounded(relative(Def1, galilean))
///
/// Requires |x| < ct for both observations.
inline std::vector<EquivalenceReport> situation_consistency(const ObservationRecord& body,
                                                            const ObservationRecord& observer,
                                                            LightSpeed c, double tol,
                                                            const NumericPolicy& policy = {}) {
    auto run = [&](Definition def, CompositionLaw law) {
        return relative_velocity(Scenario{body, observer, def, law}, c, policy);
    };
    std::vector<EquivalenceReport> out;

    const double rel_lhs = value_of(run(Definition::Def3Limit, CompositionLaw::GalileanAdditive));
    const auto def1_einstein = std::get<BoundedVelocity>(run(Definition::Def1, CompositionLaw::EinsteinRelative));
    const double rel_rhs = to_unbounded(def1_einstein, c, policy).value();
    const double rel_scale = std::max({c.value(), std::fabs(def3_limit(body, c, policy).value()),
                                       std::fabs(def3_limit(observer, c, policy).value())});
    out.push_back(detail::finish(rel_lhs, rel_rhs, tol * rel_scale, true, kRelativisticSituationClaim));

    const double gal_lhs = value_of(run(Definition::Def2Limit, CompositionLaw::EinsteinRelative));
    const double def1_galilean = value_of(run(Definition::Def1, CompositionLaw::GalileanAdditive));
    const double gal_rhs = to_bounded(UnboundedVelocity{def1_galilean}, c, policy).value();
    out.push_back(detail::finish(gal_lhs, gal_rhs, tol * c.value(), true, kGalileanSituationClaim));
    return out;
}

// ─── Approach to the light cone ──────────────────────────────────────────────

struct LightConeRow {
    double epsilon = 0.0;
    double x = 0.0;               ///< ct (1 - epsilon)
    BoundedVelocity def2_limit;   ///< c tanh(x/ct) at x -> ct
    double def3_limit = 0.0;      ///< diverges like (c/2) ln(2/epsilon)
    double far_x = 0.0;           ///< ct / epsilon, the x/ct -> infinity regime
    BoundedVelocity def2_far;     ///< c tanh(x/ct) at far_x, tends to c
};

struct LightConeScan {
    std::vector<LightConeRow> rows;
    bool def3_increasing = true;
    bool def2_increasing = true;
    bool def2_below_c = true;     ///< no row reaches c without the saturation flag
};

/// Walks x = ct(1 - epsilon) toward the light cone over a descending list of epsilons.
inline LightConeScan light_cone_divergence_scan(double t, LightSpeed c,
                                                std::span<const double> epsilons,
                                                const NumericPolicy& policy = {}) {
    if (!std::isfinite(t) || !(t > 0.0)) {
        fail(ErrorKind::InvalidArgument, "t must be positive and finite");
    }
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        const double eps = epsilons[i];
        if (!(eps > 0.0 && eps < 1.0)) {
            fail(ErrorKind::InvalidArgument, "epsilon must lie in (0, 1)");
        }
        if (i > 0 && !(eps < epsilons[i - 1])) {
            fail(ErrorKind::InvalidArgument, "epsilons must be strictly descending");
        }
    }

    LightConeScan scan;
    const double ct = c.value() * t;
    for (const double eps : epsilons) {
        LightConeRow row;
        row.epsilon = eps;
        row.x = ct * (1.0 - eps);
        const ObservationRecord near = ObservationRecord::make(row.x, t);
        row.def2_limit = def2_limit(near, c, policy);
        row.def3_limit = def3_limit(near, c).value();
        row.far_x = ct / eps;
        // The far regime saturates by construction; it is always probed under Clamp.
        NumericPolicy clamp = policy;
        clamp.saturation_mode = SaturationMode::Clamp;
        row.def2_far = def2_limit(ObservationRecord::make(row.far_x, t), c, clamp);

        if (!scan.rows.empty()) {
            const LightConeRow& prev = scan.rows.back();
            scan.def3_increasing = scan.def3_increasing && row.def3_limit > prev.def3_limit;
            scan.def2_increasing = scan.def2_increasing && row.def2_limit.value() > prev.def2_limit.value();
        }
        const bool below = row.def2_limit.value() < c.value() && row.def2_far.value() < c.value();
        scan.def2_below_c = scan.def2_below_c && below;
        scan.rows.push_back(row);
    }
    return scan;
}

}  // namespace rsvel
