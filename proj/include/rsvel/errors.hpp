#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rsvel {

/// Typed failure categories. Every error raised by the library carries one.
enum class ErrorKind {
    AtLightCone,            ///< |v| >= c presented to the logarithmic map
    Saturation,             ///< bounded result rounded onto c under SaturationMode::Error
    NonFinite,              ///< infinite or NaN input / intermediate
    DegenerateDenominator,  ///< 1 - uv/c^2 <= 0 in a composition law
    OutsideOperatorDomain,  ///< |x| >= cT in the finite-T bounded operator
    BeyondLightCone,        ///< |s| >= 1 in the finite-T unbounded operator
    DegenerateFit,          ///< convergence errors vanished on too much of the grid
    RepresentationMismatch, ///< a bounded-only law received an unconvertible value
    InvalidArgument,        ///< malformed parameters (grids, tolerances, scales)
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::AtLightCone: return "AtLightCone";
        case ErrorKind::Saturation: return "Saturation";
        case ErrorKind::NonFinite: return "NonFinite";
        case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
        case ErrorKind::OutsideOperatorDomain: return "OutsideOperatorDomain";
        case ErrorKind::BeyondLightCone: return "BeyondLightCone";
        case ErrorKind::DegenerateFit: return "DegenerateFit";
        case ErrorKind::RepresentationMismatch: return "RepresentationMismatch";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

class VelocityError : public std::runtime_error {
public:
    VelocityError(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& detail) {
    throw VelocityError(kind, detail);
}

}  // namespace rsvel
