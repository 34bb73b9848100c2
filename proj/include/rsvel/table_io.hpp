#pragma once

// CSV / JSON / plain-text rendering of scalars and scan tables. Numbers are
// written in their shortest round-trip form, independent of the locale.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rsvel/equivalence_engine.hpp"
#include "rsvel/property_suite.hpp"
#include "rsvel/velocity_definitions.hpp"

namespace rsvel {

enum class OutputFormat { Csv, Json, Plain };

constexpr std::string_view to_string(OutputFormat f) noexcept {
    switch (f) {
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Json: return "json";
        case OutputFormat::Plain: return "plain";
    }
    return "?";
}

inline std::optional<OutputFormat> parse_format(std::string_view s) noexcept {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    if (s == "plain") return OutputFormat::Plain;
    return std::nullopt;
}

inline std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// Non-finite values become null; everything else is a JSON number.
inline nlohmann::json json_real(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

/// Echoed verbatim into every JSON document under "config".
struct ConfigEcho {
    double c = 1.0;
    double tol = 1e-12;
    std::uint64_t seed = 42;
    SaturationMode saturation = SaturationMode::Clamp;

    [[nodiscard]] nlohmann::json to_json() const {
        return {{"c", c},
                {"tol", tol},
                {"seed", seed},
                {"saturation", saturation == SaturationMode::Clamp ? "clamp" : "error"}};
    }
};

inline void write_scalar(std::ostream& os, OutputFormat fmt, const ConfigEcho& config, double value,
                         std::optional<Representation> rep = std::nullopt,
                         std::optional<bool> saturated = std::nullopt) {
    switch (fmt) {
        case OutputFormat::Plain:
            os << format_real(value);
            if (rep) os << ' ' << to_string(*rep);
            os << '\n';
            break;
        case OutputFormat::Csv:
            os << "value";
            if (rep) os << ",representation";
            if (saturated) os << ",saturated";
            os << "\r\n" << format_real(value);
            if (rep) os << ',' << to_string(*rep);
            if (saturated) os << ',' << (*saturated ? "true" : "false");
            os << "\r\n";
            break;
        case OutputFormat::Json: {
            nlohmann::json doc{{"config", config.to_json()}, {"value", json_real(value)}};
            if (rep) doc["representation"] = std::string(to_string(*rep));
            if (saturated) doc["saturated"] = *saturated;
            os << doc.dump() << '\n';
            break;
        }
    }
}

inline void write_convergence(std::ostream& os, OutputFormat fmt, const ConfigEcho& config,
                              const ConvergenceScan& scan) {
    switch (fmt) {
        case OutputFormat::Csv:
            os << "T,value,abs_error\r\n";
            for (const auto& r : scan.rows) {
                os << format_real(r.T) << ',' << format_real(r.value) << ','
                   << format_real(r.abs_error_vs_limit) << "\r\n";
            }
            if (scan.order) os << "# fitted_order=" << format_real(*scan.order) << "\r\n";
            break;
        case OutputFormat::Plain:
            os << "T value abs_error\n";
            for (const auto& r : scan.rows) {
                os << format_real(r.T) << ' ' << format_real(r.value) << ' '
                   << format_real(r.abs_error_vs_limit) << '\n';
            }
            if (scan.order) os << "fitted_order " << format_real(*scan.order) << '\n';
            break;
        case OutputFormat::Json: {
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& r : scan.rows) {
                rows.push_back({{"T", json_real(r.T)},
                                {"value", json_real(r.value)},
                                {"abs_error", json_real(r.abs_error_vs_limit)}});
            }
            nlohmann::json doc{{"config", config.to_json()},
                               {"rows", rows},
                               {"limit", json_real(scan.limit)},
                               {"order", scan.order ? json_real(*scan.order) : nlohmann::json(nullptr)}};
            os << doc.dump() << '\n';
            break;
        }
    }
}

inline void write_light_cone(std::ostream& os, OutputFormat fmt, const ConfigEcho& config,
                             const LightConeScan& scan) {
    switch (fmt) {
        case OutputFormat::Csv:
            os << "epsilon,x,def2_limit,def3_limit\r\n";
            for (const auto& r : scan.rows) {
                os << format_real(r.epsilon) << ',' << format_real(r.x) << ','
                   << format_real(r.def2_limit.value()) << ',' << format_real(r.def3_limit) << "\r\n";
            }
            break;
        case OutputFormat::Plain:
            os << "epsilon x def2_limit def3_limit\n";
            for (const auto& r : scan.rows) {
                os << format_real(r.epsilon) << ' ' << format_real(r.x) << ' '
                   << format_real(r.def2_limit.value()) << ' ' << format_real(r.def3_limit) << '\n';
            }
            break;
        case OutputFormat::Json: {
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& r : scan.rows) {
                rows.push_back({{"epsilon", json_real(r.epsilon)},
                                {"x", json_real(r.x)},
                                {"def2_limit", json_real(r.def2_limit.value())},
                                {"def2_saturated", r.def2_limit.saturated()},
                                {"def3_limit", json_real(r.def3_limit)},
                                {"far_x", json_real(r.far_x)},
                                {"def2_far", json_real(r.def2_far.value())},
                                {"def2_far_saturated", r.def2_far.saturated()}});
            }
            nlohmann::json doc{{"config", config.to_json()},
                               {"rows", rows},
                               {"def3_increasing", scan.def3_increasing},
                               {"def2_increasing", scan.def2_increasing},
                               {"def2_below_c", scan.def2_below_c}};
            os << doc.dump() << '\n';
            break;
        }
    }
}

inline void write_verify(std::ostream& os, OutputFormat fmt, const ConfigEcho& config,
                         std::span<const PropertyResult> results) {
    bool all = !results.empty();
    for (const auto& r : results) all = all && r.pass;

    switch (fmt) {
        case OutputFormat::Csv:
            os << "property,cases,max_residual,pass\r\n";
            for (const auto& r : results) {
                os << r.name << ',' << r.cases << ',' << format_real(r.max_residual) << ','
                   << (r.pass ? "true" : "false") << "\r\n";
            }
            break;
        case OutputFormat::Plain:
            for (const auto& r : results) {
                os << (r.pass ? "PASS " : "FAIL ") << r.name << " cases=" << r.cases
                   << " max_residual=" << format_real(r.max_residual) << '\n';
            }
            os << (all ? "all properties pass" : "property failures") << '\n';
            break;
        case OutputFormat::Json: {
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& r : results) {
                rows.push_back({{"property", r.name},
                                {"cases", r.cases},
                                {"max_residual", json_real(r.max_residual)},
                                {"pass", r.pass}});
            }
            nlohmann::json doc{{"config", config.to_json()}, {"rows", rows}, {"all_pass", all}};
            os << doc.dump() << '\n';
            break;
        }
    }
}

}  // namespace rsvel
