// rsvel: command-line front end for the bounded/unbounded velocity library.
//
// Exit codes: 0 success, 1 usage error, 2 domain/numeric error,
// 3 property verification failure.

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rsvel/rsvel.hpp"
#include "rsvel/table_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitVerify = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_real(const std::string& text, const std::string& what) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
        throw UsageError("invalid number for " + what + ": '" + text + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

rsvel::ObservationRecord parse_observation(const std::string& text, const std::string& what) {
    const auto parts = split(text, ',');
    if (parts.size() < 2 || parts.size() > 3) {
        throw UsageError(what + " must be x,t[,T]");
    }
    const double x = parse_real(parts[0], what);
    const double t = parse_real(parts[1], what);
    std::optional<double> T;
    if (parts.size() == 3) T = parse_real(parts[2], what);
    return rsvel::ObservationRecord::make(x, t, T);
}

/// "start:stop:logN" -> N log-spaced points including both ends; otherwise a comma list.
std::vector<double> parse_grid(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() == 1) {
        std::vector<double> out;
        for (const auto& p : split(text, ',')) out.push_back(parse_real(p, "--T-grid"));
        return out;
    }
    if (parts.size() != 3 || parts[2].rfind("log", 0) != 0) {
        throw UsageError("grid must be start:stop:logN or a comma-separated list");
    }
    const double start = parse_real(parts[0], "--T-grid");
    const double stop = parse_real(parts[1], "--T-grid");
    const double n = parse_real(parts[2].substr(3), "--T-grid");
    if (!(start > 0.0) || !(stop > start) || !(n >= 2.0) || n != std::floor(n) || n > 1e6) {
        throw UsageError("grid needs 0 < start < stop and an integer N >= 2");
    }
    const auto count = static_cast<std::size_t>(n);
    const double lo = std::log10(start);
    const double step = (std::log10(stop) - lo) / static_cast<double>(count - 1);
    std::vector<double> grid;
    grid.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        grid.push_back(i == 0 ? start
                       : i + 1 == count ? stop
                                        : std::pow(10.0, lo + step * static_cast<double>(i)));
    }
    return grid;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    for (const auto& p : split(text, ',')) out.push_back(parse_real(p, what));
    return out;
}

rsvel::LightSpeed parse_light_speed(const std::string& text) {
    if (text == "si" || text == "SI") return rsvel::LightSpeed::si();
    const double c = parse_real(text, "--c");
    if (!std::isfinite(c) || !(c > 0.0)) throw UsageError("--c must be positive and finite");
    return rsvel::LightSpeed{c};
}

struct Options {
    std::string c = "1";
    double tol = 1e-12;
    std::string format;
    std::uint64_t seed = 42;
    std::string saturation = "clamp";

    std::string map_direction;
    std::string map_value;

    std::string rel_definition;
    std::string rel_law;
    std::string body;
    std::string observer;

    std::string scan_kind;
    std::string scan_def = "def2";
    std::string scan_x = "0.5";
    std::string scan_t = "1";
    std::string T_grid = "1e2:1e5:log4";
    std::string eps = "1e-2,1e-4,1e-6,1e-8";
};

struct Resolved {
    rsvel::LightSpeed c;
    rsvel::NumericPolicy policy;
    rsvel::ConfigEcho echo;
    std::optional<rsvel::OutputFormat> format;
};

Resolved resolve(const Options& o) {
    Resolved r;
    r.c = parse_light_speed(o.c);
    if (!(o.tol > 0.0)) throw UsageError("--tol must be positive");
    rsvel::SaturationMode mode;
    if (o.saturation == "clamp") {
        mode = rsvel::SaturationMode::Clamp;
    } else if (o.saturation == "error") {
        mode = rsvel::SaturationMode::Error;
    } else {
        throw UsageError("--saturation must be clamp or error");
    }
    r.policy = rsvel::NumericPolicy::for_scale(r.c, mode, o.tol);
    r.echo = {r.c.value(), o.tol, o.seed, mode};
    if (!o.format.empty()) {
        r.format = rsvel::parse_format(o.format);
        if (!r.format) throw UsageError("--format must be csv, json or plain");
    }
    return r;
}

int cmd_map(const Options& o, const Resolved& r) {
    const double value = parse_real(o.map_value, "value");
    const auto fmt = r.format.value_or(rsvel::OutputFormat::Plain);
    if (o.map_direction == "to-bounded") {
        const auto v = rsvel::to_bounded(rsvel::UnboundedVelocity{value}, r.c, r.policy);
        rsvel::write_scalar(std::cout, fmt, r.echo, v.value(), std::nullopt, v.saturated());
    } else if (o.map_direction == "to-unbounded") {
        const auto v = rsvel::BoundedVelocity::from_value(value, r.c);
        rsvel::write_scalar(std::cout, fmt, r.echo, rsvel::to_unbounded(v, r.c, r.policy).value());
    } else {
        throw UsageError("direction must be to-bounded or to-unbounded");
    }
    return kExitOk;
}

int cmd_relative(const Options& o, const Resolved& r) {
    const auto def = rsvel::parse_definition(o.rel_definition);
    if (!def) throw UsageError("unknown definition '" + o.rel_definition + "'");
    const auto law = rsvel::parse_law(o.rel_law);
    if (!law) throw UsageError("unknown law '" + o.rel_law + "'");
    const rsvel::Scenario scenario{parse_observation(o.body, "--body"),
                                   parse_observation(o.observer, "--observer"), *def, *law};
    const rsvel::Measurement m = rsvel::relative_velocity(scenario, r.c, r.policy);
    rsvel::write_scalar(std::cout, r.format.value_or(rsvel::OutputFormat::Plain), r.echo,
                        rsvel::value_of(m), rsvel::representation_of(m));
    return kExitOk;
}

int cmd_scan(const Options& o, const Resolved& r) {
    const auto fmt = r.format.value_or(rsvel::OutputFormat::Csv);
    const double t = parse_real(o.scan_t, "--t");
    if (o.scan_kind == "convergence") {
        const auto def = rsvel::parse_definition(o.scan_def);
        if (!def || (*def != rsvel::Definition::Def2 && *def != rsvel::Definition::Def3)) {
            throw UsageError("--def must be def2 or def3");
        }
        const double x = parse_real(o.scan_x, "--x");
        const std::vector<double> grid = parse_grid(o.T_grid);
        const auto obs = rsvel::ObservationRecord::make(x, t);
        const rsvel::ConvergenceScan scan = rsvel::convergence_scan(*def, obs, r.c, grid, r.policy);
        rsvel::write_convergence(std::cout, fmt, r.echo, scan);
        (void)scan.order_or_throw();
    } else if (o.scan_kind == "light-cone") {
        const std::vector<double> eps = parse_list(o.eps, "--eps");
        const rsvel::LightConeScan scan = rsvel::light_cone_divergence_scan(t, r.c, eps, r.policy);
        rsvel::write_light_cone(std::cout, fmt, r.echo, scan);
    } else {
        throw UsageError("scan kind must be convergence or light-cone");
    }
    return kExitOk;
}

int cmd_verify(const Options&, const Resolved& r) {
    rsvel::SuiteConfig cfg;
    cfg.c = r.c;
    cfg.rel_tol = r.echo.tol;
    cfg.seed = r.echo.seed;
    cfg.saturation = r.echo.saturation;
    const auto results = rsvel::run_property_suite(cfg);
    rsvel::write_verify(std::cout, r.format.value_or(rsvel::OutputFormat::Plain), r.echo, results);
    return rsvel::all_pass(results) ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounded (Lorentz) and unbounded (Galilean) velocity representations"};
    app.fallthrough();
    app.require_subcommand(1);

    Options o;
    app.add_option("--c", o.c, "light speed: positive number or 'si' (299792458)")
        ->envname("RS_VELOCITY_C");
    app.add_option("--tol", o.tol, "relative tolerance");
    app.add_option("--format", o.format, "csv | json | plain");
    app.add_option("--seed", o.seed, "seed for the verification samples");
    app.add_option("--saturation", o.saturation, "clamp | error");

    auto* map = app.add_subcommand("map", "map a velocity between representations");
    map->add_option("direction", o.map_direction, "to-bounded | to-unbounded")->required();
    map->add_option("value", o.map_value)->required();

    auto* rel = app.add_subcommand("relative", "relative velocity of a body seen by an observer");
    rel->add_option("definition", o.rel_definition, "def1 | def2 | def2-limit | def3 | def3-limit")
        ->required();
    rel->add_option("law", o.rel_law, "galilean | einstein")->required();
    rel->add_option("--body", o.body, "x,t[,T]")->required();
    rel->add_option("--observer", o.observer, "x,t[,T]")->required();

    auto* scan = app.add_subcommand("scan", "tabulate convergence or light-cone behaviour");
    scan->add_option("kind", o.scan_kind, "convergence | light-cone")->required();
    scan->add_option("--def", o.scan_def, "def2 | def3");
    scan->add_option("--x", o.scan_x);
    scan->add_option("--t", o.scan_t);
    scan->add_option("--T-grid", o.T_grid, "start:stop:logN");
    scan->add_option("--eps", o.eps, "descending epsilons in (0,1)");

    auto* verify = app.add_subcommand("verify", "run the seeded property suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        const Resolved r = resolve(o);
        if (map->parsed()) return cmd_map(o, r);
        if (rel->parsed()) return cmd_relative(o, r);
        if (scan->parsed()) return cmd_scan(o, r);
        if (verify->parsed()) return cmd_verify(o, r);
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const rsvel::VelocityError& e) {
        std::cout.flush();
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == rsvel::ErrorKind::InvalidArgument ? kExitUsage : kExitDomain;
    }
}
