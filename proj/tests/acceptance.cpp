// Acceptance runner: one line per criterion, nonzero exit if any fails.
// Tolerances are pinned here and do not follow --tol.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "rsvel/rsvel.hpp"

using namespace rsvel;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun cli(const std::string& args) {
    const std::string cmd = std::string("env -u RS_VELOCITY_C ") + RSVEL_CLI_PATH + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

Outcome inverse_pair() {
    const LightSpeed c{};
    Sampler s(kSeed, 101);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double a = s.symmetric(15.0);
        const double back = to_unbounded(to_bounded(a, c), c).value();
        worst = std::max(worst, std::fabs(back - a) / std::max(1.0, std::fabs(a)));
    }
    return {worst <= 1e-12, "max scaled residual " + sci(worst) + " <= 1e-12"};
}

Outcome homomorphism() {
    const LightSpeed c{};
    Sampler s(kSeed, 102);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double a = s.symmetric(7.0);
        const double b = s.symmetric(7.0);
        const double lhs = to_bounded(a - b, c).value();
        const double rhs = einstein_relative(to_bounded(a, c), to_bounded(b, c), c).value();
        worst = std::max(worst, std::fabs(lhs - rhs));
    }
    return {worst <= 1e-12, "max residual " + sci(worst) + " <= 1e-12 c"};
}

Outcome dual_homomorphism() {
    const LightSpeed c{};
    const double edge = 1.0 - 1e-6;
    Sampler s(kSeed, 103);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const auto u = BoundedVelocity::from_value(s.symmetric(edge), c);
        const auto v = BoundedVelocity::from_value(s.symmetric(edge), c);
        const double au = to_unbounded(u, c).value();
        const double av = to_unbounded(v, c).value();
        const double lhs = to_unbounded(einstein_relative(u, v, c), c).value();
        const double scale = std::max({1.0, std::fabs(au), std::fabs(av)});
        worst = std::max(worst, std::fabs(lhs - (au - av)) / scale);
    }
    return {worst <= 1e-11, "max scaled residual " + sci(worst) + " <= 1e-11"};
}

Outcome collapse() {
    const LightSpeed c{};
    Sampler s(kSeed, 104);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double t = s.log_uniform(1e-3, 1e3);
        const double x = s.symmetric(0.99) * t;
        const auto obs = ObservationRecord::make(x, t, t);
        const double want = x / t;
        worst = std::max({worst, ulp_distance(def2_velocity(obs, c).value(), want),
                          ulp_distance(def3_velocity(obs, c).value(), want)});
    }
    return {worst <= 2.0, "max distance " + sci(worst) + " ulp <= 2"};
}

Outcome limit_consistency() {
    const LightSpeed c{};
    Sampler s(kSeed, 105);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double t = s.log_uniform(1e-3, 1e3);
        const double x = s.symmetric(0.999) * t;
        const auto obs = ObservationRecord::make(x, t);
        const double q = x / t;
        const double d2 = std::fabs(def2_limit(obs, c).value() - to_bounded(q, c).value());
        const double d3 =
            std::fabs(def3_limit(obs, c).value() - to_unbounded(BoundedVelocity::from_value(q, c), c).value());
        worst = std::max({worst, d2, d3});
    }
    return {worst <= 1e-12, "max residual " + sci(worst) + " <= 1e-12 c"};
}

Outcome convergence_order() {
    const LightSpeed c{};
    const std::vector<double> grid{1e2, 1e3, 1e4, 1e5};
    const auto obs = ObservationRecord::make(0.5, 1.0);
    const double o2 = convergence_scan(Definition::Def2, obs, c, grid).order_or_throw();
    const double o3 = convergence_scan(Definition::Def3, obs, c, grid).order_or_throw();
    // 50-digit reference slopes over the same grid
    const bool oracle_ok = std::fabs(o2 - 2.0000017090921736) < 1e-4 && std::fabs(o3 - 1.9999983297244575) < 1e-4;
    const bool pass = std::fabs(o2 - 2.0) <= 0.15 && std::fabs(o3 - 2.0) <= 0.15 && oracle_ok;
    return {pass, "def2 " + std::to_string(o2) + ", def3 " + std::to_string(o3) + " within 2 +/- 0.15"};
}

Outcome light_cone() {
    const std::vector<double> eps{1e-2, 1e-4, 1e-6, 1e-8};
    bool pass = true;
    for (double cv : {1.0, LightSpeed::si().value()}) {
        const LightSpeed c{cv};
        const LightConeScan scan = light_cone_divergence_scan(1.0, c, eps);
        pass = pass && scan.def3_increasing && scan.def2_increasing && scan.def2_below_c;
        for (const auto& r : scan.rows) {
            pass = pass && r.def3_limit > 0.5 * cv * std::log(1.0 / r.epsilon);
            pass = pass && (r.def2_limit.value() < cv || r.def2_limit.saturated());
        }
    }
    return {pass, "def3 increasing above (c/2)ln(1/eps), def2 increasing below c"};
}

Outcome determinism_and_exit_codes() {
    const CliRun a = cli("verify --seed 42");
    const CliRun b = cli("verify --seed 42");
    const bool same = a.code == 0 && !a.out.empty() && a.out == b.out;
    const int ok = cli("map to-bounded 0").code;
    const int usage = cli("map sideways 0").code;
    const int domain = cli("map to-unbounded 1.0").code;
    const int verify = cli("verify --seed 42 --tol 1e-30").code;
    const bool codes = ok == 0 && usage == 1 && domain == 2 && verify == 3;
    return {same && codes, std::string("byte-identical ") + (same ? "yes" : "no") + ", exit codes " +
                               std::to_string(ok) + "/" + std::to_string(usage) + "/" + std::to_string(domain) +
                               "/" + std::to_string(verify) + " expected 0/1/2/3"};
}

struct Criterion {
    const char* id;
    const char* name;
    std::function<Outcome()> run;
    bool timed;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"C1", "inverse-pair fidelity", inverse_pair, true},
        {"C2", "homomorphism", homomorphism, true},
        {"C3", "dual homomorphism", dual_homomorphism, true},
        {"C4", "T = t collapse", collapse, false},
        {"C5", "limit consistency", limit_consistency, false},
        {"C6", "convergence order", convergence_order, true},
        {"C7", "light-cone behaviour", light_cone, true},
        {"C8", "determinism and exit codes", determinism_and_exit_codes, false},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.timed && seconds >= 1.0) {
            o.pass = false;
            o.detail += ", runtime over 1 s";
        }
        failures += o.pass ? 0 : 1;
        std::printf("[%s] %s %s: %s (%.3f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), seconds);
    }
    return failures == 0 ? 0 : 1;
}
