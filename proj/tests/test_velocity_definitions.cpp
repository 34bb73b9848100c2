#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracle.hpp"
#include "rsvel/property_suite.hpp"
#include "rsvel/velocity_definitions.hpp"

using namespace rsvel;

namespace {

const LightSpeed kC{};

ObservationRecord obs(double x, double t, double T) { return ObservationRecord::make(x, t, T); }

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const VelocityError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected a VelocityError";
    return ErrorKind::InvalidArgument;
}

const std::vector<double> kDecades{1e2, 1e3, 1e4, 1e5};

}  // namespace

TEST(ObservationRecord, Validation) {
    EXPECT_EQ(ObservationRecord::make(1.0, 2.0).T, 2000.0);
    EXPECT_EQ(kind_of([] { ObservationRecord::make(1.0, 0.0); }), ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of([] { ObservationRecord::make(1.0, 1.0, -1.0); }), ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of([] { ObservationRecord::make(INFINITY, 1.0); }), ErrorKind::NonFinite);
}

TEST(Definition, TagsRoundTrip) {
    for (auto d : {Definition::Def1, Definition::Def2, Definition::Def2Limit, Definition::Def3,
                   Definition::Def3Limit}) {
        EXPECT_EQ(parse_definition(to_string(d)), d);
    }
    EXPECT_FALSE(parse_definition("def4"));
}

TEST(Def1, Examples) {
    EXPECT_EQ(def1_velocity(obs(0, 5, 5)).value(), 0.0);
    EXPECT_EQ(def1_velocity(obs(3, 2, 2)).value(), 1.5);
    EXPECT_EQ(def1_velocity(obs(-1, 4, 4)).value(), -0.25);
    EXPECT_EQ(kind_of([] { def1_velocity(obs(1e300, 1e-300, 1)); }), ErrorKind::NonFinite);
}

TEST(Def2, Examples) {
    EXPECT_EQ(def2_velocity(obs(0, 1, 1), kC).value(), 0.0);
    EXPECT_EQ(def2_velocity(obs(0.5, 1, 1), kC).value(), 0.5);
    const double finite = def2_velocity(obs(0.5, 1, 1e6), kC).value();
    EXPECT_LE(std::fabs(finite - def2_limit(obs(0.5, 1, 1e6), kC).value()), 1e-9);
}

TEST(Def2, DomainIsOpenIntervalInX) {
    EXPECT_EQ(kind_of([] { def2_velocity(obs(2.0, 1, 1), kC); }), ErrorKind::OutsideOperatorDomain);
    EXPECT_EQ(kind_of([] { def2_velocity(obs(-10.0, 1, 10), kC); }), ErrorKind::OutsideOperatorDomain);
    EXPECT_NO_THROW(def2_velocity(obs(0.999, 1, 1), kC));
}

TEST(Def2, MatchesPowerFormOracle) {
    struct Case { double x, t, T; };
    const Case cases[] = {{0.5, 1, 1},    {0.5, 1, 3},   {0.5, 1, 1e3},  {-0.3, 2, 0.5},
                          {0.9, 1, 1.01}, {0.02, 1, 0.1}, {0.95, 1, 50}, {1e-8, 1, 7}};
    for (const auto& k : cases) {
        const double got = def2_velocity(obs(k.x, k.t, k.T), kC).value();
        const double want = oracle::to_double(oracle::def2(k.x, k.t, k.T));
        // A handful of roundings separate the two forms; allow four ulps.
        EXPECT_LE(std::fabs(got - want), 9e-16 * std::fabs(want) + 1e-300)
            << k.x << ' ' << k.t << ' ' << k.T;
    }
}

TEST(Def2, BoundedForExtremeExponents) {
    const BoundedVelocity v = def2_velocity(obs(0.9, 1e-6, 1), kC);
    EXPECT_LT(v.value(), 1.0);
    EXPECT_TRUE(v.saturated());
    EXPECT_GT(def2_velocity(obs(-0.9, 1e-6, 1), kC).value(), -1.0);
}

TEST(Def2Limit, Examples) {
    EXPECT_EQ(def2_limit(obs(0, 1, 1), kC).value(), 0.0);
    // 50-digit oracle (e^2 - 1)/(e^2 + 1)
    EXPECT_LE(ulp_distance(def2_limit(obs(1, 1, 1), kC).value(), 0.7615941559557649), 1.0);
    const BoundedVelocity far = def2_limit(obs(100, 1, 1), kC);
    EXPECT_TRUE(far.saturated());
    EXPECT_EQ(far.value(), std::nextafter(1.0, 0.0));
}

TEST(Def3, Examples) {
    EXPECT_EQ(def3_velocity(obs(0, 1, 1), kC).value(), 0.0);
    EXPECT_EQ(def3_velocity(obs(0.5, 1, 1), kC).value(), 0.5);
    const double finite = def3_velocity(obs(0.5, 1, 1e4), kC).value();
    EXPECT_LE(std::fabs(finite - def3_limit(obs(0.5, 1, 1e4), kC).value()), 1e-8);
}

TEST(Def3, BeyondLightCone) {
    // s = 10 tanh(0.2) > 1
    EXPECT_EQ(kind_of([] { def3_velocity(obs(2.0, 1, 10), kC); }), ErrorKind::BeyondLightCone);
    EXPECT_EQ(kind_of([] { def3_velocity(obs(-3.0, 1, 3), kC); }), ErrorKind::BeyondLightCone);
}

TEST(Def3, MatchesLogFormOracle) {
    struct Case { double x, t, T; };
    const Case cases[] = {{0.5, 1, 1},   {0.5, 1, 3},    {0.5, 1, 1e3}, {-0.3, 2, 0.5},
                          {0.9, 1, 1.01}, {3.0, 1, 0.1}, {0.95, 1, 50}, {1e-8, 1, 7}};
    for (const auto& k : cases) {
        const double got = def3_velocity(obs(k.x, k.t, k.T), kC).value();
        const double want = oracle::to_double(oracle::def3(k.x, k.t, k.T));
        EXPECT_LE(std::fabs(got - want), 2e-15 * std::fabs(want)) << k.x << ' ' << k.t << ' ' << k.T;
    }
}

TEST(Def3Limit, Examples) {
    EXPECT_EQ(def3_limit(obs(0, 1, 1), kC).value(), 0.0);
    EXPECT_LE(ulp_distance(def3_limit(obs(0.5, 1, 1), kC).value(), 0.5493061443340549), 1.0);
    EXPECT_EQ(kind_of([] { def3_limit(obs(1, 1, 1), kC); }), ErrorKind::AtLightCone);
    EXPECT_EQ(kind_of([] { def3_limit(obs(-2, 1, 1), kC); }), ErrorKind::AtLightCone);
}

TEST(Evaluate, DispatchAndRepresentation) {
    const Measurement d1 = evaluate(Definition::Def1, obs(3, 2, 2), kC);
    EXPECT_EQ(value_of(d1), 1.5);
    EXPECT_EQ(representation_of(d1), Representation::Unbounded);

    const Measurement d2 = evaluate(Definition::Def2Limit, obs(1, 1, 1), kC);
    EXPECT_LE(ulp_distance(value_of(d2), 0.7615941559557649), 1.0);
    EXPECT_EQ(representation_of(d2), Representation::Bounded);

    const Measurement d3 = evaluate(Definition::Def3, obs(0.5, 1, 1), kC);
    EXPECT_EQ(value_of(d3), 0.5);
    EXPECT_EQ(representation_of(d3), Representation::Unbounded);
}

TEST(Collapse, TEqualsTReturnsQuotientExactly) {
    for (double c : {1.0, 299792458.0, 0.37}) {
        const LightSpeed ls{c};
        for (double t : {0.1, 1.0, 3.7}) {
            for (double frac : {-0.99, -0.5, -1e-9, 0.0, 0.123, 0.75, 0.98999}) {
                const double x = frac * c * t;
                const auto o = obs(x, t, t);
                EXPECT_EQ(def2_velocity(o, ls).value(), x / t);
                EXPECT_EQ(def3_velocity(o, ls).value(), x / t);
            }
        }
    }
}

TEST(Oddness, AllDefinitionsAreOddInX) {
    for (double x : {1e-6, 0.1, 0.5, 0.9}) {
        for (double T : {0.5, 1.0, 2.0, 1e3}) {
            if (x >= T) continue;  // outside the finite-T operator domain
            for (auto tag : {Definition::Def1, Definition::Def2, Definition::Def2Limit, Definition::Def3,
                             Definition::Def3Limit}) {
                EXPECT_EQ(value_of(evaluate(tag, obs(-x, 1, T), kC)), -value_of(evaluate(tag, obs(x, 1, T), kC)))
                    << to_string(tag) << ' ' << x << ' ' << T;
            }
        }
    }
}

TEST(ConvergenceScan, Def2OrderIsTwo) {
    const ConvergenceScan scan = convergence_scan(Definition::Def2, obs(0.5, 1, 1), kC, kDecades);
    ASSERT_EQ(scan.rows.size(), 4u);
    ASSERT_TRUE(scan.order);
    // 50-digit log-log slope oracle: 2.0000017090921736
    EXPECT_NEAR(*scan.order, 2.0000017090921736, 1e-4);
    EXPECT_NEAR(*scan.order, 2.0, 0.15);
    EXPECT_NEAR(scan.rows[0].abs_error_vs_limit, 3.27691e-6, 1e-10);
}

TEST(ConvergenceScan, Def3OrderIsTwo) {
    const ConvergenceScan scan = convergence_scan(Definition::Def3, obs(0.5, 1, 1), kC, kDecades);
    ASSERT_TRUE(scan.order);
    // 50-digit log-log slope oracle: 1.9999983297244575
    EXPECT_NEAR(*scan.order, 1.9999983297244575, 1e-4);
    EXPECT_NEAR(scan.rows[0].abs_error_vs_limit, 5.55548e-6, 1e-10);
}

TEST(ConvergenceScan, ZeroDisplacementIsDegenerate) {
    const ConvergenceScan scan = convergence_scan(Definition::Def2, obs(0, 1, 1), kC, kDecades);
    EXPECT_EQ(scan.rows.size(), 4u);
    for (const auto& r : scan.rows) EXPECT_EQ(r.abs_error_vs_limit, 0.0);
    EXPECT_FALSE(scan.order);
    EXPECT_EQ(kind_of([&] { (void)scan.order_or_throw(); }), ErrorKind::DegenerateFit);
}

TEST(ConvergenceScan, GridValidation) {
    const std::vector<double> short_grid{1e2, 1e3, 1e5};
    const std::vector<double> narrow{1e2, 2e2, 4e2, 8e2};
    const std::vector<double> descending{1e5, 1e4, 1e3, 1e2};
    for (const auto* g : {&short_grid, &narrow, &descending}) {
        EXPECT_EQ(kind_of([&] { convergence_scan(Definition::Def2, obs(0.5, 1, 1), kC, *g); }),
                  ErrorKind::InvalidArgument);
    }
    EXPECT_EQ(kind_of([&] { convergence_scan(Definition::Def1, obs(0.5, 1, 1), kC, kDecades); }),
              ErrorKind::InvalidArgument);
    // |x| >= c min(T)
    EXPECT_EQ(kind_of([&] { convergence_scan(Definition::Def2, obs(500, 1, 1), kC, kDecades); }),
              ErrorKind::OutsideOperatorDomain);
}

TEST(ConvergenceScan, ErrorsNonIncreasingOnceTIsLarge) {
    for (double x : {0.05, 0.5, 0.95}) {
        const double limit = def2_limit(obs(x, 1, 1), kC).value();
        double previous = INFINITY;
        for (int j = 0; j < 12; ++j) {
            const double T = 10.0 * std::pow(10.0, 0.5 * j);
            const double err = std::fabs(def2_velocity(obs(x, 1, T), kC).value() - limit);
            EXPECT_LE(err, previous + (std::nextafter(limit, 2.0) - limit)) << x << ' ' << T;
            previous = err;
        }
    }
}

TEST(LeastSquaresSlope, ExactLine) {
    const std::vector<double> xs{0, 1, 2, 3};
    const std::vector<double> ys{1, -1, -3, -5};
    EXPECT_DOUBLE_EQ(least_squares_slope(xs, ys), -2.0);
}
