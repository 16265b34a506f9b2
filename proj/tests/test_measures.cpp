#include <doctest.h>

#include <potcap/asymptotics.hpp>
#include <potcap/measures.hpp>

#include <cmath>
#include <stdexcept>

using namespace potcap;

TEST_CASE("surface area of unit spheres") {
    CHECK(surface_area(2) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
    CHECK(surface_area(3) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
    CHECK(surface_area(4) == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-14));
    CHECK_THROWS_AS(surface_area(1), std::invalid_argument);
}

TEST_CASE("power weight mass closed form") {
    // mu(B_rho) = omega/(n-alpha) rho^(n-alpha)
    auto m = builtin_power(2, 0.5);
    auto g = induced_growth(m);
    CHECK(g.evaluate(1.0) == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-12));
    CHECK(g.evaluate(0.25) ==
          doctest::Approx(4.0 * M_PI / 3.0 * std::pow(0.25, 1.5)).epsilon(1e-12));

    CHECK_THROWS_AS(builtin_power(3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(builtin_power(3, 3.0), std::invalid_argument);
}

TEST_CASE("power mass quadrature route matches the closed form") {
    auto m = builtin_power(3, 1.0);
    auto g_closed = induced_growth(m);
    m.closed_form_mass = nullptr;
    auto g_quad = induced_growth(m);
    for (double rho : {1e-6, 1e-3, 0.1, 1.0, 5.0}) {
        CHECK(g_quad.evaluate(rho) ==
              doctest::Approx(g_closed.evaluate(rho)).epsilon(1e-8));
    }
}

TEST_CASE("log weight mass against the incomplete-gamma closed form") {
    // n=2, s=2, beta=2, rho=e^-2: omega s^-(1+beta) Gamma(1+beta, s|log rho|)
    // with Gamma(3,4) = 26 e^-4
    auto g = induced_growth(builtin_log(2, 2.0, 2.0));
    const double want = 2.0 * M_PI * 3.25 * std::exp(-4.0);
    CHECK(g.evaluate(std::exp(-2.0)) == doctest::Approx(want).epsilon(1e-10));

    CHECK_THROWS_AS(builtin_log(3, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(builtin_log(3, 3.0, 0.0), std::invalid_argument);
}

TEST_CASE("log weight mass quadrature route matches the closed form") {
    auto m = builtin_log(3, 3.0, 1.0);
    auto g_closed = induced_growth(m);
    m.closed_form_mass = nullptr;
    auto g_quad = induced_growth(m);
    for (double rho : {1e-10, 1e-6, 1e-3, 0.1, 1.0, 3.0}) {
        CHECK(g_quad.evaluate(rho) ==
              doctest::Approx(g_closed.evaluate(rho)).epsilon(1e-8));
    }
}

TEST_CASE("log weight is continuous across the crossover radius") {
    auto m = builtin_log(3, 3.0, 2.0);
    const double c = std::exp(-1.0);
    CHECK(m.weight(c * (1 - 1e-9)) == doctest::Approx(m.weight(c * (1 + 1e-9))).epsilon(1e-6));
    auto g = induced_growth(m);
    CHECK(g.evaluate(c * (1 - 1e-9)) == doctest::Approx(g.evaluate(c * (1 + 1e-9))).epsilon(1e-6));
}

TEST_CASE("declared growth class stays within its comparability band") {
    auto g = induced_growth(builtin_log(3, 3.0, 1.0));
    REQUIRE(g.at_zero.has_value());
    CHECK(g.ratio_kappa > 1.0);
    for (int i = 0; i <= 60; ++i) {
        const double rho =
            std::exp(std::log(1e-10) + (std::log(g.anchor_radius) - std::log(1e-10)) * i / 60.0);
        const double ratio = g.evaluate(rho) / evaluate_class(*g.at_zero, rho);
        CHECK(ratio <= g.ratio_kappa * (1 + 1e-12));
        CHECK(ratio >= 1.0 / g.ratio_kappa);
    }
}

TEST_CASE("induced growth lifts the weight class by the dimension") {
    RadialMeasure m;
    m.dim = 3;
    m.omega = surface_area(3);
    m.weight = [](double rho) { return 1.0 / rho; };
    m.weight_at_zero = AsymptoticClass{-1.0, 0.0, 1.0, Side::AtZero};
    auto g = induced_growth(m);
    REQUIRE(g.at_zero.has_value());
    CHECK(g.at_zero->exponent_a == doctest::Approx(2.0));
    CHECK(g.at_zero->log_exponent_b == doctest::Approx(0.0));
    CHECK(g.at_zero->constant_C == doctest::Approx(m.omega / 2.0).epsilon(1e-12));
    CHECK(static_cast<bool>(g.radial));
}

TEST_CASE("weight too singular for a finite ball mass is rejected") {
    RadialMeasure m;
    m.dim = 3;
    m.omega = surface_area(3);
    m.weight = [](double rho) { return std::pow(rho, -3.0); };
    m.weight_at_zero = AsymptoticClass{-3.0, 0.0, 1.0, Side::AtZero};
    CHECK_THROWS_AS(induced_growth(m), std::invalid_argument);
}

TEST_CASE("tabulated growth interpolates on log-log segments") {
    auto g = growth_from_table({{0.01, 1e-4}, {0.1, 1e-2}, {1.0, 1.0}});
    CHECK(g.evaluate(0.05) == doctest::Approx(0.05 * 0.05).epsilon(1e-12));
    CHECK(g.evaluate(0.5) == doctest::Approx(0.25).epsilon(1e-12));
    // end segments extrapolate with the boundary slope
    CHECK(g.evaluate(2.0) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(g.evaluate(1e-3) == doctest::Approx(1e-6).epsilon(1e-12));

    CHECK_THROWS_AS(growth_from_table({{0.1, 1.0}, {0.1, 2.0}}), std::invalid_argument);
    CHECK_THROWS_AS(growth_from_table({{0.1, 2.0}, {1.0, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(growth_from_table({{0.1, -1.0}, {1.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("growth functions are nondecreasing") {
    auto models = {induced_growth(builtin_power(3, 1.0)), induced_growth(builtin_log(3, 3.0, 2.5)),
                   builtin_ahlfors(2.0),
                   growth_from_table({{0.01, 1e-4}, {0.1, 1e-2}, {1.0, 1.0}})};
    for (const auto& g : models) {
        double prev = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double rho = std::exp(std::log(1e-12) + (std::log(10.0) - std::log(1e-12)) * i / 200.0);
            const double f = g.evaluate(rho);
            CHECK(f > 0.0);
            CHECK(f >= prev * (1 - 1e-13));
            prev = f;
        }
    }
}

TEST_CASE("doubling ratio scan matches the homogeneity of power growth") {
    CHECK(doubling_ratio_scan(induced_growth(builtin_power(3, 1.0)), 1e-6, 1e-1) ==
          doctest::Approx(4.0).epsilon(1e-10));
    CHECK(doubling_ratio_scan(builtin_ahlfors(2.0), 1e-6, 1e-1) ==
          doctest::Approx(4.0).epsilon(1e-10));
    // s=3 log model: ratio approaches 2^3 from below as the log factor flattens
    const double r = doubling_ratio_scan(induced_growth(builtin_log(3, 3.0, 1.0)), 1e-6, 1e-2);
    CHECK(r > 7.0);
    CHECK(r <= 8.0);
}

TEST_CASE("assumption profiles validate and answer exponent queries") {
    AssumptionProfile hyp;
    hyp.poincare_small_radii = {2.0};
    hyp.validate();

    CHECK(hyp.has_poincare_at_most(2.0));
    CHECK(hyp.has_poincare_at_most(2.5));
    CHECK_FALSE(hyp.has_poincare_at_most(1.5));
    CHECK_FALSE(hyp.has_poincare_below(2.0));
    CHECK(hyp.has_poincare_below(2.0 + 1e-6));
    CHECK_FALSE(hyp.has_poincare_at_most(2.0, /*large_radii=*/true));
    CHECK(hyp.weakest_poincare().value() == doctest::Approx(2.0));
    CHECK_FALSE(hyp.weakest_poincare(true).has_value());

    AssumptionProfile bad = hyp;
    bad.poincare_small_radii = {0.5};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = hyp;
    bad.dilation_lambda = 0.9;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = hyp;
    bad.reverse_doubling_xi = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
