#include <cmath>

#include <doctest.h>

#include "modvar/numerics.hpp"

using namespace modvar;
using namespace modvar::numerics;

TEST_CASE("one_minus_exp_ratio is continuous through zero") {
    CHECK(one_minus_exp_ratio(0.0) == 1.0);
    for (double u : {1e-8, 1.9e-4, 2.1e-4, 1e-2, 0.3, 2.0}) {
        CHECK(one_minus_exp_ratio(u) == doctest::Approx(-std::expm1(-u) / u).epsilon(1e-14));
    }
    CHECK(one_minus_exp_ratio(1.999e-4) ==
          doctest::Approx(one_minus_exp_ratio(2.001e-4)).epsilon(1e-7));
}

TEST_CASE("drift_time and thermal_spread reduce to their gamma = 0 forms") {
    CHECK(drift_time(0.0, 2.0) == 2.0);
    CHECK(thermal_spread(0.0, 2.0) == doctest::Approx(16.0 / 3.0));
    CHECK(drift_time(1e-12, 2.0) == doctest::Approx(2.0).epsilon(1e-11));
    CHECK(thermal_spread(1e-12, 2.0) == doctest::Approx(16.0 / 3.0).epsilon(1e-11));
}

TEST_CASE("series and closed branches agree across the switch") {
    for (double gamma : {0.1, 0.125, 0.2}) {
        const double t = 2.0;
        const double u = 2.0 * gamma * t;
        const double drift = (u + std::expm1(-u)) / (4.0 * gamma * gamma);
        const double e1 = std::exp(-u);
        const double spread = -(3.0 + e1 * e1 - 4.0 * e1 - 2.0 * u) / (8.0 * gamma * gamma * gamma);
        CHECK(drift_time(gamma, t) == doctest::Approx(drift).epsilon(1e-12));
        CHECK(thermal_spread(gamma, t) == doctest::Approx(spread).epsilon(1e-9));
    }
}

TEST_CASE("merge_intervals sorts, merges and drops empty windows") {
    const auto m = merge_intervals({{5, 6}, {0, 2}, {1, 3}, {4, 4}});
    REQUIRE(m.size() == 2);
    CHECK(m[0].lo == 0.0);
    CHECK(m[0].hi == 3.0);
    CHECK(m[1].lo == 5.0);
}

TEST_CASE("integrate handles plain and strongly cancelling integrands") {
    auto gauss = [](double x) { return std::exp(-x * x); };
    CHECK(integrate(gauss, -12.0, 12.0).value == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));

    // Tiny oscillatory integral: the value is e^{-400} below its L1 norm.
    auto osc = [](double x) { return 1e-200 * std::cos(40.0 * x) * std::exp(-x * x); };
    const auto q = integrate(osc, -12.0, 12.0);
    CHECK(std::abs(q.value) < 1e-13 * q.l1);
    CHECK(q.l1 > 1e-201);

    auto complex_f = [](double x) { return Complex(std::exp(-x * x), x * std::exp(-x * x)); };
    const auto qc = integrate_windows(complex_f, {{-12.0, 0.0}, {-1.0, 12.0}});
    CHECK(qc.value.real() == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
    CHECK(std::abs(qc.value.imag()) < 1e-15);
}

TEST_CASE("ridders_derivative reaches near machine precision") {
    auto f = [](double x) { return std::sin(x); };
    const auto d = ridders_derivative(f, 1.0, 0.1);
    CHECK(d.value == doctest::Approx(std::cos(1.0)).epsilon(1e-12));
    CHECK(d.error < 1e-10);
}

TEST_CASE("first_root finds the first sign change") {
    auto f = [](double x) { return std::cos(x); };
    CHECK(first_root(f, 0.0, 10.0, 0.1, 1e-12) == doctest::Approx(kPi / 2.0).epsilon(1e-11));
    auto positive = [](double x) { return 1.0 + x * x; };
    CHECK_THROWS_AS(first_root(positive, 0.0, 5.0, 0.5, 1e-9), NumericalError);
}
