#include <cmath>

#include <doctest.h>

#include "modvar/core_model.hpp"

using namespace modvar;

TEST_CASE("scaled_time_tau") {
    // mpmath, 40 digits
    CHECK(scaled_time_tau(0.001, 2.0) == doctest::Approx(1.996005328004263823846806710261).epsilon(1e-15));
    CHECK(scaled_time_tau(0.0, 3.5) == 3.5);
    CHECK(scaled_time_tau(1e-9, 2.0) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(scaled_time_tau(5.0, 100.0) == doctest::Approx(0.1));
}

TEST_CASE("diffusion coefficient and parameter validation") {
    const PhysicalConstants c;
    CHECK(diffusion_coefficient(c, 0.005, 15.0) == doctest::Approx(0.15));
    CHECK(BathParams::make(c, 0.1, 10.0).D == doctest::Approx(2.0));
    CHECK_THROWS_AS(BathParams::make(c, -0.1, 1.0), ParameterError);
    CHECK_THROWS_AS(BathParams::make(c, 0.1, -1.0), ParameterError);
    CHECK_THROWS_AS(PhysicalConstants::make(0.0, 1.0, 1.0, -3.0), ParameterError);
    CHECK_THROWS_AS(PhysicalConstants::make(1.0, -1.0, 1.0, -3.0), ParameterError);
    CHECK_THROWS_AS(GaussianPacket::make(0.0, 0.0, 0.0), ParameterError);
    CHECK_THROWS_AS(make_superposition(-1.0, 1.0, 0.1, 0.0), ParameterError);
}

TEST_CASE("make_superposition layout") {
    const PhysicalConstants c = PhysicalConstants::make(1.0, 0.5, 1.0, -3.0);
    const auto s = make_superposition(50.0, 1.0, 0.1, 0.3, c);
    CHECK(s.a.x0 == -25.0);
    CHECK(s.b.x0 == 25.0);
    CHECK(s.a.p0 == 0.0);
    CHECK(s.b.p0 == doctest::Approx(0.05));
    CHECK(s.alpha == 0.3);
}

TEST_CASE("high-temperature regime warning") {
    const PhysicalConstants c;
    CHECK(validate_regime(c, BathParams::make(c, 0.1, 10.0)).empty());
    CHECK(validate_regime(c, BathParams::none()).empty());
    CHECK(validate_regime(c, BathParams::make(c, 1.0, 2.0)).size() == 1);
}

TEST_CASE("TimeGrid hits its end points exactly") {
    const auto g = TimeGrid::make(0.0, 2.0, 2001);
    const auto s = g.samples();
    CHECK(s.front() == 0.0);
    CHECK(s.back() == 2.0);
    CHECK(s[1000] == 1.0);
    CHECK_THROWS_AS(TimeGrid::make(0.0, 1.0, 1), ParameterError);
    CHECK_THROWS_AS(TimeGrid::make(1.0, 0.0, 5), ParameterError);
}
