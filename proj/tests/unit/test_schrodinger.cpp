#include <cmath>

#include <doctest.h>

#include "modvar/numerics.hpp"
#include "modvar/schrodinger.hpp"

using namespace modvar;

namespace {

const PhysicalConstants kC;

SuperpositionSpec spec(double alpha) { return make_superposition(50.0, 1.0, 0.1, alpha, kC); }

}  // namespace

TEST_CASE("packet amplitude stays normalized and moves classically") {
    const auto p = GaussianPacket::make(-25.0, 0.3, 1.0);
    const double t = 1.7;
    const auto st = packet_state(p, kC, t);
    CHECK(st.x_t == doctest::Approx(-25.0 + 0.3 * t + 1.5 * t * t));
    CHECK(st.p_t == doctest::Approx(0.3 + 3.0 * t));
    auto dens = [&](double x) { return std::norm(packet_amplitude(p, kC, x, t)); };
    CHECK(numerics::integrate(dens, st.x_t - 20, st.x_t + 20).value == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("analytic x-derivative matches a difference quotient") {
    const auto p = GaussianPacket::make(1.0, 0.7, 0.8);
    auto re = [&](double x) { return packet_amplitude(p, kC, x, 0.9).real(); };
    const auto d = numerics::ridders_derivative(re, 1.4, 0.1);
    CHECK(packet_amplitude_dx(p, kC, 1.4, 0.9).real() == doctest::Approx(d.value).epsilon(1e-10));
}

TEST_CASE("bohmian velocity equals current over density, trajectory is closed form") {
    const auto p = GaussianPacket::make(-25.0, 0.0, 1.0);
    for (double x : {-27.0, -25.0, -23.5}) {
        const auto dc = density_and_current(p, kC, x, 1.2);
        CHECK(bohmian_velocity(p, kC, x, 1.2) == doctest::Approx(dc.current / dc.density).epsilon(1e-12));
    }
    const auto traj = bohmian_trajectory(p, kC, -27.0, TimeGrid::make(0.0, 2.0, 5));
    CHECK(traj.X.front() == -27.0);
    const double sigma2 = std::sqrt(1.0 + 1.0);  // sigma_t at t = 2
    CHECK(traj.X.back() == doctest::Approx(-25.0 + 6.0 - 2.0 * sigma2));
}

TEST_CASE("superposition norm") {
    // mpmath: N for two resting unit packets at -2 and 2 in phase
    CHECK(superposition_norm(make_superposition(4.0, 1.0, 0.0, 0.0, kC), kC) ==
          doctest::Approx(0.9385078997951388816321).epsilon(1e-15));
    CHECK(superposition_norm(spec(0.0), kC) == doctest::Approx(1.0).epsilon(1e-15));
    SuperpositionSpec cancel = make_superposition(4.0, 1.0, 0.0, kPi, kC);
    cancel.L = 0.0;
    cancel.a.x0 = cancel.b.x0 = 0.0;
    CHECK_THROWS_AS(superposition_norm(cancel, kC), DomainError);
}

TEST_CASE("modular expectation") {
    const double damp = std::exp(-0.005);
    CHECK(modular_expectation(spec(0.0), kC, 0.0).value ==
          doctest::Approx(0.497506239596341156676).epsilon(1e-15));
    CHECK(modular_expectation(spec(kPi / 4.0), kC, 0.5).value ==
          doctest::Approx(0.5 * damp * std::cos(kPi / 4.0 + 75.0)).epsilon(1e-13));
    CHECK_FALSE(modular_expectation(spec(0.0), kC, 10.0).approximate);
    CHECK(modular_expectation(spec(0.0), kC, 10.01).approximate);
    const Complex rotated = phase_rotated_modular(Complex(0.5, 0.0), 50.0, kC, 0.1);
    CHECK(std::arg(rotated) == doctest::Approx(std::remainder(15.0, 2.0 * kPi)));
}

TEST_CASE("local modular value") {
    // mpmath
    CHECK(local_modular_pointwise(spec(kPi / 4.0), kC, -24.3, 0.7) ==
          doctest::Approx(0.2547115181437350077605).epsilon(1e-12));
    const auto s = spec(kPi / 3.0);
    for (double t : {0.0, 0.4, 1.3}) {
        const double X = bohmian_position(s.a, kC, -26.0, t);
        CHECK(local_modular_closed(s, kC, -26.0, t) ==
              doctest::Approx(local_modular_pointwise(s, kC, X, t)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(local_modular_pointwise(s, kC, 400.0, 0.5), DomainError);
}

TEST_CASE("local modular series warns outside the support") {
    const auto grid = TimeGrid::make(0.0, 1.0, 11);
    CHECK(local_modular_on_trajectory(spec(0.0), kC, -25.0, grid).warnings.empty());
    CHECK_FALSE(local_modular_on_trajectory(spec(0.0), kC, -31.0, grid).warnings.empty());
}
