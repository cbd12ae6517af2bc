#include <cmath>

#include <doctest.h>

#include "modvar/cl_dynamics.hpp"
#include "modvar/schrodinger.hpp"

using namespace modvar;

namespace {

const PhysicalConstants kC;

SuperpositionSpec spec(double alpha) { return make_superposition(50.0, 1.0, 0.1, alpha, kC); }

BathParams bath(double gamma, double T) { return BathParams::make(kC, gamma, T); }

}  // namespace

TEST_CASE("packet centers and widths") {
    const auto s = spec(0.0);
    const auto b = bath(0.001, 2.0);
    // mpmath
    const auto a = cl_packet_state(s.a, b, kC, 2.0);
    CHECK(a.x_t == doctest::Approx(-19.00799200639573577).epsilon(1e-15));
    CHECK(a.w_t == doctest::Approx(1.420309392345515288).epsilon(1e-15));
    CHECK(cl_packet_state(s.b, b, kC, 2.0).x_t == doctest::Approx(31.19160852640469061).epsilon(1e-15));
}

TEST_CASE("no bath reproduces the Schrodinger density and current") {
    const auto s = spec(kPi / 4.0);
    for (double t : {0.0, 0.8, 2.0}) {
        for (double x : {-27.0, -22.0, 26.0}) {
            const auto dc = superposed_density_current(s, kC, x, t);
            CHECK(cl_density(s, BathParams::none(), kC, x, t) == doctest::Approx(dc.density).epsilon(1e-12));
            CHECK(cl_current(s, BathParams::none(), kC, x, t) == doctest::Approx(dc.current).epsilon(1e-11));
        }
    }
}

TEST_CASE("density matrix terms") {
    const auto s = spec(0.4);
    const auto b = bath(0.001, 2.0);
    const CLDensityMatrix rho(s, b, kC, 1.0);
    CHECK(rho.terms().size() == 4);
    Complex sum = 0.0;
    for (std::size_t j = 0; j < 4; ++j) sum += rho.term(j, 3.0, -20.0);
    CHECK(std::abs(sum - rho(3.0, -20.0)) < 1e-15);
    CHECK(std::abs(rho(3.0, -20.0) - density_matrix_rR(s, b, kC, 3.0, -20.0, 1.0)) < 1e-15);
    CHECK_THROWS_AS(term_coefficients(5, s, b, kC, 0.0, 1.0), ParameterError);
    CHECK_THROWS_AS(term_coefficients(0, s, b, kC, 0.0, 1.0), ParameterError);
    CHECK_THROWS_AS(CLDensityMatrix(s, b, kC, -1.0), ParameterError);
}

TEST_CASE("analytic current matches the extrapolated difference") {
    const auto s = spec(0.0);
    const auto b = bath(0.1, 10.0);
    for (double x : {-24.0, -20.0}) {
        const auto num = cl_current_numeric(s, b, kC, x, 1.5);
        CHECK(cl_current(s, b, kC, x, 1.5) == doctest::Approx(num.value).epsilon(1e-8));
    }
}

TEST_CASE("trace and modular value") {
    const auto s = spec(0.0);
    const auto b = bath(0.001, 2.0);
    CHECK(trace_check(s, b, kC, 1.0).value == doctest::Approx(1.0).epsilon(1e-13));
    // mpmath quadrature of the density matrix
    CHECK(cl_modular_closed(s, b, kC, 2.0).value == doctest::Approx(-6.521990369713978e-10).epsilon(1e-10));
    CHECK(cl_modular_quadrature(s, b, kC, 2.0, s.L).value ==
          doctest::Approx(-6.521990369713978e-10).epsilon(1e-10));
    CHECK(cl_modular_closed(s, b, kC, 0.0).value == doctest::Approx(0.497506239596341156676).epsilon(1e-14));
    CHECK_FALSE(cl_modular_closed(s, b, kC, 9.6).approximate);
    CHECK(cl_modular_closed(s, b, kC, 9.61).approximate);
}

TEST_CASE("no bath reproduces the Schrodinger modular value") {
    for (double t : {0.3, 1.1, 2.0}) {
        CHECK(cl_modular_closed(spec(0.7), BathParams::none(), kC, t).value ==
              doctest::Approx(modular_expectation(spec(0.7), kC, t).value).epsilon(1e-13));
    }
}

TEST_CASE("local translation along the left packet") {
    const auto s = spec(kPi / 4.0);
    const auto b = bath(0.001, 2.0);
    // mpmath, at the left packet's center
    const Complex v = local_translation(s, b, kC, -23.50099950019993335, 1.0);
    CHECK(v.real() == doctest::Approx(4.664809018876198476559e-5).epsilon(1e-10));
    CHECK(v.imag() == doctest::Approx(-8.339233576011964933748e-6).epsilon(1e-10));
    CHECK_THROWS_AS(local_translation(s, b, kC, 500.0, 1.0), DomainError);
}

TEST_CASE("local modular value composes from the density matrix") {
    const auto s = spec(kPi / 4.0);
    const auto grid = TimeGrid::make(0.0, 2.0, 21);
    const auto ts = cl_local_modular_on_trajectory(s, bath(0.001, 2.0), kC, -25.0, grid);
    CHECK(ts.value.size() == 21);
    CHECK(ts.value.front() == doctest::Approx(local_modular_pointwise(s, kC, -25.0, 0.0)).epsilon(1e-12));
    CHECK(ts.warnings.empty());
    const auto unitary = cl_local_modular_on_trajectory(s, BathParams::none(), kC, -26.0, grid);
    const auto pure = local_modular_on_trajectory(s, kC, -26.0, grid);
    for (std::size_t i = 0; i < unitary.value.size(); ++i) {
        CHECK(unitary.value[i] == doctest::Approx(pure.value[i]).epsilon(1e-9));
    }
}

TEST_CASE("coherence and overlap diagnostics") {
    const auto s = spec(0.0);
    const auto b = bath(0.001, 2.0);
    const auto c0 = l1_coherence(s, b, kC, 0.0);
    CHECK(c0.value > 1.0);
    CHECK(l1_coherence(s, b, kC, 2.0).value < c0.value);
    CHECK(overlap_magnitude(s, b, kC, 0.0) == doctest::Approx(std::exp(-2500.0 / 8.0)));
}
