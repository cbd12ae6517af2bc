#include <cmath>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "modvar/acceptance.hpp"
#include "modvar/cli_sim.hpp"
#include "modvar/oracles.hpp"
#include "modvar/schrodinger.hpp"

using namespace modvar;
using namespace modvar::oracle;

namespace {

const PhysicalConstants kC;

SuperpositionSpec spec(double alpha) { return make_superposition(50.0, 1.0, 0.1, alpha, kC); }

BathParams bath(double gamma, double T) { return BathParams::make(kC, gamma, T); }

}  // namespace

TEST_CASE("characteristic function: trace and hermiticity") {
    for (const auto& src : {ModularSource::schrodinger(spec(0.5), kC),
                            ModularSource::caldeira_leggett(spec(0.5), bath(0.001, 2.0), kC)}) {
        const CharacteristicFunction chi(src, 0.8);
        CHECK(std::abs(chi(0.0).value - 1.0) < 1e-8);
        CHECK(std::abs(chi(-7.3).value - std::conj(chi(7.3).value)) < 1e-12);
    }
    // mpmath
    CHECK(characteristic_modular(ModularSource::schrodinger(spec(0.0), kC), 0.0, 50.0).real() ==
          doctest::Approx(0.497506239596341156676).epsilon(1e-13));
}

TEST_CASE("CL characteristic function matches the modular quadrature") {
    const auto s = spec(kPi / 4.0);
    const auto b = bath(0.001, 5.0);
    for (double t : {0.2, 1.0}) {
        const Complex chi = characteristic_modular(ModularSource::caldeira_leggett(s, b, kC), t, s.L);
        CHECK(std::abs(chi.real() - cl_modular_quadrature(s, b, kC, t, s.L).value) < 1e-8);
    }
}

TEST_CASE("translated momentum moment") {
    const auto m = momentum_first_moment_translated(ModularSource::schrodinger(spec(0.0), kC), 1.0, 50.0);
    // mpmath
    CHECK(m.value.real() == doctest::Approx(1.061038999760584107673).epsilon(1e-11));
    CHECK(m.value.imag() == doctest::Approx(-1.084749227056635497141).epsilon(1e-11));
    CHECK(std::abs(m.value - m.richardson) < 1e-7);

    // ell = 0 gives the classical momentum of a single packet.
    auto one = make_superposition(50.0, 1.0, 0.0, 0.0, kC);
    const auto p0 = momentum_first_moment_translated(ModularSource::schrodinger(one, kC), 0.5, 0.0);
    CHECK(p0.value.real() == doctest::Approx(1.5).epsilon(1e-10));
}

TEST_CASE("momentum-grid route agrees on the translation sign") {
    const auto s = spec(1.0);
    const Complex grid = momentum_space_modular(s, kC, 0.7, s.L);
    const Complex quad = characteristic_modular(ModularSource::schrodinger(s, kC), 0.7, s.L);
    CHECK(std::abs(grid - quad) < 1e-10);
}

TEST_CASE("heisenberg check") {
    CHECK(heisenberg_rhs_check(spec(0.2), BathParams::none(), kC, 0.5).passes(1e-7));
    CHECK(heisenberg_rhs_check(spec(0.2), bath(0.001, 2.0), kC, 1.0).passes(1e-5));
    CHECK(heisenberg_rhs_check(spec(0.2), bath(0.005, 15.0), kC, 0.5).passes(1e-5));
}

TEST_CASE("pde residuals") {
    const auto s = spec(kPi / 4.0);
    CHECK(pde_residual(Framework::Schrodinger, s, BathParams::none(), kC, 20, 3).passes(1e-6));
    CHECK(pde_residual(Framework::CaldeiraLeggett, s, bath(0.001, 2.0), kC, 20, 3).passes(1e-6));
    CHECK_FALSE(pde_residual(Framework::CaldeiraLeggett, s, bath(0.001, 2.0), kC, 20, 3,
                             PlanckReading::FullPlanck).passes(1e-6));
    const auto zero = schrodinger_pde_residual([](double, double) { return Complex{}; }, kC,
                                               {{{0.0, 1.0}}, {{2.0, 0.5}}});
    CHECK(zero.max_abs_residual == 0.0);
}

TEST_CASE("trajectory ODE oracle") {
    const auto grid = TimeGrid::make(0.0, 3.0, 7);
    const auto traj = trajectory_ode_oracle([](double, double) { return 0.75; }, 1.0, grid);
    CHECK(traj.X.back() == doctest::Approx(3.25).epsilon(1e-12));
    const auto s = spec(0.0);
    auto v = [&](double x, double t) { return bohmian_velocity(s.a, kC, x, t); };
    const auto ode = trajectory_ode_oracle(v, -26.5, TimeGrid::make(0.0, 2.0, 21));
    const auto closed = bohmian_trajectory(s.a, kC, -26.5, TimeGrid::make(0.0, 2.0, 21));
    for (std::size_t i = 0; i < ode.X.size(); ++i) CHECK(std::abs(ode.X[i] - closed.X[i]) < 1e-6);
}

TEST_CASE("grid propagator") {
    GridSpec g;
    g.n_points = 1024;
    g.dt = 5e-4;
    const auto free = make_superposition(50.0, 1.0, 0.1, 0.0, PhysicalConstants::make(1, 1, 1, 0));
    const auto r = grid_propagator(free, PhysicalConstants::make(1, 1, 1, 0), g);
    CHECK(grid_l2_error(r, free, PhysicalConstants::make(1, 1, 1, 0), 2.0) < 1e-6);
    CHECK(std::abs(r.norm_final - r.norm_initial) < 1e-10);
    GridSpec tiny = g;
    tiny.margin_widths = 1.0;
    CHECK_THROWS_AS(grid_propagator(spec(0.0), kC, tiny), DomainError);
}

TEST_CASE("brute-force two-particle quadrature") {
    const auto s = spec(0.3);
    const Complex mb = two_particle_modular_bruteforce(s, s.b, StatisticsKind::MB, kC);
    CHECK(std::abs(mb - modular_mb(s, kC)) < 1e-12);
    const Complex be = two_particle_modular_bruteforce(s, s.b, StatisticsKind::BE, kC);
    CHECK(std::abs(be - modular_indistinguishable(s, CompanionState::equals_b(), StatisticsKind::BE, kC)) < 1e-12);
}

TEST_CASE("committed golden values hold against the closed forms") {
    std::ifstream in(std::string(MODVAR_GOLDEN_DIR) + "/golden_values.txt");
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    const auto records = gates::parse_golden(ss.str());
    const auto checks = gates::golden_checks();
    REQUIRE(records.size() == checks.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CAPTURE(records[i].quantity);
        CHECK(records[i].quantity == checks[i].quantity);
        CHECK(records[i].hash == cli::fnv1a_hex(checks[i].quantity + "|" + checks[i].parameters));
        const auto closed = checks[i].closed_form();
        REQUIRE(closed.size() == records[i].values.size());
        for (std::size_t k = 0; k < closed.size(); ++k) {
            CHECK(std::abs(closed[k] - records[i].values[k]) <= records[i].tolerance);
        }
    }
}
