#include <cmath>

#include <doctest.h>

#include "modvar/schrodinger.hpp"
#include "modvar/two_particle.hpp"

using namespace modvar;

namespace {

const PhysicalConstants kC;

SuperpositionSpec spec(double alpha) { return make_superposition(50.0, 1.0, 0.1, alpha, kC); }

BathParams bath(double gamma, double T) { return BathParams::make(kC, gamma, T); }

}  // namespace

TEST_CASE("overlaps") {
    const auto p = GaussianPacket::make(1.0, 0.4, 0.7);
    CHECK(std::abs(gaussian_overlap(p, p, kC) - 1.0) < 1e-15);
    const auto q = GaussianPacket::make(-0.5, -0.2, 1.3);
    CHECK(std::abs(gaussian_overlap(p, q, kC) - std::conj(gaussian_overlap(q, p, kC))) < 1e-15);
    // Translating B by L lands it on A up to its momentum phase.
    const auto s = spec(0.0);
    CHECK(std::abs(translated_matrix_element(s.a, s.b, s.L, kC)) ==
          doctest::Approx(std::exp(-0.005)).epsilon(1e-14));
}

TEST_CASE("MB modular value equals the single-particle one") {
    const auto s = spec(0.3);
    CHECK(modular_mb(s, kC).real() == doctest::Approx(modular_expectation(s, kC, 0.0).value).epsilon(1e-14));
    CHECK_THROWS_AS(modular_mb(make_superposition(1.0, 1.0, 0.1, 0.0, kC), kC), ParameterError);
    CHECK_THROWS_AS(indistinguishable_norm(s, CompanionState::equals_b(), StatisticsKind::MB, kC),
                    ParameterError);
}

TEST_CASE("disjoint companion halves the modular value") {
    const auto s = spec(0.3);
    const Complex mb = modular_mb(s, kC);
    for (auto k : {StatisticsKind::BE, StatisticsKind::FD}) {
        const Complex v = modular_indistinguishable(s, CompanionState::disjoint(), k, kC);
        CHECK(std::abs(v / mb - 0.5) < 1e-15);
    }
    const auto far = CompanionState::gaussian(GaussianPacket::make(400.0, 0.0, 1.0));
    const Complex v = modular_indistinguishable(s, far, StatisticsKind::BE, kC);
    CHECK(std::abs(v / mb - 0.5) < 1e-14);
}

TEST_CASE("companion equal to a branch packet") {
    // Keeping both exchange terms gives 2/3 (BE) and 0 (FD) of the MB value.
    const auto s = spec(0.3);
    const Complex mb = modular_mb(s, kC);
    for (auto chi : {CompanionState::equals_a(), CompanionState::equals_b()}) {
        const Complex be = modular_indistinguishable(s, chi, StatisticsKind::BE, kC);
        const Complex fd = modular_indistinguishable(s, chi, StatisticsKind::FD, kC);
        CHECK(std::abs(be / mb - 2.0 / 3.0) < 1e-14);
        CHECK(std::abs(fd / mb) < 1e-14);
        CHECK(std::abs(be) <= 0.5);
    }
    CHECK(indistinguishable_norm(s, CompanionState::equals_b(), StatisticsKind::BE, kC) ==
          doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
}

TEST_CASE("common-bath modular value") {
    const auto s = spec(0.0);
    const auto b = bath(0.005, 15.0);
    // mpmath
    CHECK(reduced_modular_common_bath(s, b, kC, 0.2).value ==
          doctest::Approx(1.610774126285030234700e-34).epsilon(1e-12));
    CHECK(reduced_modular_common_bath(s, b, kC, 2.0).value ==
          doctest::Approx(1.042309581893456258e-314).epsilon(1e-8));
    CHECK(reduced_modular_common_bath(spec(1.1), b, kC, 0.0).value ==
          doctest::Approx(0.5 * std::exp(-0.005) * std::cos(1.1)).epsilon(1e-15));
    for (double t : {0.4, 1.9}) {
        CHECK(reduced_modular_common_bath(spec(1.1), BathParams::none(), kC, t).value ==
              doctest::Approx(modular_expectation(spec(1.1), kC, t).value).epsilon(1e-13));
    }
    CHECK(reduced_modular_common_bath(s, b, kC, 5.7).approximate == false);
    CHECK(reduced_modular_common_bath(s, b, kC, 5.8).approximate == true);
}

TEST_CASE("phase is temperature independent, envelope decreases with T") {
    for (double t : {0.1, 1.0, 2.0}) {
        const auto lo = reduced_modular_common_bath(spec(0.5), bath(0.005, 2.0), kC, t);
        const auto hi = reduced_modular_common_bath(spec(0.5), bath(0.005, 15.0), kC, t);
        CHECK(lo.phase == hi.phase);
        CHECK(hi.envelope < lo.envelope);
    }
}

TEST_CASE("early-time model") {
    const auto s = spec(0.0);
    const auto m = early_time_model(s, bath(0.005, 15.0), kC);
    CHECK(m.linear_rate == doctest::Approx(375.0));
    CHECK(m.omega0 == doctest::Approx(50.0 * (0.1 * 0.005 - 3.0)));
    CHECK(early_time_model(s, BathParams::none(), kC).omega0 == doctest::Approx(-150.0));
    // Log-envelope slope of the closed form at small t.
    const auto b = bath(0.005, 15.0);
    const double h = 1e-6;
    const double slope = (std::log(reduced_modular_common_bath(s, b, kC, 2 * h).envelope) -
                          std::log(reduced_modular_common_bath(s, b, kC, h).envelope)) / h;
    CHECK(-slope == doctest::Approx(375.0).epsilon(1e-4));
    // Second order agreement at small t.
    for (double t : {1e-3, 3e-3}) {
        const double exact = reduced_modular_common_bath(s, b, kC, t).envelope;
        CHECK(m.envelope(t) == doctest::Approx(exact).epsilon(1e-5));
    }
}

TEST_CASE("second-particle cross term bound") {
    const auto s = spec(0.0);
    CHECK(std::abs(gaussian_overlap(s.a, s.b, kC)) <= std::exp(-2500.0 / 8.0));
}
