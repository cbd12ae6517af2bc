#include "modvar/schrodinger.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "modvar/overlap_window.hpp"
#include "modvar/two_particle.hpp"

namespace modvar {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ParameterError("time must be finite and >= 0");
}

/// Exponent of packet_amplitude, without the prefactor.
Complex packet_exponent(const GaussianPacket& p, const PhysicalConstants& c,
                        const PacketStateS& s, double x) {
    const double dx = x - s.x_t;
    return -dx * dx / (4.0 * s.s_t * p.sigma0) + kI * (s.p_t * dx + s.action_t) / c.hbar;
}

}  // namespace

PacketStateS packet_state(const GaussianPacket& p, const PhysicalConstants& c, double t) {
    require_time(t);
    PacketStateS s;
    const double eps = c.hbar * t / (2.0 * c.m * p.sigma0 * p.sigma0);
    s.s_t = p.sigma0 * Complex(1.0, eps);
    s.sigma_t = p.sigma0 * std::sqrt(1.0 + eps * eps);
    s.x_t = p.x0 + p.p0 * t / c.m - 0.5 * c.g * t * t;
    s.p_t = p.p0 - c.m * c.g * t;
    s.action_t = (p.p0 * p.p0 / (2.0 * c.m) - c.m * c.g * p.x0) * t - p.p0 * c.g * t * t +
                 c.m * c.g * c.g * t * t * t / 3.0;
    return s;
}

Complex packet_amplitude(const GaussianPacket& p, const PhysicalConstants& c, double x, double t) {
    const auto s = packet_state(p, c, t);
    // (2 pi s_t^2)^{-1/4} with the principal branch: arg s_t lies in [0, pi/2).
    const Complex pref = std::pow(2.0 * kPi, -0.25) / std::sqrt(s.s_t);
    return pref * std::exp(packet_exponent(p, c, s, x));
}

Complex packet_amplitude_dx(const GaussianPacket& p, const PhysicalConstants& c, double x,
                            double t) {
    const auto s = packet_state(p, c, t);
    const double dx = x - s.x_t;
    const Complex log_dx = -dx / (2.0 * s.s_t * p.sigma0) + kI * s.p_t / c.hbar;
    return log_dx * packet_amplitude(p, c, x, t);
}

DensityCurrent density_and_current(const GaussianPacket& p, const PhysicalConstants& c, double x,
                                   double t) {
    const auto s = packet_state(p, c, t);
    const double dx = x - s.x_t;
    const double rho = std::exp(-dx * dx / (2.0 * s.sigma_t * s.sigma_t)) /
                       (std::sqrt(2.0 * kPi) * s.sigma_t);
    return {rho, rho * bohmian_velocity(p, c, x, t)};
}

double bohmian_velocity(const GaussianPacket& p, const PhysicalConstants& c, double x, double t) {
    const auto s = packet_state(p, c, t);
    const double s04 = std::pow(p.sigma0, 4);
    const double h2 = c.hbar * c.hbar;
    const double num = 8.0 * c.m * s04 * p.p0 +
                       (2.0 * h2 * (x - p.x0) - 8.0 * c.m * c.m * c.g * s04) * t -
                       c.g * h2 * t * t * t;
    return num / (8.0 * c.m * c.m * p.sigma0 * p.sigma0 * s.sigma_t * s.sigma_t);
}

double bohmian_position(const GaussianPacket& p, const PhysicalConstants& c, double X0, double t) {
    const auto s = packet_state(p, c, t);
    return s.x_t + (X0 - p.x0) * s.sigma_t / p.sigma0;
}

BohmianTrajectory bohmian_trajectory(const GaussianPacket& p, const PhysicalConstants& c,
                                     double X0, const TimeGrid& grid) {
    BohmianTrajectory traj;
    traj.X0 = X0;
    traj.t = grid.samples();
    traj.X.reserve(traj.t.size());
    for (double t : traj.t) traj.X.push_back(bohmian_position(p, c, X0, t));
    return traj;
}

double superposition_norm(const SuperpositionSpec& spec, const PhysicalConstants& c) {
    const Complex ov = gaussian_overlap(spec.a, spec.b, c);
    const double q = 1.0 + std::real(std::polar(1.0, spec.alpha) * ov);
    if (!(q > 64.0 * std::numeric_limits<double>::epsilon())) {
        throw DomainError("superposition has zero norm (destructive cancellation)");
    }
    return 1.0 / std::sqrt(q);
}

Complex superposed_amplitude(const SuperpositionSpec& spec, const PhysicalConstants& c, double x,
                             double t) {
    const double n = superposition_norm(spec, c);
    return n *
           (packet_amplitude(spec.a, c, x, t) +
            std::polar(1.0, spec.alpha) * packet_amplitude(spec.b, c, x, t)) /
           std::sqrt(2.0);
}

Complex superposed_amplitude_dx(const SuperpositionSpec& spec, const PhysicalConstants& c,
                                double x, double t) {
    const double n = superposition_norm(spec, c);
    return n *
           (packet_amplitude_dx(spec.a, c, x, t) +
            std::polar(1.0, spec.alpha) * packet_amplitude_dx(spec.b, c, x, t)) /
           std::sqrt(2.0);
}

DensityCurrent superposed_density_current(const SuperpositionSpec& spec,
                                          const PhysicalConstants& c, double x, double t) {
    const Complex psi = superposed_amplitude(spec, c, x, t);
    const Complex dpsi = superposed_amplitude_dx(spec, c, x, t);
    return {std::norm(psi), c.hbar / c.m * std::imag(std::conj(psi) * dpsi)};
}

Flagged<double> modular_expectation(const SuperpositionSpec& spec, const PhysicalConstants& c,
                                    double t) {
    require_time(t);
    const double s0 = spec.sigma0();
    const double value = 0.5 * std::exp(-spec.k * spec.k * s0 * s0 / 2.0) *
                         std::cos(spec.alpha - c.m * c.g * spec.L * t / c.hbar);
    return {value, !inside_window(Framework::Schrodinger, spec, BathParams::none(), c, t)};
}

Complex phase_rotated_modular(Complex initial, double ell, const PhysicalConstants& c, double t) {
    return std::polar(1.0, -c.m * c.g * ell * t / c.hbar) * initial;
}

double local_modular_pointwise(const SuperpositionSpec& spec, const PhysicalConstants& c,
                               double x, double t) {
    const Complex psi = superposed_amplitude(spec, c, x, t);
    const double dens = std::norm(psi);
    if (!(dens >= kDensityFloor)) {
        std::ostringstream os;
        os.precision(17);
        os << "|Psi|^2 underflows at x = " << x << ", t = " << t;
        throw DomainError(os.str());
    }
    const Complex shifted =
        superposed_amplitude(spec, c, x + spec.L, t) + superposed_amplitude(spec, c, x - spec.L, t);
    return std::real(std::conj(psi) * shifted) / (2.0 * dens);
}

double local_modular_closed(const SuperpositionSpec& spec, const PhysicalConstants& c, double X0,
                            double t) {
    require_time(t);
    const double s0 = spec.sigma0();
    const double sig = packet_state(spec.a, c, t).sigma_t;
    const double hk = c.hbar * spec.k;
    const double L = spec.L;
    const double amp = hk * t / (2.0 * c.m * sig * sig) *
                       (-hk * t / (2.0 * c.m) + (X0 + L / 2.0) * sig / s0);
    const double phase =
        spec.alpha + 0.5 * (-2.0 * c.m * c.g * L * t / c.hbar -
                            hk * spec.k * s0 * s0 * t / (c.m * sig * sig) +
                            spec.k * (L + 2.0 * X0) * s0 / sig);
    return 0.5 * std::exp(amp) * std::cos(phase);
}

TimeSeries local_modular_on_trajectory(const SuperpositionSpec& spec, const PhysicalConstants& c,
                                       double X0, const TimeGrid& grid, double support_factor) {
    TimeSeries ts;
    ts.t = grid.samples();
    ts.value.reserve(ts.t.size());
    const double reach = support_factor * spec.a.sigma0;
    if (std::abs(X0 - spec.a.x0) > reach) {
        std::ostringstream os;
        os << "X0 = " << X0 << " lies outside the left packet's effective support";
        ts.warnings.push_back(os.str());
    }
    bool outside = false;
    for (double t : ts.t) {
        ts.value.push_back(local_modular_closed(spec, c, X0, t));
        if (!outside &&
            !inside_window(Framework::Schrodinger, spec, BathParams::none(), c, t,
                           support_factor)) {
            outside = true;
            std::ostringstream os;
            os << "samples from t = " << t << " lie outside the non-overlap window";
            ts.warnings.push_back(os.str());
        }
    }
    return ts;
}

}  // namespace modvar
