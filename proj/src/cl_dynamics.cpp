#include "modvar/cl_dynamics.hpp"

#include <cmath>
#include <sstream>

#include "modvar/overlap_window.hpp"
#include "modvar/schrodinger.hpp"

namespace modvar {

namespace {

constexpr Complex kI{0.0, 1.0};
// exp() of anything below this is zero in double precision.
constexpr double kExpFloor = -745.0;

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ParameterError("time must be finite and >= 0");
}

bool close(double x, double y) {
    return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
}

void require_standard_layout(const SuperpositionSpec& spec, const PhysicalConstants& c) {
    const bool ok = close(spec.a.x0, -spec.L / 2.0) && close(spec.b.x0, spec.L / 2.0) &&
                    close(spec.a.p0, 0.0) && close(spec.b.p0, c.hbar * spec.k) &&
                    close(spec.a.sigma0, spec.b.sigma0);
    if (!ok) {
        throw ParameterError(
            "density-matrix coefficients need packets at -L/2 (at rest) and L/2 (momentum hbar k) "
            "with equal widths");
    }
}

/// Time-dependent scalars shared by all terms.
struct Kinematics {
    double E;     // exp(-2 gamma t)
    double tau;   // tau(gamma, t)
    double tau2;  // tau(2 gamma, t)
    double phi;   // (t - tau) / (2 gamma)
    double w;     // width
    double A2;    // r^2 coefficient of a_j
    double B1;    // r coefficient of b_j
};

Kinematics kinematics(double sigma0, const BathParams& b, const PhysicalConstants& c, double t) {
    require_time(t);
    Kinematics k{};
    const double s2 = sigma0 * sigma0;
    k.E = std::exp(-2.0 * b.gamma * t);
    k.tau = scaled_time_tau(b.gamma, t);
    k.tau2 = scaled_time_tau(2.0 * b.gamma, t);
    k.phi = numerics::drift_time(b.gamma, t);
    const double w2 = s2 + c.hbar * c.hbar * k.tau * k.tau / (4.0 * c.m * c.m * s2) +
                      b.D * numerics::thermal_spread(b.gamma, t) / (c.m * c.m);
    if (!(w2 > 0.0)) throw NumericalError("non-positive squared width");
    k.w = std::sqrt(w2);
    k.A2 = -(b.D * k.tau2 / (c.hbar * c.hbar) + k.E * k.E / (8.0 * s2));
    k.B1 = -(b.D * k.tau * k.tau / (c.hbar * c.m) + c.hbar * k.E * k.tau / (4.0 * c.m * s2));
    return k;
}

double planck_value(PlanckReading reading, const PhysicalConstants& c) {
    switch (reading) {
        case PlanckReading::ReducedPlanck:
            return c.hbar;
        case PlanckReading::Unit:
            return 1.0;
        case PlanckReading::FullPlanck:
            return 2.0 * kPi * c.hbar;
    }
    return c.hbar;
}

/// Terms 1..4 of the superposition, unweighted.
std::array<GaussianTerm, 4> superposition_terms(const SuperpositionSpec& spec,
                                                const Kinematics& kin, const PhysicalConstants& c,
                                                PlanckReading reading) {
    const double s2 = spec.sigma0() * spec.sigma0();
    const double L = spec.L;
    const double k = spec.k;
    const double hb = c.hbar;
    std::array<GaussianTerm, 4> t{};
    for (auto& term : t) {
        term.A2 = kin.A2;
        term.B1 = kin.B1;
        term.weight = 1.0;
    }
    t[0].A0 = 0.0;
    t[0].A1 = -kI * (c.m * c.g / hb) * kin.tau;
    t[0].B0 = kI * (-c.g * kin.phi - L / 2.0);

    t[1].A0 = 0.0;
    t[1].A1 = t[0].A1 + kI * k * kin.E;
    t[1].B0 = t[0].B0 + kI * (L + planck_value(reading, c) * k * kin.tau / c.m);

    const Complex lk = L + 2.0 * kI * k * s2;
    t[2].A0 = -(4.0 * k * k * s2 * s2 + 4.0 * kI * k * L * s2 + L * L) / (8.0 * s2);
    t[2].A1 = t[0].A1 + kin.E * lk / (4.0 * s2);
    t[2].B0 = t[0].B0 + lk * (hb * kin.tau / (4.0 * c.m * s2) + 0.5 * kI);

    t[3].A0 = t[2].A0 + kI * k * L;
    t[3].A1 = t[2].A1 - L * kin.E / (2.0 * s2);
    t[3].B0 = t[2].B0 + 2.0 * k * s2 - hb * L * kin.tau / (2.0 * c.m * s2);
    return t;
}

Complex term_value(const GaussianTerm& g, double w, double r, double R) {
    const Complex z = R + kI * g.b(r);
    const Complex expo = g.a(r) - z * z / (2.0 * w * w);
    if (expo.real() < kExpFloor) return 0.0;
    return g.weight * std::exp(expo) / (std::sqrt(2.0 * kPi) * w);
}

}  // namespace

PacketStateCL cl_packet_state(const GaussianPacket& p, const BathParams& b,
                              const PhysicalConstants& c, double t) {
    const auto kin = kinematics(p.sigma0, b, c, t);
    return {p.x0 + p.p0 * kin.tau / c.m - c.g * kin.phi, kin.w, kin.tau};
}

BohmianTrajectory cl_bohmian_trajectory(const GaussianPacket& p, const BathParams& b,
                                        const PhysicalConstants& c, double X0,
                                        const TimeGrid& grid) {
    BohmianTrajectory traj;
    traj.X0 = X0;
    traj.t = grid.samples();
    traj.X.reserve(traj.t.size());
    for (double t : traj.t) {
        const auto s = cl_packet_state(p, b, c, t);
        traj.X.push_back(s.x_t + (X0 - p.x0) * s.w_t / p.sigma0);
    }
    return traj;
}

TermCoefficients term_coefficients(int j, const SuperpositionSpec& spec, const BathParams& b,
                                   const PhysicalConstants& c, double r, double t,
                                   PlanckReading reading) {
    if (j < 1 || j > 4) throw ParameterError("term index j must be in 1..4");
    require_standard_layout(spec, c);
    const auto kin = kinematics(spec.sigma0(), b, c, t);
    const auto terms = superposition_terms(spec, kin, c, reading);
    const auto& g = terms[static_cast<std::size_t>(j - 1)];
    return {g.a(r), g.b(r), j};
}

CLDensityMatrix::CLDensityMatrix(const SuperpositionSpec& spec, const BathParams& b,
                                 const PhysicalConstants& c, double t, PlanckReading reading)
    : t_(t) {
    require_standard_layout(spec, c);
    const auto kin = kinematics(spec.sigma0(), b, c, t);
    w_ = kin.w;
    const double n = superposition_norm(spec, c);
    const double half_n2 = 0.5 * n * n;
    const auto terms = superposition_terms(spec, kin, c, reading);
    const std::array<Complex, 4> weights{1.0, 1.0, std::polar(1.0, spec.alpha),
                                         std::polar(1.0, -spec.alpha)};
    terms_.reserve(4);
    for (std::size_t j = 0; j < 4; ++j) {
        GaussianTerm g = terms[j];
        g.weight = half_n2 * weights[j];
        terms_.push_back(g);
    }
}

CLDensityMatrix::CLDensityMatrix(const GaussianPacket& p, const BathParams& b,
                                 const PhysicalConstants& c, double t)
    : t_(t) {
    const auto kin = kinematics(p.sigma0, b, c, t);
    w_ = kin.w;
    GaussianTerm g;
    g.A0 = 0.0;
    g.A1 = kI * (p.p0 * kin.E - c.m * c.g * kin.tau) / c.hbar;
    g.A2 = kin.A2;
    g.B0 = kI * (p.x0 + p.p0 * kin.tau / c.m - c.g * kin.phi);
    g.B1 = kin.B1;
    g.weight = 1.0;
    terms_.push_back(g);
}

Complex CLDensityMatrix::operator()(double r, double R) const {
    Complex sum = 0.0;
    for (const auto& g : terms_) sum += term_value(g, w_, r, R);
    return sum;
}

Complex CLDensityMatrix::term(std::size_t j, double r, double R) const {
    return term_value(terms_.at(j), w_, r, R);
}

Complex CLDensityMatrix::d_dr(double r, double R) const {
    Complex sum = 0.0;
    for (const auto& g : terms_) {
        const Complex v = term_value(g, w_, r, R);
        if (v == 0.0) continue;
        const Complex da = g.A1 + 2.0 * g.A2 * r;
        sum += v * (da - kI * g.B1 * (R + kI * g.b(r)) / (w_ * w_));
    }
    return sum;
}

Complex CLDensityMatrix::characteristic(double r) const {
    Complex sum = 0.0;
    for (const auto& g : terms_) {
        const Complex a = g.a(r);
        if (a.real() < kExpFloor) continue;
        sum += g.weight * std::exp(a);
    }
    return sum;
}

std::vector<numerics::Interval> CLDensityMatrix::support(double r, double n_widths) const {
    std::vector<numerics::Interval> out;
    for (const auto& g : terms_) {
        const double center = g.b(r).imag();
        out.push_back({center - n_widths * w_, center + n_widths * w_});
    }
    return numerics::merge_intervals(std::move(out));
}

Complex density_matrix_rR(const SuperpositionSpec& spec, const BathParams& b,
                          const PhysicalConstants& c, double r, double R, double t,
                          PlanckReading reading) {
    return CLDensityMatrix(spec, b, c, t, reading)(r, R);
}

double cl_density(const SuperpositionSpec& spec, const BathParams& b, const PhysicalConstants& c,
                  double x, double t) {
    return std::max(0.0, CLDensityMatrix(spec, b, c, t)(0.0, x).real());
}

double cl_density(const GaussianPacket& p, const BathParams& b, const PhysicalConstants& c,
                  double x, double t) {
    return std::max(0.0, CLDensityMatrix(p, b, c, t)(0.0, x).real());
}

double cl_current(const SuperpositionSpec& spec, const BathParams& b, const PhysicalConstants& c,
                  double x, double t) {
    return c.hbar / c.m * CLDensityMatrix(spec, b, c, t).d_dr(0.0, x).imag();
}

double cl_current(const GaussianPacket& p, const BathParams& b, const PhysicalConstants& c,
                  double x, double t) {
    return c.hbar / c.m * CLDensityMatrix(p, b, c, t).d_dr(0.0, x).imag();
}

numerics::DerivativeEstimate<double> cl_current_numeric(const SuperpositionSpec& spec,
                                                        const BathParams& b,
                                                        const PhysicalConstants& c, double x,
                                                        double t) {
    const CLDensityMatrix rho(spec, b, c, t);
    auto im_rho = [&](double r) { return rho(r, x).imag(); };
    auto d = numerics::ridders_derivative(im_rho, 0.0, 0.1 * rho.width());
    d.value *= c.hbar / c.m;
    d.error *= c.hbar / c.m;
    return d;
}

namespace {

double checked_diagonal(const CLDensityMatrix& rho, double x) {
    const double den = rho(0.0, x).real();
    if (!(den >= kDensityFloor)) {
        std::ostringstream os;
        os.precision(17);
        os << "rho(x, x) underflows at x = " << x << ", t = " << rho.time();
        throw DomainError(os.str());
    }
    return den;
}

}  // namespace

Complex local_translation(const SuperpositionSpec& spec, const BathParams& b,
                          const PhysicalConstants& c, double x, double t) {
    const CLDensityMatrix rho(spec, b, c, t);
    const double den = checked_diagonal(rho, x);
    return rho(spec.L, x + spec.L / 2.0) / den;
}

double cl_local_modular(const SuperpositionSpec& spec, const BathParams& b,
                        const PhysicalConstants& c, double x, double t) {
    const CLDensityMatrix rho(spec, b, c, t);
    const double den = checked_diagonal(rho, x);
    const Complex num = rho(spec.L, x + spec.L / 2.0) + rho(-spec.L, x - spec.L / 2.0);
    return num.real() / (2.0 * den);
}

TimeSeries cl_local_modular_on_trajectory(const SuperpositionSpec& spec, const BathParams& b,
                                          const PhysicalConstants& c, double X0,
                                          const TimeGrid& grid, double support_factor) {
    TimeSeries ts;
    const auto traj = cl_bohmian_trajectory(spec.a, b, c, X0, grid);
    ts.t = traj.t;
    ts.value.reserve(ts.t.size());
    if (std::abs(X0 - spec.a.x0) > support_factor * spec.a.sigma0) {
        std::ostringstream os;
        os << "X0 = " << X0 << " lies outside the left packet's effective support";
        ts.warnings.push_back(os.str());
    }
    bool outside = false;
    for (std::size_t i = 0; i < ts.t.size(); ++i) {
        ts.value.push_back(cl_local_modular(spec, b, c, traj.X[i], ts.t[i]));
        if (!outside && !inside_window(Framework::CaldeiraLeggett, spec, b, c, ts.t[i],
                                       support_factor)) {
            outside = true;
            std::ostringstream os;
            os << "samples from t = " << ts.t[i] << " lie outside the non-overlap window";
            ts.warnings.push_back(os.str());
        }
    }
    return ts;
}

numerics::QuadResult<double> cl_modular_quadrature(const SuperpositionSpec& spec,
                                                   const BathParams& b,
                                                   const PhysicalConstants& c, double t,
                                                   double ell) {
    const CLDensityMatrix rho(spec, b, c, t);
    auto windows = rho.support(ell);
    const auto minus = rho.support(-ell);
    windows.insert(windows.end(), minus.begin(), minus.end());
    auto f = [&](double R) { return 0.5 * (rho(ell, R) + rho(-ell, R)).real(); };
    auto q = numerics::integrate_windows(f, windows, 1e-13);
    if (!std::isfinite(q.value)) throw NumericalError("modular quadrature produced a non-finite value");
    return q;
}

ModularClosedForm cl_modular_closed(const SuperpositionSpec& spec, const BathParams& b,
                                    const PhysicalConstants& c, double t) {
    require_time(t);
    const double s2 = spec.sigma0() * spec.sigma0();
    const double L = spec.L;
    const double tau = scaled_time_tau(b.gamma, t);
    const double tau2 = scaled_time_tau(2.0 * b.gamma, t);
    const double gt = b.gamma * tau;  // (1 - e^{-2 gamma t}) / 2
    const double expo = -b.D * L * L * tau2 / (c.hbar * c.hbar) - L * L * gt * gt / (2.0 * s2) -
                        spec.k * spec.k * s2 / 2.0;
    ModularClosedForm out{};
    out.envelope = 0.5 * std::exp(expo);
    out.phase = spec.alpha - L * tau * (spec.k * b.gamma + c.m * c.g / c.hbar);
    out.value = out.envelope * std::cos(out.phase);
    out.approximate = !inside_window(Framework::CaldeiraLeggett, spec, b, c, t);
    return out;
}

numerics::QuadResult<double> trace_check(const SuperpositionSpec& spec, const BathParams& b,
                                         const PhysicalConstants& c, double t) {
    return cl_modular_quadrature(spec, b, c, t, 0.0);
}

numerics::QuadResult<double> l1_coherence(const SuperpositionSpec& spec, const BathParams& b,
                                          const PhysicalConstants& c, double t, double n_widths,
                                          double tol) {
    const CLDensityMatrix rho(spec, b, c, t);
    const double w2 = rho.width() * rho.width();
    // int dR |rho_j(r, R)| = |weight| exp(q(r)) with q quadratic; its peak and
    // spread fix the r-windows.
    std::vector<numerics::Interval> r_windows;
    for (const auto& g : rho.terms()) {
        const double q2 = g.A2 + g.B1 * g.B1 / (2.0 * w2);
        const double q1 = g.A1.real() + g.B0.real() * g.B1 / w2;
        if (!(q2 < 0.0)) throw NumericalError("coherence profile does not decay in r");
        const double center = -q1 / (2.0 * q2);
        const double sd = 1.0 / std::sqrt(-2.0 * q2);
        r_windows.push_back({center - n_widths * sd, center + n_widths * sd});
    }
    double inner_error = 0.0;
    auto outer = [&](double r) {
        auto inner = numerics::integrate_windows(
            [&](double R) { return std::abs(rho(r, R)); }, rho.support(r, n_widths), tol);
        inner_error = std::max(inner_error, inner.error);
        return inner.value;
    };
    auto q = numerics::integrate_windows(outer, r_windows, tol);
    if (!std::isfinite(q.value)) throw NumericalError("coherence quadrature did not converge");
    double span = 0.0;
    for (const auto& w : numerics::merge_intervals(r_windows)) span += w.hi - w.lo;
    q.error += inner_error * span;
    return q;
}

double overlap_magnitude(const SuperpositionSpec& spec, const BathParams& b,
                         const PhysicalConstants& c, double t) {
    const auto sa = cl_packet_state(spec.a, b, c, t);
    const auto sb = cl_packet_state(spec.b, b, c, t);
    const double d = sb.x_t - sa.x_t;
    return std::exp(-d * d / (8.0 * sa.w_t * sb.w_t));
}

}  // namespace modvar
