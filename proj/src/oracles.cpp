#include "modvar/oracles.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/numeric/odeint.hpp>

#include "modvar/schrodinger.hpp"

namespace modvar::oracle {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kWindowWidths = 12.0;

// FFTW's planner is not thread-safe.
std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

void check_quadrature(const numerics::QuadResult<Complex>& q, const char* what) {
    if (!std::isfinite(q.value.real()) || !std::isfinite(q.value.imag())) {
        throw NumericalError(std::string(what) + ": non-finite quadrature result");
    }
    if (q.error > 1e-6 * q.l1 + 1e-300) {
        std::ostringstream os;
        os << what << ": quadrature error estimate " << q.error << " exceeds tolerance (L1 "
           << q.l1 << ")";
        throw NumericalError(os.str());
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Characteristic function

CharacteristicFunction::CharacteristicFunction(ModularSource source, double t)
    : src_(std::move(source)), t_(t) {
    if (!(t >= 0.0)) throw ParameterError("time must be >= 0");
    for (const auto* p : {&src_.spec.a, &src_.spec.b}) {
        if (src_.kind == ModularSource::Kind::Schrodinger) {
            const auto s = packet_state(*p, src_.c, t);
            centers_.emplace_back(s.x_t, s.sigma_t);
        } else {
            const auto s = cl_packet_state(*p, src_.bath, src_.c, t);
            centers_.emplace_back(s.x_t, s.w_t);
        }
    }
}

std::vector<numerics::Interval> CharacteristicFunction::windows(double r) const {
    std::vector<numerics::Interval> out;
    for (const auto& [x, w] : centers_) {
        out.push_back({x - r / 2.0 - kWindowWidths * w, x - r / 2.0 + kWindowWidths * w});
        out.push_back({x + r / 2.0 - kWindowWidths * w, x + r / 2.0 + kWindowWidths * w});
    }
    return out;
}

Complex CharacteristicFunction::integrand(double r, double R) const {
    const auto& s = src_.spec;
    return superposed_amplitude(s, src_.c, R + r / 2.0, t_) *
           std::conj(superposed_amplitude(s, src_.c, R - r / 2.0, t_));
}

Complex CharacteristicFunction::integrand_dr(double r, double R) const {
    const auto& s = src_.spec;
    const double xp = R + r / 2.0;
    const double xm = R - r / 2.0;
    return 0.5 * (superposed_amplitude_dx(s, src_.c, xp, t_) *
                      std::conj(superposed_amplitude(s, src_.c, xm, t_)) -
                  superposed_amplitude(s, src_.c, xp, t_) *
                      std::conj(superposed_amplitude_dx(s, src_.c, xm, t_)));
}

numerics::QuadResult<Complex> CharacteristicFunction::operator()(double r) const {
    numerics::QuadResult<Complex> q;
    if (src_.kind == ModularSource::Kind::CaldeiraLeggett) {
        const CLDensityMatrix rho(src_.spec, src_.bath, src_.c, t_);
        q = numerics::integrate_windows([&](double R) { return rho(r, R); },
                                        rho.support(r, kWindowWidths));
    } else {
        q = numerics::integrate_windows([&](double R) { return integrand(r, R); }, windows(r));
    }
    check_quadrature(q, "characteristic function");
    return q;
}

numerics::QuadResult<Complex> CharacteristicFunction::derivative(double r) const {
    numerics::QuadResult<Complex> q;
    if (src_.kind == ModularSource::Kind::CaldeiraLeggett) {
        const CLDensityMatrix rho(src_.spec, src_.bath, src_.c, t_);
        q = numerics::integrate_windows([&](double R) { return rho.d_dr(r, R); },
                                        rho.support(r, kWindowWidths));
    } else {
        q = numerics::integrate_windows([&](double R) { return integrand_dr(r, R); },
                                        windows(r));
    }
    check_quadrature(q, "characteristic-function derivative");
    return q;
}

Complex characteristic_modular(const ModularSource& source, double t, double ell) {
    return CharacteristicFunction(source, t)(ell).value;
}

TranslatedMoment momentum_first_moment_translated(const ModularSource& source, double t,
                                                  double ell) {
    const CharacteristicFunction chi(source, t);
    const double hbar = source.c.hbar;
    TranslatedMoment out{};
    out.value = -kI * hbar * chi.derivative(ell).value;
    const double h0 = 0.2 * source.spec.sigma0();
    const auto d = numerics::ridders_derivative([&](double r) { return chi(r).value; }, ell, h0);
    out.richardson = -kI * hbar * d.value;
    out.richardson_error = hbar * d.error;
    return out;
}

// ---------------------------------------------------------------------------
// Residual reports

bool ResidualReport::passes(double tol) const {
    return relative_residual <= tol && convergence_ratio >= 3.5 && convergence_ratio <= 4.5;
}

std::string ResidualReport::summary() const {
    std::ostringstream os;
    os.precision(4);
    os << "relative residual " << relative_residual << " (abs " << max_abs_residual
       << ", scale " << scale << "), convergence ratio " << convergence_ratio;
    return os.str();
}

ResidualReport step_sweep(const std::function<std::vector<Complex>(double)>& residual_at,
                          double scale, double h0, int n_steps) {
    ResidualReport rep;
    rep.scale = scale;
    std::vector<std::vector<Complex>> res;
    double h = h0;
    for (int k = 0; k < n_steps; ++k, h /= 2.0) {
        res.push_back(residual_at(h));
        double mx = 0.0;
        for (const auto& v : res.back()) mx = std::max(mx, std::abs(v));
        rep.steps.push_back(h);
        rep.residuals.push_back(mx);
    }
    // Richardson: (4 R(h/2) - R(h)) / 3 removes the h^2 term.
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < res.size(); ++k) {
        double mx = 0.0;
        for (std::size_t i = 0; i < res[k].size(); ++i) {
            mx = std::max(mx, std::abs((4.0 * res[k][i] - res[k - 1][i]) / 3.0));
        }
        best = std::min(best, mx);
    }
    rep.max_abs_residual = res.size() > 1 ? best : rep.residuals.front();
    rep.relative_residual = scale > 0.0 ? rep.max_abs_residual / scale : 0.0;

    const auto floor_it = std::min_element(rep.residuals.begin(), rep.residuals.end());
    const auto k_floor = static_cast<std::size_t>(floor_it - rep.residuals.begin());
    std::vector<double> ratios;
    for (std::size_t k = 1; k <= k_floor; ++k) {
        if (rep.residuals[k] > 0.0) ratios.push_back(rep.residuals[k - 1] / rep.residuals[k]);
    }
    if (!ratios.empty()) {
        std::sort(ratios.begin(), ratios.end());
        const std::size_t n = ratios.size();
        rep.convergence_ratio =
            n % 2 == 1 ? ratios[n / 2] : 0.5 * (ratios[n / 2 - 1] + ratios[n / 2]);
    }
    return rep;
}

ResidualReport heisenberg_rhs_check(const SuperpositionSpec& spec, const BathParams& b,
                                    const PhysicalConstants& c, double t) {
    const auto src = ModularSource::from_bath(spec, b, c);
    const double L = spec.L;
    const Complex chi = characteristic_modular(src, t, L);
    const auto moment = momentum_first_moment_translated(src, t, L);
    const Complex rot = (-kI * c.m * c.g * L / c.hbar - b.D * L * L / (c.hbar * c.hbar)) * chi;
    const Complex fric = -2.0 * kI * b.gamma * (L / c.hbar) * moment.value;
    const Complex rhs = rot + fric;
    const double scale = std::max({std::abs(rot), std::abs(fric), 1e-300});
    auto residual_at = [&](double h) {
        const Complex lhs = (characteristic_modular(src, t + h, L) -
                             characteristic_modular(src, t - h, L)) /
                            (2.0 * h);
        return std::vector<Complex>{lhs - rhs};
    };
    const double h0 = std::min(1e-2, 0.5 * t);
    return step_sweep(residual_at, scale, h0, 10);
}

ResidualReport schrodinger_pde_residual(const PureField& psi, const PhysicalConstants& c,
                                        const std::vector<std::array<double, 2>>& points) {
    double scale = 0.0;
    for (const auto& [x, t] : points) {
        const Complex f = psi(x, t);
        // Term sizes from a moderate step; only the order of magnitude matters.
        const double h = 1e-3;
        const Complex ft = (psi(x, t + h) - psi(x, t - h)) / (2.0 * h);
        const Complex fxx = (psi(x + h, t) - 2.0 * f + psi(x - h, t)) / (h * h);
        scale = std::max({scale, std::abs(c.hbar * ft),
                          std::abs(c.hbar * c.hbar / (2.0 * c.m) * fxx),
                          std::abs(c.m * c.g * x * f)});
    }
    auto residual_at = [&](double h) {
        std::vector<Complex> out;
        out.reserve(points.size());
        for (const auto& [x, t] : points) {
            const Complex f = psi(x, t);
            const Complex ft = (psi(x, t + h) - psi(x, t - h)) / (2.0 * h);
            const Complex fxx = (psi(x + h, t) - 2.0 * f + psi(x - h, t)) / (h * h);
            out.push_back(kI * c.hbar * ft + c.hbar * c.hbar / (2.0 * c.m) * fxx -
                          c.m * c.g * x * f);
        }
        return out;
    };
    return step_sweep(residual_at, scale);
}

ResidualReport cl_pde_residual(const DensityField& rho, const BathParams& b,
                               const PhysicalConstants& c,
                               const std::vector<std::array<double, 3>>& points) {
    struct Terms {
        Complex dt, mixed, drift, diffusion, potential;
    };
    auto terms = [&](double r, double R, double t, double h) {
        const Complex f = rho(r, R, t);
        Terms out;
        out.dt = (rho(r, R, t + h) - rho(r, R, t - h)) / (2.0 * h);
        const Complex f_rR = (rho(r + h, R + h, t) - rho(r + h, R - h, t) -
                              rho(r - h, R + h, t) + rho(r - h, R - h, t)) /
                             (4.0 * h * h);
        const Complex f_r = (rho(r + h, R, t) - rho(r - h, R, t)) / (2.0 * h);
        out.mixed = kI * c.hbar / c.m * f_rR;
        out.drift = -2.0 * b.gamma * r * f_r;
        out.diffusion = -b.D / (c.hbar * c.hbar) * r * r * f;
        out.potential = -kI * c.m * c.g / c.hbar * r * f;
        return out;
    };
    double scale = 0.0;
    for (const auto& [r, R, t] : points) {
        const auto tm = terms(r, R, t, 1e-3);
        scale = std::max({scale, std::abs(tm.dt), std::abs(tm.mixed), std::abs(tm.drift),
                          std::abs(tm.diffusion), std::abs(tm.potential)});
    }
    auto residual_at = [&](double h) {
        std::vector<Complex> out;
        out.reserve(points.size());
        for (const auto& [r, R, t] : points) {
            const auto tm = terms(r, R, t, h);
            out.push_back(tm.dt - (tm.mixed + tm.drift + tm.diffusion + tm.potential));
        }
        return out;
    };
    return step_sweep(residual_at, scale);
}

std::vector<std::array<double, 3>> cl_sample_points(const SuperpositionSpec& spec,
                                                    const BathParams& b,
                                                    const PhysicalConstants& c, int n,
                                                    std::uint64_t seed, double t_lo,
                                                    double t_hi) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> tdist(t_lo, t_hi);
    const double s0 = spec.sigma0();
    const std::array<double, 4> r_center{0.0, 0.0, spec.L, -spec.L};
    std::vector<std::array<double, 3>> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int j = i % 4;
        const double t = tdist(rng);
        const double r = r_center[static_cast<std::size_t>(j)] + 2.0 * s0 * unit(rng);
        const auto coef = term_coefficients(j + 1, spec, b, c, r, t);
        const double w = cl_packet_state(spec.a, b, c, t).w_t;
        const double R = coef.b.imag() + 2.0 * w * unit(rng);
        pts.push_back({r, R, t});
    }
    return pts;
}

ResidualReport pde_residual(Framework f, const SuperpositionSpec& spec, const BathParams& b,
                            const PhysicalConstants& c, int n_points, std::uint64_t seed,
                            PlanckReading reading) {
    if (f == Framework::Schrodinger) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        std::uniform_real_distribution<double> tdist(0.1, 2.0);
        std::vector<std::array<double, 2>> pts;
        for (int i = 0; i < n_points; ++i) {
            const double t = tdist(rng);
            const auto& p = i % 2 == 0 ? spec.a : spec.b;
            const auto s = packet_state(p, c, t);
            pts.push_back({s.x_t + 3.0 * s.sigma_t * unit(rng), t});
        }
        auto psi = [&](double x, double t) { return superposed_amplitude(spec, c, x, t); };
        return schrodinger_pde_residual(psi, c, pts);
    }
    const auto pts = cl_sample_points(spec, b, c, n_points, seed);
    auto rho = [&](double r, double R, double t) {
        return density_matrix_rR(spec, b, c, r, R, t, reading);
    };
    return cl_pde_residual(rho, b, c, pts);
}

// ---------------------------------------------------------------------------
// Trajectories

BohmianTrajectory trajectory_ode_oracle(const VelocityField& v, double X0, const TimeGrid& grid,
                                        double tol) {
    namespace ode = boost::numeric::odeint;
    using State = std::vector<double>;
    BohmianTrajectory traj;
    traj.X0 = X0;
    const auto times = grid.samples();
    State x{X0};
    auto rhs = [&](const State& s, State& dsdt, double t) { dsdt[0] = v(s[0], t); };
    auto observer = [&](const State& s, double t) {
        traj.t.push_back(t);
        traj.X.push_back(s[0]);
    };
    try {
        auto stepper = ode::make_dense_output(tol, tol, ode::runge_kutta_dopri5<State>());
        const double dt0 = std::max(1e-6, (grid.t_end - grid.t_start) / 1000.0);
        ode::integrate_times(stepper, rhs, x, times.begin(), times.end(), dt0, observer,
                             ode::max_step_checker(100000));
    } catch (const std::exception& e) {
        throw NumericalError(std::string("trajectory integration failed: ") + e.what());
    }
    if (traj.t.size() != times.size()) throw NumericalError("trajectory integration incomplete");
    return traj;
}

// ---------------------------------------------------------------------------
// Grid propagation

namespace {

struct Box {
    double lo;
    double hi;
};

Box propagation_box(const SuperpositionSpec& spec, const PhysicalConstants& c, double t_end,
                    double margin_widths, double extra) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double smax = 0.0;
    constexpr int kProbe = 64;
    for (int i = 0; i <= kProbe; ++i) {
        const double t = t_end * i / kProbe;
        for (const auto* p : {&spec.a, &spec.b}) {
            const auto s = packet_state(*p, c, t);
            lo = std::min(lo, s.x_t);
            hi = std::max(hi, s.x_t);
            smax = std::max(smax, s.sigma_t);
        }
    }
    return {lo - margin_widths * smax - extra, hi + margin_widths * smax + extra};
}

class FftPlan {
public:
    explicit FftPlan(std::vector<Complex>& data) {
        auto* p = reinterpret_cast<fftw_complex*>(data.data());
        const int n = static_cast<int>(data.size());
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fwd_ = fftw_plan_dft_1d(n, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_1d(n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~FftPlan() {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
    }
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;
    void forward() { fftw_execute(fwd_); }
    void backward() { fftw_execute(bwd_); }

private:
    fftw_plan fwd_;
    fftw_plan bwd_;
};

std::vector<double> wavenumbers(int n, double dx) {
    std::vector<double> k(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const int m = j < n / 2 ? j : j - n;
        k[static_cast<std::size_t>(j)] = 2.0 * kPi * m / (n * dx);
    }
    return k;
}

double edge_density(const std::vector<Complex>& psi) {
    const std::size_t n = psi.size();
    const std::size_t edge = std::max<std::size_t>(1, n / 50);
    double mx = 0.0;
    for (std::size_t i = 0; i < edge; ++i) {
        mx = std::max({mx, std::norm(psi[i]), std::norm(psi[n - 1 - i])});
    }
    return mx;
}

}  // namespace

GridResult grid_propagator(const SuperpositionSpec& spec, const PhysicalConstants& c,
                           const GridSpec& grid) {
    if (grid.n_points < 16 || (grid.n_points & (grid.n_points - 1)) != 0) {
        throw ParameterError("grid point count must be a power of two >= 16");
    }
    if (!(grid.dt > 0.0) || !(grid.t_end >= 0.0)) throw ParameterError("invalid time stepping");
    const Box box = propagation_box(spec, c, grid.t_end, grid.margin_widths, 0.0);
    const int n = grid.n_points;
    GridResult out;
    out.dx = (box.hi - box.lo) / n;
    out.x.resize(static_cast<std::size_t>(n));
    out.psi.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        out.x[ju] = box.lo + j * out.dx;
        out.psi[ju] = superposed_amplitude(spec, c, out.x[ju], 0.0);
    }
    auto norm = [&]() {
        double s = 0.0;
        for (const auto& v : out.psi) s += std::norm(v);
        return s * out.dx;
    };
    out.norm_initial = norm();

    const int steps = std::max(1, static_cast<int>(std::lround(grid.t_end / grid.dt)));
    const double dt = grid.t_end / steps;
    const auto k = wavenumbers(n, out.dx);
    std::vector<Complex> half_v(static_cast<std::size_t>(n));
    std::vector<Complex> kin(static_cast<std::size_t>(n));
    for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
        half_v[j] = std::polar(1.0, -c.m * c.g * out.x[j] * dt / (2.0 * c.hbar));
        kin[j] = std::polar(1.0, -c.hbar * k[j] * k[j] * dt / (2.0 * c.m)) / static_cast<double>(n);
    }
    FftPlan plan(out.psi);
    constexpr double kLeakage = 1e-12;
    for (int s = 0; s < steps; ++s) {
        for (std::size_t j = 0; j < out.psi.size(); ++j) out.psi[j] *= half_v[j];
        plan.forward();
        for (std::size_t j = 0; j < out.psi.size(); ++j) out.psi[j] *= kin[j];
        plan.backward();
        for (std::size_t j = 0; j < out.psi.size(); ++j) out.psi[j] *= half_v[j];
        if (s % 200 == 0 || s == steps - 1) {
            out.boundary_density = std::max(out.boundary_density, edge_density(out.psi));
            if (out.boundary_density > kLeakage) {
                std::ostringstream os;
                os << "density " << out.boundary_density
                   << " reached the box edge; enlarge the box (margin_widths)";
                throw DomainError(os.str());
            }
        }
    }
    out.norm_final = norm();
    return out;
}

double grid_l2_error(const GridResult& r, const SuperpositionSpec& spec,
                     const PhysicalConstants& c, double t) {
    double s = 0.0;
    for (std::size_t j = 0; j < r.x.size(); ++j) {
        s += std::norm(r.psi[j] - superposed_amplitude(spec, c, r.x[j], t));
    }
    return std::sqrt(s * r.dx);
}

Complex momentum_space_modular(const SuperpositionSpec& spec, const PhysicalConstants& c,
                               double t, double ell, int n_points) {
    // The box leaves room for a shift by ell without wrapping onto a packet.
    const Box box = propagation_box(spec, c, t, kWindowWidths, std::abs(ell));
    const double dx = (box.hi - box.lo) / n_points;
    std::vector<Complex> psi(static_cast<std::size_t>(n_points));
    for (int j = 0; j < n_points; ++j) {
        psi[static_cast<std::size_t>(j)] = superposed_amplitude(spec, c, box.lo + j * dx, t);
    }
    {
        FftPlan plan(psi);
        plan.forward();
    }
    const auto k = wavenumbers(n_points, dx);
    double total = 0.0;
    Complex acc = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j) {
        const double w = std::norm(psi[j]);
        total += w;
        acc += w * std::polar(1.0, k[j] * ell);
    }
    return acc / total;
}

// ---------------------------------------------------------------------------
// Two particles

namespace {

struct Nodes {
    std::vector<double> x;
    std::vector<double> w;
};

/// Composite 10-point Gauss-Legendre rule over merged windows, panels no wider
/// than `panel`.
Nodes composite_nodes(std::vector<numerics::Interval> windows, double panel) {
    using Rule = boost::math::quadrature::gauss<double, 10>;
    const auto& abs = Rule::abscissa();
    const auto& wts = Rule::weights();
    Nodes out;
    for (const auto& win : numerics::merge_intervals(std::move(windows))) {
        const int n = std::max(1, static_cast<int>(std::ceil((win.hi - win.lo) / panel)));
        const double h = (win.hi - win.lo) / n;
        for (int p = 0; p < n; ++p) {
            const double mid = win.lo + (p + 0.5) * h;
            for (std::size_t i = 0; i < abs.size(); ++i) {
                const double off = 0.5 * h * abs[i];
                const double wt = 0.5 * h * wts[i];
                out.x.push_back(mid + off);
                out.w.push_back(wt);
                if (abs[i] != 0.0) {
                    out.x.push_back(mid - off);
                    out.w.push_back(wt);
                }
            }
        }
    }
    return out;
}

}  // namespace

Complex two_particle_modular_bruteforce(const SuperpositionSpec& spec, const GaussianPacket& chi,
                                        StatisticsKind s, const PhysicalConstants& c) {
    const Complex ea = std::polar(1.0, spec.alpha);
    auto phi = [&](double x) {
        return (packet_amplitude(spec.a, c, x, 0.0) + ea * packet_amplitude(spec.b, c, x, 0.0)) /
               std::sqrt(2.0);
    };
    auto chi_amp = [&](double x) { return packet_amplitude(chi, c, x, 0.0); };
    const double sign = s == StatisticsKind::FD ? -1.0 : 1.0;
    const bool exchange = s != StatisticsKind::MB;
    const double L = spec.L;

    std::vector<numerics::Interval> windows;
    double smin = std::numeric_limits<double>::infinity();
    for (const auto* p : {&spec.a, &spec.b, &chi}) {
        const double h = kWindowWidths * p->sigma0;
        windows.push_back({p->x0 - h, p->x0 + h});
        smin = std::min(smin, p->sigma0);
    }
    // Both coordinates use the packet windows: Psi(x1 + L, x2) only matters
    // where Psi(x1, x2) does.
    const Nodes n = composite_nodes(windows, 0.5 * smin);
    const std::size_t m = n.x.size();
    std::vector<Complex> phi0(m), chi0(m), phiL(m), chiL(m);
    for (std::size_t i = 0; i < m; ++i) {
        phi0[i] = phi(n.x[i]);
        chi0[i] = chi_amp(n.x[i]);
        phiL[i] = phi(n.x[i] + L);
        chiL[i] = chi_amp(n.x[i] + L);
    }
    Complex num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < m; ++j) {      // x2
        for (std::size_t i = 0; i < m; ++i) {  // x1
            Complex v = phi0[i] * chi0[j];
            Complex vL = phiL[i] * chi0[j];
            if (exchange) {
                v += sign * chi0[i] * phi0[j];
                vL += sign * chiL[i] * phi0[j];
            }
            const double w = n.w[i] * n.w[j];
            num += w * std::conj(v) * vL;
            den += w * std::norm(v);
        }
    }
    if (!(den > 0.0)) throw NumericalError("two-particle state has zero norm");
    return num / den;
}

}  // namespace modvar::oracle
