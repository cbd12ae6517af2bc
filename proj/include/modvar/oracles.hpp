#pragma once

// Independent numerical checks of the closed forms: characteristic-function
// quadrature, PDE residuals with step sweeps, ODE-integrated trajectories,
// split-operator grid propagation, a momentum-space route for the
// translation sign, and a brute-force two-particle quadrature.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "modvar/cl_dynamics.hpp"
#include "modvar/core_model.hpp"
#include "modvar/numerics.hpp"
#include "modvar/overlap_window.hpp"
#include "modvar/two_particle.hpp"

namespace modvar::oracle {

/// Where a characteristic function comes from: the pure-state Schrodinger
/// superposition or the Caldeira-Leggett density matrix.
struct ModularSource {
    enum class Kind { Schrodinger, CaldeiraLeggett };
    Kind kind = Kind::Schrodinger;
    SuperpositionSpec spec;
    BathParams bath;
    PhysicalConstants c;

    static ModularSource schrodinger(const SuperpositionSpec& spec, const PhysicalConstants& c) {
        return {Kind::Schrodinger, spec, BathParams::none(), c};
    }
    static ModularSource caldeira_leggett(const SuperpositionSpec& spec, const BathParams& b,
                                          const PhysicalConstants& c) {
        return {Kind::CaldeiraLeggett, spec, b, c};
    }
    /// Schrodinger source when the bath is switched off, CL otherwise.
    static ModularSource from_bath(const SuperpositionSpec& spec, const BathParams& b,
                                   const PhysicalConstants& c) {
        if (b.gamma == 0.0 && b.D == 0.0) return schrodinger(spec, c);
        return caldeira_leggett(spec, b, c);
    }
};

/// chi(r, t) = int dR rho(r, R, t), with rho(r, R) = Psi(R + r/2) Psi*(R - r/2)
/// for a pure state.
class CharacteristicFunction {
public:
    CharacteristicFunction(ModularSource source, double t);

    numerics::QuadResult<Complex> operator()(double r) const;
    /// d chi / dr from the analytically differentiated integrand.
    numerics::QuadResult<Complex> derivative(double r) const;

    double time() const { return t_; }

private:
    std::vector<numerics::Interval> windows(double r) const;
    Complex integrand(double r, double R) const;
    Complex integrand_dr(double r, double R) const;

    ModularSource src_;
    double t_;
    std::vector<std::pair<double, double>> centers_;  // (center, width) per packet
};

/// <e^{i p ell / hbar}> = chi(ell, t). Throws NumericalError on non-convergence.
Complex characteristic_modular(const ModularSource& source, double t, double ell);

struct TranslatedMoment {
    Complex value;       // (hbar / i) chi'(ell) from the differentiated integrand
    Complex richardson;  // same from an extrapolated central difference of chi
    double richardson_error;
};

/// <p e^{i p ell / hbar}> by two independent routes.
TranslatedMoment momentum_first_moment_translated(const ModularSource& source, double t,
                                                  double ell);

struct ResidualReport {
    double max_abs_residual = 0.0;   // Richardson-extrapolated, best step
    double relative_residual = 0.0;  // max_abs_residual / scale
    double scale = 0.0;              // largest term magnitude
    double convergence_ratio = 0.0;  // median R(h) / R(h/2) before the floor
    std::vector<double> steps;
    std::vector<double> residuals;   // plain central-difference residual per step

    /// relative <= tol and second-order convergence observed.
    bool passes(double tol) const;
    std::string summary() const;
};

/// Builds a report from a step sweep. `residual_at(h)` returns the per-point
/// residuals for step h; `scale` is the largest term magnitude.
ResidualReport step_sweep(const std::function<std::vector<Complex>(double)>& residual_at,
                          double scale, double h0 = 1e-2, int n_steps = 12);

/// d/dt <e^{i p L / hbar}> against
/// (-i m g L / hbar - D L^2 / hbar^2) <e^{i p L / hbar}> - 2 i gamma (L / hbar) <p e^{i p L / hbar}>.
ResidualReport heisenberg_rhs_check(const SuperpositionSpec& spec, const BathParams& b,
                                    const PhysicalConstants& c, double t);

using PureField = std::function<Complex(double x, double t)>;
using DensityField = std::function<Complex(double r, double R, double t)>;

/// i hbar psi_t + (hbar^2 / 2m) psi_xx - m g x psi at points (x, t).
ResidualReport schrodinger_pde_residual(const PureField& psi, const PhysicalConstants& c,
                                        const std::vector<std::array<double, 2>>& points);

/// rho_t - [(i hbar / m) rho_rR - 2 gamma r rho_r - (D / hbar^2) r^2 rho - i (m g / hbar) r rho]
/// at points (r, R, t).
ResidualReport cl_pde_residual(const DensityField& rho, const BathParams& b,
                               const PhysicalConstants& c,
                               const std::vector<std::array<double, 3>>& points);

/// Residual of the closed-form evolution of `spec`. For the Schrodinger
/// framework the bath is ignored; for CL the coefficient reading can be varied.
ResidualReport pde_residual(Framework f, const SuperpositionSpec& spec, const BathParams& b,
                            const PhysicalConstants& c, int n_points, std::uint64_t seed,
                            PlanckReading reading = PlanckReading::ReducedPlanck);

/// Deterministic sample points inside the support of the density-matrix terms.
std::vector<std::array<double, 3>> cl_sample_points(const SuperpositionSpec& spec,
                                                    const BathParams& b,
                                                    const PhysicalConstants& c, int n,
                                                    std::uint64_t seed, double t_lo = 0.1,
                                                    double t_hi = 2.0);

using VelocityField = std::function<double(double x, double t)>;

/// Adaptive Dormand-Prince integration of dX/dt = v(X, t), local error 1e-10.
BohmianTrajectory trajectory_ode_oracle(const VelocityField& v, double X0, const TimeGrid& grid,
                                        double tol = 1e-10);

struct GridSpec {
    int n_points = 2048;
    double dt = 2.5e-4;
    double t_end = 2.0;
    double margin_widths = 15.0;
};

struct GridResult {
    std::vector<double> x;
    std::vector<Complex> psi;
    double dx = 0.0;
    double norm_initial = 0.0;
    double norm_final = 0.0;
    double boundary_density = 0.0;  // max |psi|^2 in the outer 2% of the box
};

/// Spectral split-operator (Strang) propagation of the superposition on a
/// periodic box. Throws DomainError when density reaches the box edges.
GridResult grid_propagator(const SuperpositionSpec& spec, const PhysicalConstants& c,
                           const GridSpec& grid);

/// sqrt(int |psi_grid - Psi|^2 dx) at the final time.
double grid_l2_error(const GridResult& r, const SuperpositionSpec& spec,
                     const PhysicalConstants& c, double t);

/// sum_k |Psi~(k)|^2 e^{i k ell} on a DFT grid: the momentum-space definition
/// of <e^{i p ell / hbar}>.
Complex momentum_space_modular(const SuperpositionSpec& spec, const PhysicalConstants& c,
                               double t, double ell, int n_points = 8192);

/// <e^{i p_1 L / hbar}> of the normalized two-particle state
/// Phi(x1) chi(x2) +- chi(x1) Phi(x2) by 2D quadrature (MB: no exchange term).
Complex two_particle_modular_bruteforce(const SuperpositionSpec& spec, const GaussianPacket& chi,
                                        StatisticsKind s, const PhysicalConstants& c);

}  // namespace modvar::oracle
