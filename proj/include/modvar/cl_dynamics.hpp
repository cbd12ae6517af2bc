#pragma once

// Caldeira-Leggett evolution of the two-packet superposition in a uniform
// field. The density matrix is kept in centre/relative coordinates
// (r, R) = (x - x', (x + x') / 2) and every term has the Gaussian form
//   rho_j = exp(a_j(r) - (R + i b_j(r))^2 / (2 w^2)) / (sqrt(2 pi) w)
// with a_j quadratic and b_j linear in r.

#include <array>

#include "modvar/core_model.hpp"
#include "modvar/numerics.hpp"

namespace modvar {

struct PacketStateCL {
    double x_t;
    double w_t;
    double tau;
};

PacketStateCL cl_packet_state(const GaussianPacket& p, const BathParams& b,
                              const PhysicalConstants& c, double t);

BohmianTrajectory cl_bohmian_trajectory(const GaussianPacket& p, const BathParams& b,
                                        const PhysicalConstants& c, double X0,
                                        const TimeGrid& grid);

/// How the constant written "h" in the second-term coefficient is read.
/// ReducedPlanck is the correct reading; the others exist to show that the
/// residual check rejects them.
enum class PlanckReading { ReducedPlanck, Unit, FullPlanck };

struct TermCoefficients {
    Complex a;
    Complex b;
    int j;
};

/// a_j(r, t) and b_j(r, t) for j in 1..4. Requires the standard two-packet
/// layout (centers -L/2 and L/2, kick hbar k on the right packet).
TermCoefficients term_coefficients(int j, const SuperpositionSpec& spec, const BathParams& b,
                                   const PhysicalConstants& c, double r, double t,
                                   PlanckReading reading = PlanckReading::ReducedPlanck);

/// One Gaussian term: a(r) = A0 + A1 r + A2 r^2, b(r) = B0 + B1 r, weighted by
/// `weight` in the density matrix.
struct GaussianTerm {
    Complex A0, A1;
    double A2 = 0.0;
    Complex B0;
    double B1 = 0.0;
    Complex weight;

    Complex a(double r) const { return A0 + r * (A1 + r * A2); }
    Complex b(double r) const { return B0 + r * B1; }
};

/// Density matrix at a fixed time, evaluated anywhere in (r, R).
class CLDensityMatrix {
public:
    /// Two-packet superposition, weights (N^2 / 2){1, 1, e^{i alpha}, e^{-i alpha}}.
    CLDensityMatrix(const SuperpositionSpec& spec, const BathParams& b, const PhysicalConstants& c,
                    double t, PlanckReading reading = PlanckReading::ReducedPlanck);

    /// Single packet (pure Gaussian initial state).
    CLDensityMatrix(const GaussianPacket& p, const BathParams& b, const PhysicalConstants& c,
                    double t);

    Complex operator()(double r, double R) const;
    /// d rho / d r, analytic.
    Complex d_dr(double r, double R) const;
    /// Contribution of term j (0-based) including its weight.
    Complex term(std::size_t j, double r, double R) const;

    /// Exact R-integral: sum_j weight_j exp(a_j(r)).
    Complex characteristic(double r) const;

    /// R-windows (center +- 12 w) of all terms at offset r.
    std::vector<numerics::Interval> support(double r, double n_widths = 12.0) const;

    double width() const { return w_; }
    double time() const { return t_; }
    const std::vector<GaussianTerm>& terms() const { return terms_; }

private:
    std::vector<GaussianTerm> terms_;
    double w_ = 1.0;
    double t_ = 0.0;
};

Complex density_matrix_rR(const SuperpositionSpec& spec, const BathParams& b,
                          const PhysicalConstants& c, double r, double R, double t,
                          PlanckReading reading = PlanckReading::ReducedPlanck);

/// Diagonal rho(0, x, t).
double cl_density(const SuperpositionSpec& spec, const BathParams& b, const PhysicalConstants& c,
                  double x, double t);
double cl_density(const GaussianPacket& p, const BathParams& b, const PhysicalConstants& c,
                  double x, double t);

/// j = (hbar / m) Im d rho / d r at r = 0, from the analytic derivative.
double cl_current(const SuperpositionSpec& spec, const BathParams& b, const PhysicalConstants& c,
                  double x, double t);
double cl_current(const GaussianPacket& p, const BathParams& b, const PhysicalConstants& c,
                  double x, double t);

/// Same current from an extrapolated central difference in r.
numerics::DerivativeEstimate<double> cl_current_numeric(const SuperpositionSpec& spec,
                                                        const BathParams& b,
                                                        const PhysicalConstants& c, double x,
                                                        double t);

/// rho(x + L, x, t) / rho(x, x, t). Throws DomainError when the denominator
/// underflows.
Complex local_translation(const SuperpositionSpec& spec, const BathParams& b,
                          const PhysicalConstants& c, double x, double t);

/// Re{[rho(x + L, x) + rho(x - L, x)] / (2 rho(x, x))}.
double cl_local_modular(const SuperpositionSpec& spec, const BathParams& b,
                        const PhysicalConstants& c, double x, double t);

TimeSeries cl_local_modular_on_trajectory(const SuperpositionSpec& spec, const BathParams& b,
                                          const PhysicalConstants& c, double X0,
                                          const TimeGrid& grid, double support_factor = 5.0);

/// <cos(p ell / hbar)> = Re int dR rho(ell, R, t), by adaptive quadrature over
/// the effective supports.
numerics::QuadResult<double> cl_modular_quadrature(const SuperpositionSpec& spec,
                                                   const BathParams& b,
                                                   const PhysicalConstants& c, double t,
                                                   double ell);

struct ModularClosedForm {
    double value;
    double envelope;  // (1/2) exp(...)
    double phase;     // cosine argument
    bool approximate;
};

/// Closed-form <cos(p L / hbar)> inside the non-overlap window.
ModularClosedForm cl_modular_closed(const SuperpositionSpec& spec, const BathParams& b,
                                    const PhysicalConstants& c, double t);

/// int rho(0, R, t) dR by quadrature.
numerics::QuadResult<double> trace_check(const SuperpositionSpec& spec, const BathParams& b,
                                         const PhysicalConstants& c, double t);

/// int dr int dR |rho(r, R, t)| by nested adaptive quadrature.
numerics::QuadResult<double> l1_coherence(const SuperpositionSpec& spec, const BathParams& b,
                                          const PhysicalConstants& c, double t,
                                          double n_widths = 12.0, double tol = 1e-10);

/// exp(-d^2 / (8 w_t^2)) with d the current center separation.
double overlap_magnitude(const SuperpositionSpec& spec, const BathParams& b,
                         const PhysicalConstants& c, double t);

}  // namespace modvar
