#pragma once

// Unitary evolution of Gaussian packets in a uniform field: closed-form
// amplitudes, Bohmian kinematics, and modular (finite-translation) observables
// for the two-packet superposition.

#include "modvar/core_model.hpp"

namespace modvar {

struct PacketStateS {
    Complex s_t;      // complex width sigma0 (1 + i hbar t / (2 m sigma0^2))
    double sigma_t;   // |s_t|
    double x_t;
    double p_t;
    double action_t;
};

struct DensityCurrent {
    double density;
    double current;
};

PacketStateS packet_state(const GaussianPacket& p, const PhysicalConstants& c, double t);

Complex packet_amplitude(const GaussianPacket& p, const PhysicalConstants& c, double x, double t);

/// d/dx of packet_amplitude.
Complex packet_amplitude_dx(const GaussianPacket& p, const PhysicalConstants& c, double x,
                            double t);

DensityCurrent density_and_current(const GaussianPacket& p, const PhysicalConstants& c, double x,
                                   double t);

double bohmian_velocity(const GaussianPacket& p, const PhysicalConstants& c, double x, double t);

/// X(t) = x_t + (X0 - x0) sigma_t / sigma0.
double bohmian_position(const GaussianPacket& p, const PhysicalConstants& c, double X0, double t);

BohmianTrajectory bohmian_trajectory(const GaussianPacket& p, const PhysicalConstants& c,
                                     double X0, const TimeGrid& grid);

/// Normalization of (psi_A + e^{i alpha} psi_B)/sqrt(2). Accepts any spec,
/// including overlapping (L = 0) configurations.
double superposition_norm(const SuperpositionSpec& spec, const PhysicalConstants& c = {});

Complex superposed_amplitude(const SuperpositionSpec& spec, const PhysicalConstants& c, double x,
                             double t);
Complex superposed_amplitude_dx(const SuperpositionSpec& spec, const PhysicalConstants& c,
                                double x, double t);

/// Density and current of the full superposition.
DensityCurrent superposed_density_current(const SuperpositionSpec& spec,
                                          const PhysicalConstants& c, double x, double t);

/// <cos(p L / hbar)> = e^{-k^2 sigma0^2 / 2} cos(alpha - m g L t / hbar) / 2,
/// valid while the packets do not overlap.
Flagged<double> modular_expectation(const SuperpositionSpec& spec, const PhysicalConstants& c,
                                    double t);

/// Heisenberg-picture rotation <e^{i p l / hbar}>_t = e^{-i m g l t / hbar} <...>_0.
Complex phase_rotated_modular(Complex initial, double ell, const PhysicalConstants& c, double t);

/// Local expectation of cos(p L / hbar): Re{Psi*(x) [Psi(x+L) + Psi(x-L)]} / (2 |Psi(x)|^2).
/// Throws DomainError where |Psi|^2 underflows.
double local_modular_pointwise(const SuperpositionSpec& spec, const PhysicalConstants& c,
                               double x, double t);

/// Closed form of the local modular value along the left-packet trajectory
/// starting at X0.
double local_modular_closed(const SuperpositionSpec& spec, const PhysicalConstants& c, double X0,
                            double t);

TimeSeries local_modular_on_trajectory(const SuperpositionSpec& spec, const PhysicalConstants& c,
                                       double X0, const TimeGrid& grid,
                                       double support_factor = 5.0);

}  // namespace modvar
