#pragma once

// Shared parameter types for a particle of mass m in a uniform field g,
// optionally coupled to a high-temperature Ohmic bath (relaxation rate gamma,
// temperature T). Units default to m = hbar = kB = 1.

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace modvar {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Invalid physical or numerical parameter supplied by the caller.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Evaluation requested outside the region where a quantity is defined.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure (quadrature, ODE, root bracketing) did not converge.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PhysicalConstants {
    double m = 1.0;
    double hbar = 1.0;
    double kB = 1.0;
    double g = -3.0;  // signed; g < 0 accelerates toward +x

    static PhysicalConstants make(double m, double hbar, double kB, double g);
};

struct BathParams {
    double gamma = 0.0;
    double T = 0.0;
    double D = 0.0;  // 2 m gamma kB T

    static BathParams make(const PhysicalConstants& c, double gamma, double T);
    static BathParams none() { return {}; }
};

struct GaussianPacket {
    double x0 = 0.0;
    double p0 = 0.0;
    double sigma0 = 1.0;

    static GaussianPacket make(double x0, double p0, double sigma0);
};

/// Two equal-width packets at -L/2 (at rest) and +L/2 (momentum hbar k),
/// superposed with relative phase alpha.
struct SuperpositionSpec {
    GaussianPacket a;
    GaussianPacket b;
    double L = 0.0;
    double k = 0.0;
    double alpha = 0.0;

    double sigma0() const { return a.sigma0; }
};

struct TimeGrid {
    double t_start = 0.0;
    double t_end = 0.0;
    int n_samples = 2;

    static TimeGrid make(double t_start, double t_end, int n_samples);
    double at(int i) const;
    std::vector<double> samples() const;
};

/// A closed-form value together with a flag set when the evaluation time lies
/// outside the packets' non-overlap window.
template <class T>
struct Flagged {
    T value{};
    bool approximate = false;
};

struct BohmianTrajectory {
    double X0 = 0.0;
    std::vector<double> t;
    std::vector<double> X;
};

struct TimeSeries {
    std::string label;
    std::vector<double> t;
    std::vector<double> value;
    std::vector<std::string> warnings;
};

SuperpositionSpec make_superposition(double L, double sigma0, double k, double alpha,
                                     const PhysicalConstants& c = {});

double diffusion_coefficient(const PhysicalConstants& c, double gamma, double T);

/// tau(t) = (1 - exp(-2 gamma t)) / (2 gamma), equal to t when gamma = 0.
double scaled_time_tau(double gamma, double t);

/// Warnings for bath parameters outside the high-temperature regime
/// (kB T >= 10 hbar gamma). Empty when the regime holds.
std::vector<std::string> validate_regime(const PhysicalConstants& c, const BathParams& b);

/// Switch point (in gamma t) below which small-rate series replace closed forms.
inline constexpr double kSeriesSwitch = 1e-4;

/// Underflow guard for ratios with a density in the denominator.
inline constexpr double kDensityFloor = 1e-300;

}  // namespace modvar
