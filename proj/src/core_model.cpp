#include "modvar/core_model.hpp"

#include <cmath>
#include <sstream>

#include "modvar/numerics.hpp"

namespace modvar {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ParameterError(what);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

PhysicalConstants PhysicalConstants::make(double m, double hbar, double kB, double g) {
    require(finite(m) && m > 0.0, "mass must be positive");
    require(finite(hbar) && hbar > 0.0, "hbar must be positive");
    require(finite(kB) && kB > 0.0, "kB must be positive");
    require(finite(g), "g must be finite");
    return {m, hbar, kB, g};
}

BathParams BathParams::make(const PhysicalConstants& c, double gamma, double T) {
    return {gamma, T, diffusion_coefficient(c, gamma, T)};
}

GaussianPacket GaussianPacket::make(double x0, double p0, double sigma0) {
    require(finite(x0) && finite(p0), "packet center and momentum must be finite");
    require(finite(sigma0) && sigma0 > 0.0, "packet width sigma0 must be positive");
    return {x0, p0, sigma0};
}

TimeGrid TimeGrid::make(double t_start, double t_end, int n_samples) {
    require(finite(t_start) && finite(t_end), "time grid bounds must be finite");
    require(t_start <= t_end, "time grid requires t_start <= t_end");
    require(n_samples >= 2, "time grid needs at least two samples");
    return {t_start, t_end, n_samples};
}

double TimeGrid::at(int i) const {
    if (i == n_samples - 1) return t_end;
    return t_start + (t_end - t_start) * static_cast<double>(i) / (n_samples - 1);
}

std::vector<double> TimeGrid::samples() const {
    std::vector<double> out(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) out[static_cast<std::size_t>(i)] = at(i);
    return out;
}

SuperpositionSpec make_superposition(double L, double sigma0, double k, double alpha,
                                     const PhysicalConstants& c) {
    require(finite(L) && L > 0.0, "separation L must be positive");
    require(finite(sigma0) && sigma0 > 0.0, "width sigma0 must be positive");
    require(finite(k) && finite(alpha), "kick k and phase alpha must be finite");
    SuperpositionSpec spec;
    spec.a = GaussianPacket::make(-L / 2.0, 0.0, sigma0);
    spec.b = GaussianPacket::make(L / 2.0, c.hbar * k, sigma0);
    spec.L = L;
    spec.k = k;
    spec.alpha = alpha;
    return spec;
}

double diffusion_coefficient(const PhysicalConstants& c, double gamma, double T) {
    require(finite(gamma) && gamma >= 0.0, "relaxation rate gamma must be >= 0");
    require(finite(T) && T >= 0.0, "temperature T must be >= 0");
    return 2.0 * c.m * gamma * c.kB * T;
}

double scaled_time_tau(double gamma, double t) {
    if (gamma == 0.0) return t;
    return t * numerics::one_minus_exp_ratio(2.0 * gamma * t);
}

std::vector<std::string> validate_regime(const PhysicalConstants& c, const BathParams& b) {
    std::vector<std::string> warnings;
    // The CL equation assumes kB T >> hbar gamma; Omega and Lambda of the
    // microscopic derivation play no role for a free particle in a linear field.
    if (b.gamma > 0.0 && c.kB * b.T < 10.0 * c.hbar * b.gamma) {
        std::ostringstream os;
        os << "high-temperature condition violated: kB*T = " << c.kB * b.T
           << " < 10*hbar*gamma = " << 10.0 * c.hbar * b.gamma;
        warnings.push_back(os.str());
    }
    return warnings;
}

}  // namespace modvar
