#include "modvar/two_particle.hpp"

#include <cmath>
#include <sstream>

#include "modvar/overlap_window.hpp"

namespace modvar {

namespace {

constexpr Complex kI{0.0, 1.0};

struct Amplitudes {
    Complex chi_a;   // <chi|A>
    Complex chi_b;   // <chi|B>
    Complex t_chi;   // <chi|T|chi>
    Complex chi_ta;  // <chi|T|A>
    Complex chi_tb;  // <chi|T|B>
    Complex a_tchi;  // <A|T|chi>
    Complex b_tchi;  // <B|T|chi>
};

Amplitudes companion_amplitudes(const SuperpositionSpec& spec, const CompanionState& chi,
                                const PhysicalConstants& c) {
    if (chi.tag == CompanionState::Tag::Disjoint) return {};
    GaussianPacket p = chi.packet;
    if (chi.tag == CompanionState::Tag::EqualsA) p = spec.a;
    if (chi.tag == CompanionState::Tag::EqualsB) p = spec.b;
    const double L = spec.L;
    return {gaussian_overlap(p, spec.a, c),
            gaussian_overlap(p, spec.b, c),
            translated_matrix_element(p, p, L, c),
            translated_matrix_element(p, spec.a, L, c),
            translated_matrix_element(p, spec.b, L, c),
            translated_matrix_element(spec.a, p, L, c),
            translated_matrix_element(spec.b, p, L, c)};
}

void require_disjoint(const SuperpositionSpec& spec, const PhysicalConstants& c) {
    const double ov = std::abs(gaussian_overlap(spec.a, spec.b, c));
    if (!(ov < kDisjointOverlap)) {
        std::ostringstream os;
        os << "packets A and B overlap: |<A|B>| = " << ov << " >= " << kDisjointOverlap;
        throw ParameterError(os.str());
    }
}

}  // namespace

const char* statistics_name(StatisticsKind s) {
    switch (s) {
        case StatisticsKind::MB:
            return "MB";
        case StatisticsKind::BE:
            return "BE";
        case StatisticsKind::FD:
            return "FD";
    }
    return "?";
}

Complex gaussian_overlap(const GaussianPacket& pa, const GaussianPacket& pb,
                         const PhysicalConstants& c) {
    const double va = pa.sigma0 * pa.sigma0;
    const double vb = pb.sigma0 * pb.sigma0;
    const double A = 1.0 / (4.0 * va) + 1.0 / (4.0 * vb);
    const Complex B = pa.x0 / (2.0 * va) + pb.x0 / (2.0 * vb) + kI * (pb.p0 - pa.p0) / c.hbar;
    const Complex C0 = -pa.x0 * pa.x0 / (4.0 * va) - pb.x0 * pb.x0 / (4.0 * vb) +
                       kI * (pa.p0 * pa.x0 - pb.p0 * pb.x0) / c.hbar;
    const double pref = std::pow(2.0 * kPi * va, -0.25) * std::pow(2.0 * kPi * vb, -0.25) *
                        std::sqrt(kPi / A);
    return pref * std::exp(B * B / (4.0 * A) + C0);
}

Complex translated_matrix_element(const GaussianPacket& pa, const GaussianPacket& pb, double ell,
                                  const PhysicalConstants& c) {
    // pb(x + ell) is the packet centred at x0 - ell with the same momentum.
    GaussianPacket shifted = pb;
    shifted.x0 -= ell;
    return gaussian_overlap(pa, shifted, c);
}

Complex modular_mb(const SuperpositionSpec& spec, const PhysicalConstants& c) {
    require_disjoint(spec, c);
    return 0.5 * std::polar(1.0, spec.alpha) * translated_matrix_element(spec.a, spec.b, spec.L, c);
}

double indistinguishable_norm(const SuperpositionSpec& spec, const CompanionState& chi,
                              StatisticsKind s, const PhysicalConstants& c) {
    if (s == StatisticsKind::MB) {
        throw ParameterError("MB states are not symmetrized; no exchange normalization applies");
    }
    const auto amp = companion_amplitudes(spec, chi, c);
    const double q = std::norm(amp.chi_a + std::polar(1.0, spec.alpha) * amp.chi_b);
    const double sign = s == StatisticsKind::BE ? 1.0 : -1.0;
    const double d = 2.0 + sign * q;
    if (!(d > 0.0)) throw DomainError("antisymmetrized state vanishes identically");
    return 1.0 / std::sqrt(d);
}

Complex modular_indistinguishable(const SuperpositionSpec& spec, const CompanionState& chi,
                                  StatisticsKind s, const PhysicalConstants& c) {
    if (s == StatisticsKind::MB) return modular_mb(spec, c);
    require_disjoint(spec, c);
    const double n = indistinguishable_norm(spec, chi, s, c);
    const auto amp = companion_amplitudes(spec, chi, c);
    const Complex ea = std::polar(1.0, spec.alpha);
    const double r2 = std::sqrt(2.0);
    const double L = spec.L;

    // <Phi|T|Phi> with <A|T|A>, <B|T|B> and <B|T|A> kept exactly.
    const Complex phi_t_phi =
        0.5 * (translated_matrix_element(spec.a, spec.a, L, c) +
               ea * translated_matrix_element(spec.a, spec.b, L, c) +
               std::conj(ea) * translated_matrix_element(spec.b, spec.a, L, c) +
               translated_matrix_element(spec.b, spec.b, L, c));
    const Complex chi_phi = (amp.chi_a + ea * amp.chi_b) / r2;       // <chi|Phi>
    const Complex phi_chi = std::conj(chi_phi);                       // <Phi|chi>
    const Complex chi_t_phi = (amp.chi_ta + ea * amp.chi_tb) / r2;   // <chi|T|Phi>
    const Complex phi_t_chi = (amp.a_tchi + std::conj(ea) * amp.b_tchi) / r2;  // <Phi|T|chi>
    const double sign = s == StatisticsKind::BE ? 1.0 : -1.0;
    return n * n *
           (phi_t_phi + amp.t_chi + sign * (phi_chi * chi_t_phi + chi_phi * phi_t_chi));
}

ModularClosedForm reduced_modular_common_bath(const SuperpositionSpec& spec, const BathParams& b,
                                              const PhysicalConstants& c, double t) {
    if (!(t >= 0.0)) throw ParameterError("time must be >= 0");
    const double s2 = spec.sigma0() * spec.sigma0();
    const double L = spec.L;
    const double tau2 = scaled_time_tau(2.0 * b.gamma, t);
    const double tau4 = scaled_time_tau(4.0 * b.gamma, t);
    const double g_tau2 = b.gamma * tau2;
    const double expo = -b.D * L * L * tau4 / (c.hbar * c.hbar) - L * L * g_tau2 * g_tau2 / s2 -
                        spec.k * spec.k * s2 / 2.0;
    ModularClosedForm out{};
    out.envelope = 0.5 * std::exp(expo);
    out.phase = spec.alpha - L * tau2 * (spec.k * b.gamma + c.m * c.g / c.hbar);
    out.value = out.envelope * std::cos(out.phase);
    out.approximate = !inside_window(Framework::CommonBath, spec, b, c, t);
    return out;
}

double EarlyTimeModel::envelope(double t) const {
    return prefactor * std::exp(-linear_rate * t - quadratic_rate * t * t);
}

double EarlyTimeModel::phase(double t) const { return alpha - omega0 * t; }

double EarlyTimeModel::value(double t) const { return envelope(t) * std::cos(phase(t)); }

EarlyTimeModel early_time_model(const SuperpositionSpec& spec, const BathParams& b,
                                const PhysicalConstants& c) {
    const double s2 = spec.sigma0() * spec.sigma0();
    const double L = spec.L;
    const double h2 = c.hbar * c.hbar;
    EarlyTimeModel m{};
    m.prefactor = 0.5 * std::exp(-spec.k * spec.k * s2 / 2.0);
    m.linear_rate = b.D * L * L / h2;
    m.quadratic_rate = L * L * b.gamma * (b.gamma / s2 - 4.0 * b.D / h2);
    m.omega0 = L * (spec.k * b.gamma + c.m * c.g / c.hbar);
    m.alpha = spec.alpha;
    return m;
}

}  // namespace modvar
