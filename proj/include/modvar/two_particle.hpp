#pragma once

// Two-particle modular values: distinguishable (MB) and (anti)symmetrized
// (BE/FD) states built from the superposition and a companion packet, plus
// the reduced modular signal of a particle pair sharing one bath.

#include "modvar/cl_dynamics.hpp"
#include "modvar/core_model.hpp"

namespace modvar {

enum class StatisticsKind { MB, BE, FD };

const char* statistics_name(StatisticsKind s);

/// Companion state of the second particle.
struct CompanionState {
    enum class Tag { EqualsA, EqualsB, Disjoint, Packet };
    Tag tag = Tag::Disjoint;
    GaussianPacket packet;  // used when tag == Packet

    static CompanionState equals_a() { return {Tag::EqualsA, {}}; }
    static CompanionState equals_b() { return {Tag::EqualsB, {}}; }
    static CompanionState disjoint() { return {Tag::Disjoint, {}}; }
    static CompanionState gaussian(const GaussianPacket& p) { return {Tag::Packet, p}; }
};

/// <pa|pb> in closed form.
Complex gaussian_overlap(const GaussianPacket& pa, const GaussianPacket& pb,
                         const PhysicalConstants& c = {});

/// <pa| e^{i p ell / hbar} |pb> = int pa*(x) pb(x + ell) dx.
Complex translated_matrix_element(const GaussianPacket& pa, const GaussianPacket& pb, double ell,
                                  const PhysicalConstants& c = {});

/// Largest overlap below which two packets count as disjoint.
inline constexpr double kDisjointOverlap = 1e-12;

/// (1/2) e^{i alpha} <A| e^{i p L / hbar} |B>. Throws ParameterError when
/// |<A|B>| >= kDisjointOverlap.
Complex modular_mb(const SuperpositionSpec& spec, const PhysicalConstants& c = {});

/// [2 +- |<chi|A> + e^{i alpha} <chi|B>|^2]^{-1/2}; BE and FD only.
double indistinguishable_norm(const SuperpositionSpec& spec, const CompanionState& chi,
                              StatisticsKind s, const PhysicalConstants& c = {});

/// <e^{i p L / hbar}> of either particle in the (anti)symmetrized state
///   N (|Phi>|chi> +- |chi>|Phi>),  Phi = (A + e^{i alpha} B) / sqrt(2),
/// including both exchange terms <Phi|chi><chi|T|Phi> and <chi|Phi><Phi|T|chi>.
/// For MB this is modular_mb.
Complex modular_indistinguishable(const SuperpositionSpec& spec, const CompanionState& chi,
                                  StatisticsKind s, const PhysicalConstants& c = {});

/// <cos(p_1 L / hbar) (x) 1> for two particles in one bath (rates doubled).
ModularClosedForm reduced_modular_common_bath(const SuperpositionSpec& spec, const BathParams& b,
                                              const PhysicalConstants& c, double t);

struct EarlyTimeModel {
    double prefactor;       // (1/2) e^{-k^2 sigma0^2 / 2}
    double linear_rate;     // D L^2 / hbar^2
    double quadratic_rate;  // L^2 gamma (gamma / sigma0^2 - 4 D / hbar^2)
    double omega0;          // L (k gamma + m g / hbar)
    double alpha;

    double envelope(double t) const;
    double phase(double t) const;  // alpha - omega0 t
    double value(double t) const;
};

/// Second-order small-t expansion of reduced_modular_common_bath.
EarlyTimeModel early_time_model(const SuperpositionSpec& spec, const BathParams& b,
                                const PhysicalConstants& c);

}  // namespace modvar
