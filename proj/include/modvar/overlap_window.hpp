#pragma once

// Non-overlap window of the two packets: the latest time at which the right
// tail of the left packet stays to the left of the left tail of the right one,
// each tail placed `support_factor` widths from its center.

#include <string>

#include "modvar/core_model.hpp"

namespace modvar {

enum class Framework {
    Schrodinger,
    CaldeiraLeggett,
    CommonBath,  // two particles sharing one bath: rates doubled
};

inline constexpr double kDefaultSupportFactor = 5.0;

struct OverlapWindow {
    double t_max = 0.0;
    std::string criterion;
};

/// -L - (hbar k / m) T(t) + 2 s W(t): negative while the supports are disjoint.
/// (T, W) = (t, sigma_t) without a bath and (tau(t), w_t) with one.
double overlap_margin(Framework f, const SuperpositionSpec& spec, const BathParams& b,
                      const PhysicalConstants& c, double t,
                      double support_factor = kDefaultSupportFactor);

/// True when t lies inside the non-overlap window.
bool inside_window(Framework f, const SuperpositionSpec& spec, const BathParams& b,
                   const PhysicalConstants& c, double t,
                   double support_factor = kDefaultSupportFactor);

/// First zero of overlap_margin on [0, t_search]. Throws DomainError when the
/// packets already overlap at t = 0 and NumericalError when the margin never
/// changes sign.
OverlapWindow overlap_window(Framework f, const SuperpositionSpec& spec, const BathParams& b,
                             const PhysicalConstants& c,
                             double support_factor = kDefaultSupportFactor,
                             double t_search = 1000.0, double tol = 1e-9);

const char* framework_name(Framework f);

}  // namespace modvar
