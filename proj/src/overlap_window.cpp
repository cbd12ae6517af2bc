#include "modvar/overlap_window.hpp"

#include <sstream>

#include "modvar/cl_dynamics.hpp"
#include "modvar/numerics.hpp"
#include "modvar/schrodinger.hpp"

namespace modvar {

const char* framework_name(Framework f) {
    switch (f) {
        case Framework::Schrodinger:
            return "schrodinger";
        case Framework::CaldeiraLeggett:
            return "cl";
        case Framework::CommonBath:
            return "two-particle";
    }
    return "unknown";
}

double overlap_margin(Framework f, const SuperpositionSpec& spec, const BathParams& b,
                      const PhysicalConstants& c, double t, double support_factor) {
    double elapsed = t;
    double width = 0.0;
    if (f == Framework::Schrodinger) {
        width = packet_state(spec.a, c, t).sigma_t;
    } else {
        BathParams eff = b;
        if (f == Framework::CommonBath) eff.gamma = 2.0 * b.gamma;
        const auto s = cl_packet_state(spec.a, eff, c, t);
        elapsed = s.tau;
        width = s.w_t;
    }
    return -spec.L - c.hbar * spec.k / c.m * elapsed + 2.0 * support_factor * width;
}

bool inside_window(Framework f, const SuperpositionSpec& spec, const BathParams& b,
                   const PhysicalConstants& c, double t, double support_factor) {
    return overlap_margin(f, spec, b, c, t, support_factor) < 0.0;
}

OverlapWindow overlap_window(Framework f, const SuperpositionSpec& spec, const BathParams& b,
                             const PhysicalConstants& c, double support_factor, double t_search,
                             double tol) {
    if (!(support_factor > 0.0)) throw ParameterError("support factor must be positive");
    auto margin = [&](double t) { return overlap_margin(f, spec, b, c, t, support_factor); };
    if (margin(0.0) >= 0.0) {
        std::ostringstream os;
        os << "packets already overlap at t = 0 (margin " << margin(0.0) << ")";
        throw DomainError(os.str());
    }
    OverlapWindow out;
    out.t_max = numerics::first_root(margin, 0.0, t_search, 0.05, tol);
    std::ostringstream os;
    os << "-L - (hbar k/m) T(t) + " << 2.0 * support_factor << " W(t) < 0 ("
       << framework_name(f) << ")";
    out.criterion = os.str();
    return out;
}

}  // namespace modvar
