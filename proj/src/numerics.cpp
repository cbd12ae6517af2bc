#include "modvar/numerics.hpp"

#include <string>

#include <boost/math/tools/roots.hpp>

namespace modvar::numerics {

namespace {

// Taylor coefficients converge like (2u)^n / n!; 40 terms is ample for u < 0.5.
constexpr int kMaxTerms = 40;
constexpr double kSeriesLimit = 0.5;

}  // namespace

double one_minus_exp_ratio(double u) {
    if (std::abs(u) < 2.0 * kSeriesSwitch) {
        // 1 - u/2 + u^2/6 - u^3/24
        return 1.0 - u / 2.0 + u * u / 6.0 - u * u * u / 24.0;
    }
    return -std::expm1(-u) / u;
}

double drift_time(double gamma, double t) {
    const double u = 2.0 * gamma * t;
    if (u == 0.0) return 0.5 * t * t;
    if (std::abs(u) < kSeriesLimit) {
        // (u + expm1(-u)) / u^2 = sum_{n>=2} (-u)^(n-2) / n!
        double term = 0.5;
        double sum = term;
        for (int n = 3; n < kMaxTerms; ++n) {
            term *= -u / n;
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return t * t * sum;
    }
    return (u + std::expm1(-u)) / (4.0 * gamma * gamma);
}

double thermal_spread(double gamma, double t) {
    const double u = 2.0 * gamma * t;
    if (u == 0.0) return 2.0 * t * t * t / 3.0;
    if (std::abs(u) < kSeriesLimit) {
        // N(u) = 3 + e^{-2u} - 4 e^{-u} - 2u = sum_{n>=3} ((-2)^n - 4 (-1)^n) u^n / n!
        double pow2 = -8.0;  // (-2)^3
        double sign = -1.0;  // (-1)^3
        double un_over_fact = 1.0 / 6.0;  // u^{n-3}/n! scaled, n = 3
        double sum = (pow2 - 4.0 * sign) * un_over_fact;
        for (int n = 4; n < kMaxTerms; ++n) {
            pow2 *= -2.0;
            sign = -sign;
            un_over_fact *= u / n;
            const double term = (pow2 - 4.0 * sign) * un_over_fact;
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        // N(u)/(8 gamma^3) = t^3 N(u)/u^3
        return -t * t * t * sum;
    }
    const double e1 = std::exp(-u);
    const double n = 3.0 + e1 * e1 - 4.0 * e1 - 2.0 * u;
    return -n / (8.0 * gamma * gamma * gamma);
}

std::vector<Interval> merge_intervals(std::vector<Interval> windows) {
    std::sort(windows.begin(), windows.end(),
              [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    std::vector<Interval> merged;
    for (const auto& w : windows) {
        if (!(w.hi > w.lo)) continue;
        if (!merged.empty() && w.lo <= merged.back().hi) {
            merged.back().hi = std::max(merged.back().hi, w.hi);
        } else {
            merged.push_back(w);
        }
    }
    return merged;
}

double first_root(const std::function<double(double)>& f, double lo, double hi,
                  double scan_step, double tol) {
    double a = lo;
    double fa = f(a);
    if (fa == 0.0) return a;
    while (a < hi) {
        const double b = std::min(a + scan_step, hi);
        const double fb = f(b);
        if (fb == 0.0) return b;
        if ((fa < 0.0) != (fb < 0.0)) {
            auto stop = [tol](double x, double y) { return std::abs(y - x) <= tol; };
            const auto bracket = boost::math::tools::bisect(f, a, b, stop);
            return 0.5 * (bracket.first + bracket.second);
        }
        a = b;
        fa = fb;
    }
    throw NumericalError("no sign change of the target function on [" + std::to_string(lo) +
                         ", " + std::to_string(hi) + "]");
}

}  // namespace modvar::numerics
