#pragma once

// Numerical building blocks: small-rate-stable time functions, windowed
// adaptive quadrature, Ridders extrapolated differentiation, root bracketing.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "modvar/core_model.hpp"

namespace modvar::numerics {

/// (1 - exp(-u)) / u, continuous through u = 0.
double one_minus_exp_ratio(double u);

/// (t - tau(t)) / (2 gamma); reduces to t^2 / 2 for gamma = 0.
double drift_time(double gamma, double t);

/// -(3 + e^{-4 gamma t} - 4 e^{-2 gamma t} - 4 gamma t) / (8 gamma^3); reduces
/// to 2 t^3 / 3 for gamma = 0. Multiplied by D / m^2 this is the thermal
/// contribution to the squared width.
double thermal_spread(double gamma, double t);

struct Interval {
    double lo;
    double hi;
};

/// Sorts and merges overlapping intervals.
std::vector<Interval> merge_intervals(std::vector<Interval> windows);

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
    double l1 = 0.0;
};

/// Globally adaptive 31-point Gauss-Kronrod over [lo, hi]: the panel with the
/// largest error estimate is bisected until the summed error is below tol
/// times the summed L1 norm, or no panel can be split within max_depth.
template <class F>
auto integrate(F&& f, double lo, double hi, double tol = 1e-13, unsigned max_depth = 20)
    -> QuadResult<decltype(f(lo))> {
    using T = decltype(f(lo));
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    struct Panel {
        double a, b;
        T value;
        double error, l1;
        unsigned depth;
    };
    auto panel = [&](double a, double b, unsigned depth) {
        Panel p{a, b, T{}, 0.0, 0.0, depth};
        p.value = GK::integrate(f, a, b, 0, 0.0, &p.error, &p.l1);
        return p;
    };
    auto by_error = [](const Panel& x, const Panel& y) { return x.error < y.error; };
    constexpr std::size_t kMaxPanels = 4096;

    std::vector<Panel> open{panel(lo, hi, 0)};
    std::vector<Panel> done;
    double error = open.front().error;
    double l1 = open.front().l1;
    while (!open.empty() && error > tol * l1 && open.size() + done.size() < kMaxPanels) {
        std::pop_heap(open.begin(), open.end(), by_error);
        const Panel worst = open.back();
        open.pop_back();
        if (worst.depth >= max_depth) {
            done.push_back(worst);
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        for (const auto& child : {panel(worst.a, mid, worst.depth + 1),
                                  panel(mid, worst.b, worst.depth + 1)}) {
            open.push_back(child);
            std::push_heap(open.begin(), open.end(), by_error);
        }
        error = 0.0;
        l1 = 0.0;
        for (const auto* set : {&open, &done}) {
            for (const auto& p : *set) {
                error += p.error;
                l1 += p.l1;
            }
        }
    }
    QuadResult<T> out;
    for (const auto* set : {&open, &done}) {
        for (const auto& p : *set) {
            out.value += p.value;
            out.error += p.error;
            out.l1 += p.l1;
        }
    }
    return out;
}

/// L1 magnitude below which windowed quadrature stops refining.
inline constexpr double kQuadratureFloor = 1e-280;

/// Integrates over the union of the given windows; the integrand is taken to
/// vanish outside them. Windows whose single-panel L1 estimate is negligible
/// against the total keep that estimate instead of being refined, as do all
/// windows when the total is below kQuadratureFloor, where relative accuracy
/// is unattainable in double precision.
template <class F>
auto integrate_windows(F&& f, std::vector<Interval> windows, double tol = 1e-13,
                       unsigned max_depth = 20) -> QuadResult<decltype(f(0.0))> {
    using T = decltype(f(0.0));
    const auto merged = merge_intervals(std::move(windows));
    std::vector<QuadResult<T>> coarse;
    coarse.reserve(merged.size());
    double l1_total = 0.0;
    for (const auto& w : merged) {
        coarse.push_back(integrate(f, w.lo, w.hi, tol, 0));
        l1_total += coarse.back().l1;
    }
    QuadResult<T> total;
    for (std::size_t i = 0; i < merged.size(); ++i) {
        auto part = coarse[i];
        if (l1_total > kQuadratureFloor && part.l1 > 1e-3 * tol * l1_total) {
            part = integrate(f, merged[i].lo, merged[i].hi, tol, max_depth);
        }
        total.value += part.value;
        total.error += part.error;
        total.l1 += part.l1;
    }
    return total;
}

template <class T>
struct DerivativeEstimate {
    T value{};
    double error = 0.0;
    double step = 0.0;  // step of the tableau entry that was accepted
};

/// Ridders' extrapolated central difference. h0 is the initial (largest)
/// step; the tableau shrinks it by 1.4 per row.
template <class F>
auto ridders_derivative(F&& f, double x, double h0) -> DerivativeEstimate<decltype(f(x))> {
    using T = decltype(f(x));
    constexpr int kTab = 12;
    constexpr double kCon = 1.4;
    constexpr double kCon2 = kCon * kCon;
    constexpr double kSafe = 2.0;

    T a[kTab][kTab];
    DerivativeEstimate<T> best;
    best.error = std::numeric_limits<double>::max();
    double h = h0;
    a[0][0] = (f(x + h) - f(x - h)) / (2.0 * h);
    best.value = a[0][0];
    best.step = h;
    for (int i = 1; i < kTab; ++i) {
        h /= kCon;
        a[0][i] = (f(x + h) - f(x - h)) / (2.0 * h);
        double fac = kCon2;
        for (int j = 1; j <= i; ++j) {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
            fac *= kCon2;
            const double err = std::max(std::abs(a[j][i] - a[j - 1][i]),
                                        std::abs(a[j][i] - a[j - 1][i - 1]));
            if (err <= best.error) {
                best.error = err;
                best.value = a[j][i];
                best.step = h;
            }
        }
        if (std::abs(a[i][i] - a[i - 1][i - 1]) >= kSafe * best.error) break;
    }
    return best;
}

/// First root of f on [lo, hi], located by scanning with `scan_step` for a
/// sign change and refining by bisection to `tol`. Throws NumericalError when
/// no sign change is found.
double first_root(const std::function<double(double)>& f, double lo, double hi,
                  double scan_step, double tol);

}  // namespace modvar::numerics
