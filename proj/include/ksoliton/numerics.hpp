#pragma once

// Adaptive Gauss-Kronrod quadrature, safeguarded bracketed root finding and an
// embedded Runge-Kutta initial value solver with dense output.

#include <ksoliton/errors.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <vector>

namespace ksol::numerics {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
};

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    int max_subdivisions = 2000;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule, abscissae on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel gauss_kronrod_15(F& f, double a, double b) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr double tiny = std::numeric_limits<double>::min();

    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);

    double gauss = fc * kGaussWeights[3];
    double kronrod = fc * kKronrodWeights[7];
    double abs_kronrod = std::abs(kronrod);
    std::array<double, 7> lo{};
    std::array<double, 7> hi{};
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        lo[j] = f(center - dx);
        hi[j] = f(center + dx);
        kronrod += kKronrodWeights[j] * (lo[j] + hi[j]);
        abs_kronrod += kKronrodWeights[j] * (std::abs(lo[j]) + std::abs(hi[j]));
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (lo[j] + hi[j]);
    }

    const double mean = 0.5 * kronrod;
    double asc = kKronrodWeights[7] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j)
        asc += kKronrodWeights[j] * (std::abs(lo[j] - mean) + std::abs(hi[j] - mean));

    const double scale = std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    asc *= scale;
    abs_kronrod *= scale;
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    if (abs_kronrod > tiny / (50.0 * eps)) err = std::max(50.0 * eps * abs_kronrod, err);

    return {a, b, kronrod * half, err};
}

}  // namespace detail

/// Globally adaptive 15-point Gauss-Kronrod quadrature of f over [a, b].
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops below max(abs_tol, rel_tol * |value|). Endpoint
/// singularities are handled by repeated bisection only; the integrand is
/// never evaluated at a or b. Throws ConvergenceError (carrying the best
/// estimate) when the subdivision budget is exhausted.
template <class F>
    requires std::invocable<F&, double>
QuadResult integrate(F&& f, double a, double b, const QuadOptions& opts) {
    if (!(a <= b)) throw DomainError("integrate: requires a <= b");
    if (a == b) return {0.0, 0.0, 0};

    std::priority_queue<detail::Panel> panels;
    panels.push(detail::gauss_kronrod_15(f, a, b));
    int evaluations = 15;
    double value = panels.top().value;
    double error = panels.top().error;

    auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(value)); };

    int splits = 0;
    while (error > target()) {
        if (!std::isfinite(value)) throw ConvergenceError("integrate: non-finite integrand", value, error);
        if (splits >= opts.max_subdivisions)
            throw ConvergenceError("integrate: subdivision budget exhausted", value, error);
        const detail::Panel worst = panels.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw ConvergenceError("integrate: panel width reached machine resolution", value, error);
        panels.pop();
        const detail::Panel left = detail::gauss_kronrod_15(f, worst.a, mid);
        const detail::Panel right = detail::gauss_kronrod_15(f, mid, worst.b);
        evaluations += 30;
        ++splits;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        // Resum occasionally so the running totals do not drift.
        if (splits % 64 == 0) {
            auto copy = panels;
            value = 0.0;
            error = 0.0;
            while (!copy.empty()) {
                value += copy.top().value;
                error += copy.top().error;
                copy.pop();
            }
        }
    }
    return {value, error, evaluations};
}

template <class F>
    requires std::invocable<F&, double>
QuadResult integrate(F&& f, double a, double b, double abs_tol) {
    return integrate(std::forward<F>(f), a, b, QuadOptions{abs_tol, 0.0, 2000});
}

/// Brent's method on a monotone bracketing interval.
///
/// Returns x in [lo, hi] with |f(x)| <= tol or a final bracket no wider than
/// tol. Inverse quadratic / secant steps are accepted only while they shrink
/// the bracket faster than bisection would. An exact zero at lo wins ties.
template <class F>
    requires std::invocable<F&, double>
double find_root_monotone(F&& f, double lo, double hi, double tol, int max_iter = 200) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (!(lo <= hi)) throw BracketError("find_root_monotone: requires lo <= hi");

    double a = lo;
    double b = hi;
    double fa = f(a);
    if (fa == 0.0) return lo;
    double fb = f(b);
    if (fb == 0.0) return hi;
    if (!std::isfinite(fa) || !std::isfinite(fb) || (fa > 0.0) == (fb > 0.0))
        throw BracketError("find_root_monotone: f(lo) and f(hi) do not bracket a root");

    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    for (int iter = 0; iter < max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || std::abs(fb) <= tol) return std::clamp(b, lo, hi);

        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p;
            double q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
        b = std::clamp(b, lo, hi);
        fb = f(b);
    }
    return std::clamp(b, lo, hi);
}

/// Piecewise quartic dense output of an embedded Runge-Kutta integration.
class DenseSolution {
public:
    DenseSolution() = default;

    std::span<const double> breakpoints() const { return breakpoints_; }
    std::span<const double> values() const { return values_; }
    static constexpr int interpolation_order() { return 4; }

    double span_begin() const { return breakpoints_.front(); }
    double span_end() const { return breakpoints_.back(); }

    /// Continuous interpolant; DomainError outside [span_begin, span_end].
    double operator()(double s) const;

private:
    friend DenseSolution solve_ivp(const std::function<double(double, double)>&, double, double,
                                   double, double);

    std::vector<double> breakpoints_;
    std::vector<double> values_;
    std::vector<std::array<double, 5>> coefficients_;
};

/// Dormand-Prince 5(4) with proportional step control and FSAL.
/// Local error per step is kept below tol * (1 + |y|). Throws IvpError when the
/// step size underflows or the derivative stops being finite.
DenseSolution solve_ivp(const std::function<double(double, double)>& f, double s0, double y0,
                        double s_end, double tol);

}  // namespace ksol::numerics
