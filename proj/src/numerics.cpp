#include <ksoliton/numerics.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace ksol::numerics {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Hairer's continuous extension of order 4.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

}  // namespace

double DenseSolution::operator()(double s) const {
    if (breakpoints_.empty() || s < breakpoints_.front() || s > breakpoints_.back())
        throw DomainError("DenseSolution: evaluation outside the integrated span");
    if (coefficients_.empty()) return values_.front();

    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), s);
    std::size_t k = static_cast<std::size_t>(std::distance(breakpoints_.begin(), it));
    k = k == 0 ? 0 : k - 1;
    if (k >= coefficients_.size()) return values_.back();

    const double h = breakpoints_[k + 1] - breakpoints_[k];
    const double t = (s - breakpoints_[k]) / h;
    const double t1 = 1.0 - t;
    const auto& r = coefficients_[k];
    return r[0] + t * (r[1] + t1 * (r[2] + t * (r[3] + t1 * r[4])));
}

DenseSolution solve_ivp(const std::function<double(double, double)>& f, double s0, double y0,
                        double s_end, double tol) {
    if (!(s_end >= s0)) throw DomainError("solve_ivp: requires s_end >= s0");
    if (!(tol > 0.0)) throw DomainError("solve_ivp: tolerance must be positive");

    DenseSolution sol;
    sol.breakpoints_.push_back(s0);
    sol.values_.push_back(y0);
    if (s_end == s0) return sol;

    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double span = s_end - s0;
    auto scale = [tol](double y) { return tol * (1.0 + std::abs(y)); };

    double s = s0;
    double y = y0;
    double k1 = f(s, y);
    if (!std::isfinite(k1)) throw IvpError("solve_ivp: non-finite derivative at start", s);

    double h;
    {
        const double d0 = std::abs(y) / scale(y);
        const double d1n = std::abs(k1) / scale(y);
        h = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1n;
        h = std::min(h, span);
    }

    while (s < s_end) {
        if (s + 1.1 * h >= s_end) h = s_end - s;
        if (h <= 16.0 * eps * std::max(1.0, std::abs(s)))
            throw IvpError("solve_ivp: step size underflow", s);

        const double k2 = f(s + c2 * h, y + h * a21 * k1);
        const double k3 = f(s + c3 * h, y + h * (a31 * k1 + a32 * k2));
        const double k4 = f(s + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const double k5 = f(s + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const double k6 =
            f(s + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const double y_new = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        const double s_new = (h == s_end - s) ? s_end : s + h;
        const double k7 = f(s_new, y_new);

        const double err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double err_norm = std::abs(err) / scale(std::max(std::abs(y), std::abs(y_new)));

        if (!std::isfinite(y_new) || !std::isfinite(k7) || !std::isfinite(err_norm)) {
            h *= 0.25;
            continue;
        }

        const double fac = err_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
        if (err_norm <= 1.0) {
            const double diff = y_new - y;
            const double bspl = h * k1 - diff;
            sol.coefficients_.push_back(
                {y, diff, bspl, diff - h * k7 - bspl,
                 h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7)});
            s = s_new;
            y = y_new;
            k1 = k7;
            sol.breakpoints_.push_back(s);
            sol.values_.push_back(y);
            h *= fac;
        } else {
            h *= std::min(fac, 1.0);
        }
    }
    return sol;
}

}  // namespace ksol::numerics
