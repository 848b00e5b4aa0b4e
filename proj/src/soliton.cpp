#include <ksoliton/soliton.hpp>

#include <ksoliton/errors.hpp>

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace ksol::soliton {

namespace {

using numerics::QuadOptions;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
    double integral_lo = 0.0;
    bool found = false;
};

// Walks breakpoints b_1 < b_2 < ... accumulating int_0^{b_k} weight until the
// running integral reaches y.
template <class Weight, class Breakpoint>
Bracket bracket_cumulative(const Weight& weight, double y, Breakpoint&& breakpoint, int max_k,
                           const QuadOptions& q) {
    Bracket b;
    for (int k = 1; k <= max_k; ++k) {
        const double hi = breakpoint(k);
        if (!(hi > b.lo)) continue;
        const double integral_hi = b.integral_lo + numerics::integrate(weight, b.lo, hi, q).value;
        if (integral_hi >= y) {
            b.hi = hi;
            b.found = true;
            return b;
        }
        b.lo = hi;
        b.integral_lo = integral_hi;
    }
    b.hi = b.lo;
    return b;
}

// Solves integral_lo + int_lo^x weight = y for x in the bracket, with the
// residual measured relative to y and the abscissa relative to the bracket.
template <class Weight>
double solve_in_bracket(const Weight& weight, double y, const Bracket& b, const QuadOptions& q,
                        double root_tol) {
    const double width = b.hi - b.lo;
    if (!(width > 0.0)) return b.lo;
    auto residual = [&](double x) {
        const double t = b.lo + x * width;
        return (b.integral_lo + numerics::integrate(weight, b.lo, t, q).value - y) / y;
    };
    if (residual(1.0) <= 0.0) return b.hi;
    const double x = numerics::find_root_monotone(residual, 0.0, 1.0, root_tol);
    return b.lo + x * width;
}

double sign_for(int n) { return (n - 1) % 2 == 0 ? 1.0 : -1.0; }

void validate_tolerances(const SolitonParams& params) {
    if (!(params.quad_tol > 0.0) || !(params.root_tol > 0.0) || !(params.ode_tol > 0.0))
        throw ValidationError("tolerances must be positive");
    if (!(params.g_scale > 0.0) || !std::isfinite(params.g_scale))
        throw ValidationError("g_scale must be positive and finite");
}

void validate_plugin(const FamilyPlugin& plugin) {
    if (plugin.n < 2) throw ValidationError("plugin: dimension n must be >= 2");
    if (!plugin.g_fn || !plugin.spectrum_fn)
        throw ValidationError("plugin: g_fn and spectrum_fn are required");
    const double reach = plugin.s_span.is_unbounded() ? 8.0 : plugin.s_span.value();
    for (int k = 1; k <= 16; ++k) {
        const double s = reach * k / 17.0;
        const double g = plugin.g_fn(s);
        if (!(g > 0.0) || !std::isfinite(g)) {
            std::ostringstream msg;
            msg << "plugin '" << plugin.name << "': g_fn(" << s << ") = " << g
                << " is not positive";
            throw ValidationError(msg.str());
        }
        const CurvatureSpectrum spec = plugin.spectrum_fn(s);
        if (spec.total_multiplicity() != plugin.n - 1)
            throw ValidationError("plugin: spectrum multiplicities must sum to n - 1");
        if (!(spec.min_value() < 0.0) ||
            std::any_of(spec.entries.begin(), spec.entries.end(),
                        [](const auto& e) { return !(e.value < 0.0); }))
            throw ValidationError("plugin: principal curvatures must be negative");
        const double mismatch = std::abs(spec.product() * g * sign_for(plugin.n) - 1.0);
        if (mismatch > 1e-10)
            throw ValidationError("plugin: g_fn is inconsistent with the spectrum product");
    }
}

}  // namespace

std::string_view mode_name(Mode mode) {
    return mode == Mode::Strict ? "strict" : "exploratory";
}

void validate(const SolitonParams& params) {
    if (!(params.alpha > 0.0) || !std::isfinite(params.alpha))
        throw ValidationError("alpha must be a positive number");
    validate_tolerances(params);
    if (params.mode == Mode::Strict) {
        const auto interval = geometry::alpha_interval(params.space);
        if (!interval.contains(params.alpha)) {
            std::ostringstream msg;
            msg << "alpha = " << params.alpha << " is not in I_M = " << interval.to_string()
                << " for " << geometry::describe(params.space);
            throw ValidationError(msg.str());
        }
    }
}

FamilyPlugin horosphere_plugin(int n) {
    FamilyPlugin plugin;
    plugin.name = "horosphere-hyp-real";
    plugin.n = n;
    plugin.g_fn = [](double) { return 1.0; };
    plugin.spectrum_fn = [n](double) { return CurvatureSpectrum{{{-1.0, n - 1}}}; };
    plugin.s_span = Radius::unbounded();
    plugin.rho_prime_origin = kInf;
    return plugin;
}

FamilyPlugin space_plugin(const AmbientSpace& space) {
    FamilyPlugin plugin;
    plugin.name = std::string(geometry::kind_name(space.kind));
    plugin.n = space.n;
    plugin.g_fn = [space](double s) { return geometry::g_of_s(space, s); };
    plugin.spectrum_fn = [space](double s) {
        return geometry::sphere_principal_curvatures(space, s);
    };
    plugin.s_span = space.radius;
    plugin.rho_prime_origin = 1.0;
    return plugin;
}

// ---------------------------------------------------------------------------
// Construction

Construction::Construction(const SolitonParams& params) {
    validate(params);
    family_ = std::string(geometry::kind_name(params.space.kind));
    space_ = params.space;
    n_ = params.space.n;
    alpha_ = params.alpha;
    mode_ = params.mode;
    tol_ = params;
    const AmbientSpace space = params.space;
    g_fn_ = [space](double s) { return geometry::g_of_s(space, s); };
    spectrum_fn_ = [space](double s) { return geometry::sphere_principal_curvatures(space, s); };
    span_ = space.radius;
    // tau ~ s^n near the axis because g(s) ~ s^{n-1}.
    rho_prime_origin_ = 1.0;
    finish_setup();
}

Construction::Construction(const FamilyPlugin& plugin, double alpha, Mode mode,
                           const SolitonParams& tolerances) {
    validate_plugin(plugin);
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw ValidationError("alpha must be a positive number");
    if (mode == Mode::Strict && alpha > 0.5) {
        std::ostringstream msg;
        msg << "alpha = " << alpha << " is not in (0, 0.5] required by strict mode";
        throw ValidationError(msg.str());
    }
    validate_tolerances(tolerances);
    family_ = plugin.name;
    n_ = plugin.n;
    alpha_ = alpha;
    mode_ = mode;
    tol_ = tolerances;
    tol_.alpha = alpha;
    tol_.mode = mode;
    g_fn_ = plugin.g_fn;
    spectrum_fn_ = plugin.spectrum_fn;
    span_ = plugin.s_span;
    rho_prime_origin_ = plugin.rho_prime_origin;
    finish_setup();
}

void Construction::finish_setup() {
    p_ = 1.0 / (2.0 * alpha_);
    phi_half_ = tau_integral(0.5);
    if (p_ >= 1.0) {
        phi_limit_ = kInf;
        s_max_ = span_;
        return;
    }
    // Phi(1-) is finite. Split at 1/2 and remove the (1 - u)^{-p} endpoint
    // singularity of the tail with t = 1 - u = w^{1/(1-p)}.
    const double head = phi_half_;
    const double q = 1.0 - p_;
    const double two_over_n = 2.0 / n_;
    const double p = p_;
    auto tail_weight = [q, two_over_n, p](double w) {
        const double t = std::pow(w, 1.0 / q);
        const double h = t > 0.0 ? -std::expm1(two_over_n * std::log1p(-t)) / t : two_over_n;
        return std::pow(h, -p) / q;
    };
    const double tail =
        numerics::integrate(tail_weight, 0.0, std::pow(0.5, q), rel_opts()).value;
    phi_limit_ = head + tail;
    try {
        s_max_ = Radius::finite(radial_from_integral(phi_limit_));
    } catch (const RangeError&) {
        s_max_ = span_;
    }
}

numerics::QuadOptions Construction::rel_opts() const {
    return {std::numeric_limits<double>::min(), tol_.quad_tol, 4000};
}

void Construction::require_in_domain(double s, const char* who) const {
    if (!(s >= 0.0) || !s_max_.exceeds(s)) {
        std::ostringstream msg;
        msg << who << ": s = " << s << " outside [0, "
            << (s_max_.is_unbounded() ? std::string("inf") : std::to_string(s_max_.value()))
            << ")";
        throw DomainError(msg.str());
    }
}

double Construction::g(double s) const { return g_fn_(s); }

double Construction::sphere_curvature(double s) const { return sign_for(n_) / g_fn_(s); }

CurvatureSpectrum Construction::sphere_spectrum(double s) const { return spectrum_fn_(s); }

double Construction::tau_derivative_weight(double u) const {
    if (u <= 0.0) return 1.0;
    const double w = -std::expm1((2.0 / n_) * std::log(u));
    return std::pow(w, -p_);
}

double Construction::tail_weight(double t) const {
    return std::pow(-std::expm1((2.0 / n_) * std::log1p(-t)), -p_);
}

double Construction::tail_integral(double t_lo) const {
    auto weight = [this](double t) { return tail_weight(t); };
    return numerics::integrate(weight, t_lo, 0.5, rel_opts()).value;
}

double Construction::tau_integral(double tau) const {
    if (!(tau >= 0.0) || !(tau < 1.0))
        throw DomainError("tau_integral: tau must lie in [0, 1)");
    if (tau == 0.0) return 0.0;
    // Above 1/2 the quadrature runs in t = 1 - u: near u = 1 the nodes would
    // otherwise round onto a coarse grid. 1 - tau is exact there.
    if (tau > 0.5 && phi_half_ > 0.0) return phi_half_ + tail_integral(1.0 - tau);
    auto weight = [this](double u) { return tau_derivative_weight(u); };
    return numerics::integrate(weight, 0.0, tau, rel_opts()).value;
}

double Construction::Level::log_tau() const {
    return tau > 0.5 ? std::log1p(-comp) : std::log(tau);
}

Construction::Level Construction::level_from_complement(double comp) {
    return {std::min(1.0 - comp, std::nextafter(1.0, 0.0)), comp};
}

double Construction::log_tail_density(double v) const {
    // u = 1 - e^{-v}, du = e^{-v} dv.
    const double t = std::exp(-v);
    return -p_ * std::log(-std::expm1((2.0 / n_) * std::log1p(-t))) - v;
}

Construction::Level Construction::level_from_integral(double y) const {
    if (!(y >= 0.0)) throw DomainError("tau_from_integral: requires y >= 0");
    if (y == 0.0) return {0.0, 1.0};
    if (y >= phi_limit_) {
        std::ostringstream msg;
        msg << "tau_from_integral: y = " << y << " is not below Phi(1-) = " << phi_limit_;
        throw RangeError(msg.str(), phi_limit_);
    }
    const QuadOptions q = rel_opts();

    if (y <= phi_half_) {
        auto weight = [this](double u) { return tau_derivative_weight(u); };
        Bracket b;
        // The weight is >= 1, so Phi(y) >= y.
        b.hi = std::min(y, 0.5);
        b.found = true;
        const double tau = solve_in_bracket(weight, y, b, q, tol_.root_tol);
        return {tau, 1.0 - tau};
    }

    // Tail in v = -log(1 - u), where 1 - tau = e^{-v} keeps full relative
    // precision down to DBL_MIN. Breakpoints double in v.
    const double z = y - phi_half_;
    auto density = [this](double v) { return std::exp(log_tail_density(v)); };
    const double v_max = -std::log(std::numeric_limits<double>::min());
    double v_lo = std::log(2.0);
    double acc = 0.0;
    while (v_lo < v_max) {
        double v_hi = std::min(2.0 * v_lo, v_max);
        // Keep the integrand finite; such levels are far beyond any reachable Psi.
        while (log_tail_density(v_hi) > 600.0 && v_hi - v_lo > 1e-3) v_hi = 0.5 * (v_lo + v_hi);
        const double piece = numerics::integrate(density, v_lo, v_hi, q).value;
        if (acc + piece >= z) {
            const double width = v_hi - v_lo;
            auto residual = [&](double x) {
                return (acc + numerics::integrate(density, v_lo, v_lo + x * width, q).value - z) / z;
            };
            if (residual(1.0) <= 0.0) return level_from_complement(std::exp(-v_hi));
            const double x = numerics::find_root_monotone(residual, 0.0, 1.0, tol_.root_tol);
            return level_from_complement(std::exp(-(v_lo + x * width)));
        }
        acc += piece;
        if (v_hi < 2.0 * v_lo && v_hi < v_max) break;  // capped by the overflow guard
        v_lo = v_hi;
    }
    // Saturated: 1 - tau is below every representable level.
    return level_from_complement(std::exp(-v_lo));
}

double Construction::tau_from_integral(double y) const { return level_from_integral(y).tau; }

double Construction::radial_integral(double s) const {
    if (!(s >= 0.0) || !span_.exceeds(s))
        throw DomainError("radial_integral: s outside [0, R_M)");
    if (s == 0.0) return 0.0;
    const double n = n_;
    auto weight = [this, n](double v) { return n * scaled_g(v); };
    return numerics::integrate(weight, 0.0, s, rel_opts()).value;
}

double Construction::radial_from_integral(double y) const {
    if (!(y >= 0.0)) throw DomainError("radial_from_integral: requires y >= 0");
    if (y == 0.0) return 0.0;
    const double n = n_;
    auto weight = [this, n](double v) { return n * scaled_g(v); };
    const QuadOptions q = rel_opts();

    Bracket b;
    if (span_.is_unbounded()) {
        b = bracket_cumulative(weight, y, [](int k) { return std::ldexp(1.0, k - 1); }, 64, q);
    } else {
        const double r = span_.value();
        b = bracket_cumulative(weight, y, [r](int k) { return r * (1.0 - std::ldexp(1.0, -k)); },
                               52, q);
    }
    if (!b.found) {
        std::ostringstream msg;
        msg << "radial_from_integral: Psi stays below " << y << " on the family span";
        throw RangeError(msg.str(), b.integral_lo);
    }
    return solve_in_bracket(weight, y, b, q, tol_.root_tol);
}

double Construction::radius_at_tau(double tau) const {
    return radial_from_integral(tau_integral(tau));
}

double Construction::tau(double s) const {
    require_in_domain(s, "tau");
    return tau_from_integral(radial_integral(s));
}

PointState Construction::state(double s) const {
    require_in_domain(s, "state");
    return state_from_level(s, level_from_integral(radial_integral(s)));
}

PointState Construction::state_from_tau(double s, double tau) const {
    return state_from_level(s, {tau, 1.0 - tau});
}

PointState Construction::state_from_level(double s, const Level& level) const {
    PointState st;
    st.s = s;
    st.tau = level.tau;
    if (s == 0.0) {
        // Continuous extension at the axis: K -> 1 and theta -> 1.
        st.rho = 0.0;
        st.rho_prime = rho_prime_origin_.value_or(kInf);
        st.theta = 1.0;
        st.K = 1.0;
        st.residual = 0.0;
        return st;
    }
    const double log_tau = level.log_tau();
    const double one_minus_rho_sq = -std::expm1((2.0 / n_) * log_tau);
    st.rho = std::exp(log_tau / n_);
    st.theta = std::sqrt(one_minus_rho_sq);
    st.rho_prime = scaled_g(s) * std::pow(one_minus_rho_sq, p_) /
                   std::exp((n_ - 1.0) / n_ * log_tau);
    st.K = std::pow(-st.rho, n_ - 1) * st.rho_prime * sphere_curvature(s);
    st.residual = std::pow(st.K, alpha_) - st.theta;
    return st;
}

CurvatureSpectrum Construction::graph_curvatures(double s) const {
    if (!(s > 0.0))
        throw DomainError("graph_curvatures: the horizontal spectrum degenerates at s = 0");
    require_in_domain(s, "graph_curvatures");
    const PointState st = state(s);
    CurvatureSpectrum out;
    for (const auto& e : spectrum_fn_(s).entries)
        out.entries.push_back({-st.rho * e.value, e.multiplicity});
    out.entries.push_back({st.rho_prime, 1});
    return out;
}

double Construction::gaussian_curvature_graph(double s) const {
    if (!(s > 0.0)) throw DomainError("gaussian_curvature_graph: requires s > 0");
    return state(s).K;
}

Construction::Level Construction::local_level(double u, double s_a, const Level& a, double s_b,
                                              const Level& b) const {
    if (u <= s_a) return a;
    if (u >= s_b) return b;
    const double n = n_;
    auto radial_weight = [this, n](double v) { return n * scaled_g(v); };
    const double dpsi = numerics::integrate(radial_weight, s_a, u, rel_opts()).value;
    if (!(dpsi > 0.0)) return a;
    const QuadOptions q = rel_opts();

    if (a.tau > 0.5) {
        // Same equation in v = -log(1 - u). The weight is >= 1 in u, so the
        // complement drops by at most dpsi.
        const double v_a = -std::log(a.comp);
        const double comp_floor = a.comp - dpsi;
        const double v_hi = comp_floor > b.comp ? -std::log(comp_floor) : -std::log(b.comp);
        if (!(v_hi > v_a)) return a;
        auto density = [this](double v) { return std::exp(log_tail_density(v)); };
        const double width = v_hi - v_a;
        auto residual = [&](double x) {
            return (numerics::integrate(density, v_a, v_a + x * width, q).value - dpsi) / dpsi;
        };
        if (residual(1.0) <= 0.0) return level_from_complement(std::exp(-v_hi));
        const double x = numerics::find_root_monotone(residual, 0.0, 1.0, tol_.root_tol);
        return level_from_complement(std::exp(-(v_a + x * width)));
    }

    const double hi = std::min(b.tau, a.tau + dpsi);
    if (!(hi > a.tau)) return a;
    Bracket br;
    br.lo = a.tau;
    br.hi = hi;
    br.integral_lo = 0.0;
    br.found = true;
    auto weight = [this](double t) { return tau_derivative_weight(t); };
    const double tau = solve_in_bracket(weight, dpsi, br, q, tol_.root_tol);
    return {tau, 1.0 - tau};
}

double Construction::height_between(double s_a, const Level& a, double s_b, const Level& b) const {
    if (!(s_b > s_a)) return 0.0;
    auto slope = [&](double u) {
        const Level lv = local_level(u, s_a, a, s_b, b);
        if (lv.tau <= 0.0) return 0.0;
        const double log_t = lv.log_tau();
        return std::exp(log_t / n_) / std::sqrt(-std::expm1((2.0 / n_) * log_t));
    };
    const QuadOptions q{1e-2 * tol_.quad_tol, tol_.quad_tol, 4000};
    return numerics::integrate(slope, s_a, s_b, q).value;
}

double Construction::height_increment(double s_a, double tau_a, double s_b, double tau_b) const {
    return height_between(s_a, {tau_a, 1.0 - tau_a}, s_b, {tau_b, 1.0 - tau_b});
}

double Construction::height(double s) const {
    require_in_domain(s, "height");
    if (s == 0.0) return 0.0;
    constexpr int kSegments = 16;
    double total = 0.0;
    double s_prev = 0.0;
    Level prev;
    for (int k = 1; k <= kSegments; ++k) {
        const double s_k = k == kSegments ? s : s * k / kSegments;
        const Level level = level_from_integral(radial_integral(s_k));
        total += height_between(s_prev, prev, s_k, level);
        s_prev = s_k;
        prev = level;
    }
    return total;
}

numerics::DenseSolution Construction::ode_oracle(double s_end) const {
    require_in_domain(s_end, "ode_oracle");
    const double n = n_;
    const double p = p_;
    auto rhs = [this, n, p](double s, double tau) {
        const double t = std::clamp(tau, 0.0, 1.0);
        const double w = t > 0.0 ? -std::expm1((2.0 / n) * std::log(t)) : 1.0;
        return n * g_fn_(s) * std::pow(w, p);
    };
    return numerics::solve_ivp(rhs, 0.0, 0.0, s_end, tol_.ode_tol);
}

// ---------------------------------------------------------------------------
// Free functions

double tau_integral(const SolitonParams& params, double tau) {
    return Construction(params).tau_integral(tau);
}

double tau_from_integral(const SolitonParams& params, double y) {
    return Construction(params).tau_from_integral(y);
}

double radial_integral(const AmbientSpace& space, double s) {
    SolitonParams params;
    params.space = space;
    params.mode = Mode::Exploratory;
    return Construction(params).radial_integral(s);
}

double tau_at(const SolitonParams& params, double s) { return Construction(params).tau(s); }

double rho_at(const SolitonParams& params, double s) {
    return Construction(params).state(s).rho;
}

double rho_prime_at(const SolitonParams& params, double s) {
    return Construction(params).state(s).rho_prime;
}

double height_at(const SolitonParams& params, double s) {
    return Construction(params).height(s);
}

double theta_at(const SolitonParams& params, double s) {
    return Construction(params).state(s).theta;
}

CurvatureSpectrum graph_curvatures(const SolitonParams& params, double s) {
    return Construction(params).graph_curvatures(s);
}

double gaussian_curvature_graph(const SolitonParams& params, double s) {
    return Construction(params).gaussian_curvature_graph(s);
}

double soliton_residual(const SolitonParams& params, double s) {
    if (!(s > 0.0)) throw DomainError("soliton_residual: requires s > 0");
    return Construction(params).state(s).residual;
}

SolitonProfile build_profile(const SolitonParams& params, const GridSpec& grid) {
    return Construction(params).build(grid, Execution::Parallel);
}

SolitonProfile build_profile_serial(const SolitonParams& params, const GridSpec& grid) {
    return Construction(params).build(grid, Execution::Serial);
}

SolitonProfile build_profile_from_plugin(const FamilyPlugin& plugin, double alpha,
                                         const GridSpec& grid, Mode mode) {
    return Construction(plugin, alpha, mode).build(grid, Execution::Parallel);
}

numerics::DenseSolution ode_oracle_tau(const SolitonParams& params, double s_end) {
    return Construction(params).ode_oracle(s_end);
}

double sup_rho_prime(const SolitonParams& params, double s_lo, double s_hi, int points) {
    const Construction c(params);
    if (!(s_lo > 0.0) || !(s_hi >= s_lo) || !c.s_max_effective().exceeds(s_hi))
        throw DomainError("sup_rho_prime: requires 0 < s_lo <= s_hi < s_max");
    if (points < 2) throw ValidationError("sup_rho_prime: needs at least two points");
    std::vector<double> values(static_cast<std::size_t>(points));
    detail::for_each_index(values.size(), Execution::Parallel, [&](std::size_t i) {
        const double s = s_lo + (s_hi - s_lo) * static_cast<double>(i) / (points - 1);
        values[i] = c.state(s).rho_prime;
    });
    return *std::max_element(values.begin(), values.end());
}

GrowthBound growth_bound_check(const SolitonParams& params, double s) {
    if (params.space.kind != geometry::SpaceKind::Sphere)
        throw ValidationError("growth_bound_check: only defined on the sphere");
    SolitonParams strict = params;
    strict.mode = Mode::Strict;
    validate(strict);
    const int n = params.space.n;
    if (n > 2 && params.alpha * (n - 1) < 1.0)
        throw ValidationError("growth_bound_check: requires alpha (n - 1) >= 1");
    constexpr double half_pi = std::numbers::pi / 2;
    if (!(s > 0.0) || !(s < half_pi))
        throw ValidationError("growth_bound_check: requires 0 < s < pi/2");

    const double s_hi = std::max(half_pi - 1e-3, s);
    // rho'(0+) = 1 belongs to the supremum over (0, pi/2).
    const double bound = std::max(1.0, sup_rho_prime(params, 1e-3, s_hi));
    const Construction c(params);
    return {c.height(s), std::pow(bound, -params.alpha) * -std::log(std::cos(s)), bound};
}

}  // namespace ksol::soliton
