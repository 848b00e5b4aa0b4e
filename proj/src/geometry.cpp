#include <ksoliton/geometry.hpp>

#include <ksoliton/errors.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace ksol::geometry {

namespace {

void require_radius(const AmbientSpace& space, double s, bool allow_zero, const char* who) {
    const bool low_ok = allow_zero ? s >= 0.0 : s > 0.0;
    if (!low_ok || !space.radius.exceeds(s) || std::isnan(s)) {
        std::ostringstream msg;
        msg << who << ": s = " << s << " outside " << (allow_zero ? "[0, " : "(0, ")
            << (space.radius.is_unbounded() ? std::string("inf")
                                            : std::to_string(space.radius.value()))
            << ")";
        throw DomainError(msg.str());
    }
}

double coth(double x) { return 1.0 / std::tanh(x); }

}  // namespace

std::string AlphaInterval::to_string() const {
    std::ostringstream out;
    out << (closed_lo ? "[" : "(") << lo << ", " << hi << "]";
    return out.str();
}

int CurvatureSpectrum::total_multiplicity() const {
    int total = 0;
    for (const auto& e : entries) total += e.multiplicity;
    return total;
}

double CurvatureSpectrum::product() const {
    double prod = 1.0;
    for (const auto& e : entries) prod *= std::pow(e.value, e.multiplicity);
    return prod;
}

double CurvatureSpectrum::min_value() const {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& e : entries) lo = std::min(lo, e.value);
    return lo;
}

AmbientSpace make_space(SpaceKind kind, int dim_parameter) {
    AmbientSpace space;
    space.kind = kind;
    switch (kind) {
        case SpaceKind::Euclidean:
        case SpaceKind::Sphere:
            space.n = dim_parameter;
            space.radius = kind == SpaceKind::Sphere ? Radius::finite(std::numbers::pi / 2)
                                                     : Radius::unbounded();
            break;
        case SpaceKind::HypReal:
            space.m = dim_parameter;
            space.n = dim_parameter;
            space.p = dim_parameter - 1;
            break;
        case SpaceKind::HypComplex:
            space.m = dim_parameter;
            space.n = 2 * dim_parameter;
            space.p = 1;
            break;
        case SpaceKind::HypQuaternionic:
            space.m = dim_parameter;
            space.n = 4 * dim_parameter;
            space.p = 3;
            break;
        case SpaceKind::HypOctonionic:
            if (dim_parameter != 2)
                throw ValidationError("make_space: the Cayley hyperbolic plane requires m = 2");
            space.m = 2;
            space.n = 16;
            space.p = 7;
            break;
    }
    if (space.is_hyperbolic() && dim_parameter < 1)
        throw ValidationError("make_space: hyperbolic kinds require m >= 1");
    if (space.n < 2)
        throw ValidationError("make_space: real dimension n = " + std::to_string(space.n) +
                              " < 2");
    return space;
}

CurvatureSpectrum sphere_principal_curvatures(const AmbientSpace& space, double s) {
    require_radius(space, s, false, "sphere_principal_curvatures");
    CurvatureSpectrum spec;
    switch (space.kind) {
        case SpaceKind::Euclidean:
            spec.entries.push_back({-1.0 / s, space.n - 1});
            break;
        case SpaceKind::Sphere:
            spec.entries.push_back({-1.0 / std::tan(s), space.n - 1});
            break;
        default: {
            const int half_mult = space.n - space.p - 1;
            if (half_mult > 0) spec.entries.push_back({-0.5 * coth(0.5 * s), half_mult});
            if (space.p > 0) spec.entries.push_back({-coth(s), space.p});
        }
    }
    return spec;
}

double g_of_s(const AmbientSpace& space, double s) {
    require_radius(space, s, true, "g_of_s");
    const int k = space.n - 1;
    switch (space.kind) {
        case SpaceKind::Euclidean:
            return std::pow(s, k);
        case SpaceKind::Sphere: {
            const double t = std::tan(s);
            if (t <= 0.0) return std::pow(t, k);
            const double log_g = k * std::log(t);
            return log_g > 300.0 ? std::exp(log_g) : std::pow(t, k);
        }
        default:
            return std::pow(2.0 * std::tanh(0.5 * s), space.n - space.p - 1) *
                   std::pow(std::tanh(s), space.p);
    }
}

double gaussian_curvature_sphere(const AmbientSpace& space, double s) {
    require_radius(space, s, false, "gaussian_curvature_sphere");
    const double sign = (space.n - 1) % 2 == 0 ? 1.0 : -1.0;
    return sign / g_of_s(space, s);
}

AlphaInterval alpha_interval(const AmbientSpace& space) {
    if (space.kind != SpaceKind::Sphere) return {0.0, 0.5, false};
    const double delta = space.n == 2 ? 0.5 : std::max(0.25, 1.0 / (space.n - 1));
    return {delta, 0.5, true};
}

std::string_view kind_name(SpaceKind kind) {
    switch (kind) {
        case SpaceKind::Euclidean: return "euclidean";
        case SpaceKind::Sphere: return "sphere";
        case SpaceKind::HypReal: return "hyp-real";
        case SpaceKind::HypComplex: return "hyp-complex";
        case SpaceKind::HypQuaternionic: return "hyp-quaternionic";
        case SpaceKind::HypOctonionic: return "hyp-octonionic";
    }
    return "unknown";
}

std::optional<SpaceKind> parse_kind(std::string_view name) {
    for (auto kind : {SpaceKind::Euclidean, SpaceKind::Sphere, SpaceKind::HypReal,
                      SpaceKind::HypComplex, SpaceKind::HypQuaternionic,
                      SpaceKind::HypOctonionic}) {
        if (kind_name(kind) == name) return kind;
    }
    return std::nullopt;
}

std::string describe(const AmbientSpace& space) {
    std::ostringstream out;
    out << kind_name(space.kind) << " n=" << space.n;
    if (space.is_hyperbolic()) out << " m=" << space.m << " p=" << space.p;
    return out.str();
}

}  // namespace ksol::geometry
