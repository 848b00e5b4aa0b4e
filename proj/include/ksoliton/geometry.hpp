#pragma once

// Ambient spaces M in {R^n, S^n, H_F^m} and their families of concentric
// geodesic spheres, oriented outward so every principal curvature is negative.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ksol::geometry {

enum class SpaceKind { Euclidean, Sphere, HypReal, HypComplex, HypQuaternionic, HypOctonionic };

/// Extended positive real used for radii: either finite or unbounded.
class Radius {
public:
    static Radius unbounded() { return Radius{}; }
    static Radius finite(double value) { return Radius{value}; }

    bool is_unbounded() const { return !value_.has_value(); }
    /// Finite value; only meaningful when !is_unbounded().
    double value() const { return value_.value(); }
    /// True when s < radius.
    bool exceeds(double s) const { return is_unbounded() || s < *value_; }

    friend bool operator==(const Radius&, const Radius&) = default;

private:
    Radius() = default;
    explicit Radius(double v) : value_(v) {}
    std::optional<double> value_;
};

struct AmbientSpace {
    SpaceKind kind = SpaceKind::Euclidean;
    int n = 2;  // real dimension
    int m = 0;  // F-dimension, hyperbolic kinds only
    int p = 0;  // multiplicity of -coth(s), hyperbolic kinds only
    Radius radius = Radius::unbounded();

    bool is_hyperbolic() const {
        return kind != SpaceKind::Euclidean && kind != SpaceKind::Sphere;
    }
};

/// Admissible exponent interval I_M = (lo, hi] or [lo, hi].
struct AlphaInterval {
    double lo = 0.0;
    double hi = 0.5;
    bool closed_lo = false;

    bool contains(double alpha) const {
        return alpha <= hi && (closed_lo ? alpha >= lo : alpha > lo);
    }
    std::string to_string() const;
};

struct CurvatureEntry {
    double value;
    int multiplicity;
    friend bool operator==(const CurvatureEntry&, const CurvatureEntry&) = default;
};

/// Distinct principal curvatures with multiplicities.
struct CurvatureSpectrum {
    std::vector<CurvatureEntry> entries;

    int total_multiplicity() const;
    /// Product of all principal curvatures counted with multiplicity.
    double product() const;
    double min_value() const;
};

/// dim_parameter is n for Euclidean/Sphere and m for hyperbolic kinds.
AmbientSpace make_space(SpaceKind kind, int dim_parameter);

CurvatureSpectrum sphere_principal_curvatures(const AmbientSpace& space, double s);

/// g(s) = (-1)^{n-1} / K_s, extended by g(0) = 0.
double g_of_s(const AmbientSpace& space, double s);

double gaussian_curvature_sphere(const AmbientSpace& space, double s);

AlphaInterval alpha_interval(const AmbientSpace& space);

std::string_view kind_name(SpaceKind kind);
std::optional<SpaceKind> parse_kind(std::string_view name);
std::string describe(const AmbientSpace& space);

}  // namespace ksol::geometry
