#pragma once

// Rotational translating K^alpha-solitons built over isoparametric families of
// parallel hypersurfaces (concentric geodesic spheres by default).
//
// The profile is tau(s) = Phi^{-1}(Psi(s)) with
//   Phi(tau) = int_0^tau (1 - u^{2/n})^{-1/(2 alpha)} du,
//   Psi(s)   = int_0^s n g(v) dv,   g = (-1)^{n-1} / K_s,
// and rho = tau^{1/n}, theta = sqrt(1 - rho^2), phi(s) = int_0^s rho / theta.

#include <ksoliton/geometry.hpp>
#include <ksoliton/numerics.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ksol::soliton {

using geometry::AmbientSpace;
using geometry::CurvatureSpectrum;
using geometry::Radius;

enum class Mode { Strict, Exploratory };

struct SolitonParams {
    AmbientSpace space;
    double alpha = 0.5;
    Mode mode = Mode::Strict;
    double quad_tol = 1e-10;
    double root_tol = 1e-12;
    double ode_tol = 1e-9;
    // Multiplies g inside the construction only (Psi and rho'); the geometric
    // K_s and the ODE oracle keep the true g. Used by mutation tests.
    double g_scale = 1.0;

    double exponent_p() const { return 1.0 / (2.0 * alpha); }
};

/// Throws ValidationError when alpha <= 0, tolerances are not positive, or
/// (strict mode) alpha lies outside I_M.
void validate(const SolitonParams& params);

/// User-supplied isoparametric family of strictly convex parallel hypersurfaces.
struct FamilyPlugin {
    std::string name;
    int n = 2;
    std::function<double(double)> g_fn;
    std::function<CurvatureSpectrum(double)> spectrum_fn;
    Radius s_span = Radius::unbounded();
    // lim_{s->0+} rho'(s); infinite when g(0) > 0.
    std::optional<double> rho_prime_origin;
};

/// Horospheres of real hyperbolic space H^n: every k_i^s = -1, g = 1.
FamilyPlugin horosphere_plugin(int n);

/// Plugin reproducing the geodesic-sphere family of a built-in space.
FamilyPlugin space_plugin(const AmbientSpace& space);

enum class Spacing { PsiUniform, SUniform };

struct GridSpec {
    int points = 512;
    Spacing spacing = Spacing::PsiUniform;
    std::optional<double> s_end;  // when empty the grid ends where tau = tau_end
    double tau_end = 0.999;
};

/// Pointwise profile data at one radius.
struct PointState {
    double s = 0.0;
    double tau = 0.0;
    double rho = 0.0;
    double rho_prime = 0.0;
    double theta = 1.0;
    double K = 1.0;
    double residual = 0.0;
};

struct SolitonProfile {
    std::string family;
    int n = 2;
    double alpha = 0.5;
    Mode mode = Mode::Strict;
    Radius s_max_effective = Radius::unbounded();
    std::optional<AmbientSpace> space;

    std::vector<double> s;
    std::vector<double> psi;
    std::vector<double> tau;
    std::vector<double> rho;
    std::vector<double> rho_prime;
    std::vector<double> phi;
    std::vector<double> theta;
    std::vector<double> K;
    std::vector<double> residual;

    std::size_t size() const { return s.size(); }
};

enum class Execution { Serial, Parallel };

/// One instance of the construction: a family, an exponent and tolerances.
///
/// All methods are const and reentrant; the only cached state (Phi(1-) and the
/// effective radius) is computed in the constructor.
class Construction {
public:
    explicit Construction(const SolitonParams& params);
    Construction(const FamilyPlugin& plugin, double alpha, Mode mode,
                 const SolitonParams& tolerances = {});

    int n() const { return n_; }
    double alpha() const { return alpha_; }
    double exponent_p() const { return p_; }
    Mode mode() const { return mode_; }
    const std::string& family() const { return family_; }
    const std::optional<AmbientSpace>& space() const { return space_; }
    const SolitonParams& tolerances() const { return tol_; }

    /// R_M, or the truncation radius s* when Phi stays bounded (alpha > 1/2).
    const Radius& s_max_effective() const { return s_max_; }

    /// Geometric g(s) of the family (unscaled).
    double g(double s) const;
    double sphere_curvature(double s) const;  // K_s
    CurvatureSpectrum sphere_spectrum(double s) const;

    double tau_integral(double tau) const;
    /// Phi(1-): +inf when exponent_p() >= 1.
    double tau_integral_limit() const { return phi_limit_; }
    double tau_from_integral(double y) const;

    double radial_integral(double s) const;
    double radial_from_integral(double y) const;
    /// Radius where tau reaches the given level.
    double radius_at_tau(double tau) const;

    double tau(double s) const;
    PointState state(double s) const;
    /// Profile quantities from an already computed tau(s).
    PointState state_from_tau(double s, double tau) const;

    CurvatureSpectrum graph_curvatures(double s) const;
    double gaussian_curvature_graph(double s) const;

    /// phi(s) = int_0^s rho / theta.
    double height(double s) const;
    /// int_{s_a}^{s_b} rho / theta given tau at both ends.
    double height_increment(double s_a, double tau_a, double s_b, double tau_b) const;

    /// Direct integration of tau' = n g(s) (1 - tau^{2/n})^p, tau(0) = 0.
    numerics::DenseSolution ode_oracle(double s_end) const;

    SolitonProfile build(const GridSpec& grid, Execution exec = Execution::Parallel) const;

private:
    // A tau level together with its complement 1 - tau, which stays accurate
    // where tau itself has rounded to the last few ulps below 1.
    struct Level {
        double tau = 0.0;
        double comp = 1.0;
        double log_tau() const;
    };
    static Level level_from_complement(double comp);
    Level level_from_integral(double y) const;
    PointState state_from_level(double s, const Level& level) const;
    Level local_level(double u, double s_a, const Level& a, double s_b, const Level& b) const;
    double height_between(double s_a, const Level& a, double s_b, const Level& b) const;

    void require_in_domain(double s, const char* who) const;
    double scaled_g(double s) const { return tol_.g_scale * g_fn_(s); }
    double tau_derivative_weight(double u) const;  // (1 - u^{2/n})^{-p}
    double tail_weight(double t) const;            // same weight at u = 1 - t
    double tail_integral(double t_lo) const;       // int_{1/2}^{1 - t_lo} in u
    double log_tail_density(double v) const;       // log of the weight in v = -log(1 - u)
    numerics::QuadOptions rel_opts() const;
    void finish_setup();

    std::string family_;
    std::optional<AmbientSpace> space_;
    int n_ = 2;
    double alpha_ = 0.5;
    double p_ = 1.0;
    Mode mode_ = Mode::Strict;
    SolitonParams tol_;
    std::function<double(double)> g_fn_;
    std::function<CurvatureSpectrum(double)> spectrum_fn_;
    Radius span_ = Radius::unbounded();
    std::optional<double> rho_prime_origin_;
    double phi_limit_ = 0.0;
    double phi_half_ = 0.0;  // Phi(1/2)
    Radius s_max_ = Radius::unbounded();
};

// Free-function surface over a single parameter set.

double tau_integral(const SolitonParams& params, double tau);
double tau_from_integral(const SolitonParams& params, double y);
double radial_integral(const AmbientSpace& space, double s);
double tau_at(const SolitonParams& params, double s);
double rho_at(const SolitonParams& params, double s);
double rho_prime_at(const SolitonParams& params, double s);
double height_at(const SolitonParams& params, double s);
double theta_at(const SolitonParams& params, double s);
CurvatureSpectrum graph_curvatures(const SolitonParams& params, double s);
double gaussian_curvature_graph(const SolitonParams& params, double s);
double soliton_residual(const SolitonParams& params, double s);

SolitonProfile build_profile(const SolitonParams& params, const GridSpec& grid);
/// Single-threaded reference path; bitwise identical to build_profile.
SolitonProfile build_profile_serial(const SolitonParams& params, const GridSpec& grid);
SolitonProfile build_profile_from_plugin(const FamilyPlugin& plugin, double alpha,
                                         const GridSpec& grid, Mode mode = Mode::Strict);

numerics::DenseSolution ode_oracle_tau(const SolitonParams& params, double s_end);

/// Sup of rho' over a uniform grid of `points` radii in [s_lo, s_hi].
double sup_rho_prime(const SolitonParams& params, double s_lo, double s_hi, int points = 512);

struct GrowthBound {
    double lhs;    // phi(s)
    double rhs;    // C^{-alpha} log sec s
    double bound;  // C
};

/// Compares phi(s) with the lower bound C^{-alpha} log sec s on S^n.
GrowthBound growth_bound_check(const SolitonParams& params, double s);

std::string_view mode_name(Mode mode);

}  // namespace ksol::soliton
