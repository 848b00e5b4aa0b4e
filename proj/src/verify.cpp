#include <ksoliton/verify.hpp>

#include <ksoliton/errors.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ksol::verify {

using soliton::Construction;
using soliton::SolitonProfile;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

std::string fmt_double(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

bool is_sphere(const SolitonProfile& prof) {
    return prof.space && prof.space->kind == geometry::SpaceKind::Sphere;
}

// Radii of the finite-difference probes: interior grid points with tau in
// [0.05, 0.95], thinned to at most 16.
std::vector<std::size_t> probe_indices(const SolitonProfile& prof) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 1; i + 1 < prof.size(); ++i)
        if (prof.tau[i] >= 0.05 && prof.tau[i] <= 0.95) idx.push_back(i);
    if (idx.size() <= 16) return idx;
    std::vector<std::size_t> thinned;
    for (std::size_t k = 0; k < 16; ++k) thinned.push_back(idx[k * (idx.size() - 1) / 15]);
    return thinned;
}

}  // namespace

CheckResult make_check(std::string name, double sup_deviation, double tolerance,
                       std::string detail) {
    CheckResult r;
    r.name = std::move(name);
    r.sup_deviation = sup_deviation;
    r.tolerance = tolerance;
    r.passed = sup_deviation <= tolerance;
    r.detail = std::move(detail);
    return r;
}

const CheckResult* VerificationReport::find(std::string_view name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::vector<CheckResult> profile_checks(const Construction& c, const SolitonProfile& prof) {
    std::vector<CheckResult> out;
    const std::size_t count = prof.size();

    double residual_sup = 0.0;
    for (double r : prof.residual) residual_sup = std::max(residual_sup, std::abs(r));
    if (std::any_of(prof.residual.begin(), prof.residual.end(),
                    [](double r) { return std::isnan(r); }))
        residual_sup = std::numeric_limits<double>::quiet_NaN();
    out.push_back(make_check("residual_sup", residual_sup, 1e-6, "sup |K^alpha - theta| on grid"));

    {
        double dev = 0.0;
        std::string detail = "sup |tau - tau_ode| on grid";
        try {
            const auto ode = c.ode_oracle(prof.s.back());
            for (std::size_t i = 0; i < count; ++i)
                dev = std::max(dev, std::abs(prof.tau[i] - ode(prof.s[i])));
        } catch (const std::exception& e) {
            dev = std::numeric_limits<double>::infinity();
            detail = std::string("ode oracle failed: ") + e.what();
        }
        out.push_back(make_check("oracle_equivalence", dev, 1e-6, detail));
    }

    {
        double bad = 0.0;
        for (std::size_t i = 1; i < count; ++i)
            if (!(prof.tau[i] > prof.tau[i - 1])) bad += 1.0;
        out.push_back(make_check("tau_strictly_increasing", bad, 0.0, "count of non-increasing steps"));
    }
    {
        double bad = prof.phi.front() == 0.0 ? 0.0 : 1.0;
        for (std::size_t i = 1; i < count; ++i)
            if (!(prof.phi[i] > prof.phi[i - 1])) bad += 1.0;
        out.push_back(make_check("phi_increasing", bad, 0.0,
                                 "phi(0) = 0 and count of non-increasing steps"));
    }
    {
        double bad = prof.tau.front() == 0.0 ? 0.0 : 1.0;
        for (double t : prof.tau)
            if (!(t >= 0.0 && t < 1.0)) bad += 1.0;
        out.push_back(make_check("tau_bounds", bad, 0.0, "tau(0) = 0 and 0 <= tau < 1"));
    }
    {
        double dev = 0.0;
        for (std::size_t i = 0; i < count; ++i)
            dev = std::max(dev, std::abs(prof.theta[i] * prof.theta[i] +
                                         prof.rho[i] * prof.rho[i] - 1.0));
        out.push_back(make_check("theta_identity", dev, 1e-12, "sup |theta^2 + rho^2 - 1|"));
    }
    {
        double non_positive = 0.0;
        double product_dev = 0.0;
        double min_k = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < count; ++i) {
            double prod = prof.rho_prime[i];
            bool convex = prof.rho_prime[i] > 0.0;
            min_k = std::min(min_k, prof.rho_prime[i]);
            for (const auto& e : c.sphere_spectrum(prof.s[i]).entries) {
                const double k = -prof.rho[i] * e.value;
                convex = convex && k > 0.0;
                min_k = std::min(min_k, k);
                prod *= std::pow(k, e.multiplicity);
            }
            if (!convex) non_positive += 1.0;
            product_dev = std::max(product_dev, std::abs(prof.K[i] - prod) / std::abs(prof.K[i]));
        }
        out.push_back(make_check("strict_convexity", non_positive, 0.0,
                                 "interior points with a non-positive curvature; min k = " +
                                     fmt_double(min_k)));
        out.push_back(make_check("curvature_product", product_dev, 1e-10,
                                 "sup relative |K - prod k_i|"));
    }
    {
        double dev = 0.0;
        for (std::size_t i : probe_indices(prof)) {
            const double s = prof.s[i];
            const double h = 1e-4 * s;
            const double fd = (c.state(s + h).rho - c.state(s - h).rho) / (2.0 * h);
            dev = std::max(dev, std::abs(fd - prof.rho_prime[i]) / prof.rho_prime[i]);
        }
        out.push_back(make_check("rho_prime_finite_difference", dev, 1e-6,
                                 "sup relative |central difference of rho - rho'|"));
    }
    return out;
}

VerificationReport run_suite(const soliton::SolitonParams& params, const soliton::GridSpec& grid) {
    const auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    report.params = params;
    report.grid = grid;

    auto finish = [&] {
        report.overall = !report.checks.empty() &&
                         std::all_of(report.checks.begin(), report.checks.end(),
                                     [](const CheckResult& r) { return r.passed; });
        report.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return report;
    };

    std::optional<Construction> c;
    SolitonProfile prof;
    try {
        c.emplace(params);
        prof = c->build(grid);
    } catch (const ValidationError& e) {
        report.checks.push_back(make_check("build", 1.0, 0.0, std::string("validation: ") + e.what()));
        return finish();
    } catch (const std::exception& e) {
        report.checks.push_back(make_check("build", 1.0, 0.0, e.what()));
        return finish();
    }

    report.checks = profile_checks(*c, prof);

    try {
        const double s = 1e-4;
        report.checks.push_back(make_check("rho_prime_origin", std::abs(c->state(s).rho_prime - 1.0),
                                           1e-3, "|rho'(1e-4) - 1|"));
    } catch (const std::exception& e) {
        report.checks.push_back(make_check("rho_prime_origin", 1.0, 0.0, e.what()));
    }

    try {
        const double s_hi = c->radius_at_tau(0.999);
        const double s_lo = c->radius_at_tau(0.9);
        const double phi_hi = c->height(s_hi);
        const double phi_lo = c->height(s_lo);
        std::string detail = "phi(tau=0.9)/phi(tau=0.999); s(tau=0.999) = " + fmt_double(s_hi);
        // Ratio must stay strictly below one.
        report.checks.push_back(
            make_check("boundary_growth", phi_lo / phi_hi, std::nextafter(1.0, 0.0), detail));
    } catch (const std::exception& e) {
        report.checks.push_back(make_check("boundary_growth", 1.0, 0.0, e.what()));
    }

    if (is_sphere(prof)) {
        try {
            const double s = c->radius_at_tau(0.999);
            const auto gb = soliton::growth_bound_check(params, s);
            report.checks.push_back(make_check("growth_bound", gb.rhs - gb.lhs, 1e-9,
                                               "C^{-alpha} log sec s - phi(s) at tau = 0.999, C = " +
                                                   fmt_double(gb.bound)));
        } catch (const std::exception& e) {
            report.checks.push_back(make_check("growth_bound", 1.0, 0.0, e.what()));
        }
        try {
            const double lo = 1e-3;
            const double hi = kHalfPi - 1e-3;
            const double coarse = soliton::sup_rho_prime(params, lo, hi, 256);
            const double fine = soliton::sup_rho_prime(params, lo, hi, 512);
            report.checks.push_back(make_check("sup_rho_prime_stability",
                                               std::abs(fine - coarse) / fine, 0.01,
                                               "sup rho' = " + fmt_double(fine) +
                                                   " on 512 points vs 256"));
        } catch (const std::exception& e) {
            report.checks.push_back(make_check("sup_rho_prime_stability", 1.0, 0.0, e.what()));
        }
    }

    if (has_closed_form(prof)) report.checks.push_back(compare_closed_forms(prof));
    return finish();
}

bool has_closed_form(const SolitonProfile& prof) {
    if (prof.n != 2 || prof.alpha != 0.5) return false;
    return prof.family == "sphere" || prof.family == "euclidean" ||
           prof.family == "horosphere-hyp-real";
}

CheckResult compare_closed_forms(const SolitonProfile& prof) {
    if (!has_closed_form(prof)) {
        throw ValidationError(
            "compare_closed_forms: supported cases are sphere n=2 alpha=0.5, euclidean n=2 "
            "alpha=0.5 and horosphere-hyp-real n=2 alpha=0.5");
    }
    double dev = 0.0;
    if (prof.family == "sphere") {
        double phi_dev = 0.0;
        for (std::size_t i = 0; i < prof.size(); ++i) {
            dev = std::max(dev, std::abs(prof.rho[i] - std::sin(prof.s[i])));
            phi_dev = std::max(phi_dev, std::abs(prof.phi[i] + std::log(std::cos(prof.s[i]))));
        }
        return make_check("closed_form", dev, 1e-7,
                          "sup |rho - sin s|; sup |phi - log sec s| = " + fmt_double(phi_dev));
    }
    const bool euclidean = prof.family == "euclidean";
    for (std::size_t i = 0; i < prof.size(); ++i) {
        const double s = prof.s[i];
        const double exact = euclidean ? -std::expm1(-s * s) : -std::expm1(-2.0 * s);
        dev = std::max(dev, std::abs(prof.tau[i] - exact));
    }
    return make_check("closed_form", dev, 1e-8,
                      euclidean ? "sup |tau - (1 - exp(-s^2))|" : "sup |tau - (1 - exp(-2 s))|");
}

CheckResult compare_closed_forms(const soliton::SolitonParams& params,
                                 const soliton::GridSpec& grid) {
    return compare_closed_forms(soliton::build_profile(params, grid));
}

}  // namespace ksol::verify
