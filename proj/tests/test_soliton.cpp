#include <ksoliton/errors.hpp>
#include <ksoliton/soliton.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace ksol;
using geometry::SpaceKind;
using soliton::Construction;
using soliton::Mode;
using soliton::SolitonParams;

namespace {

constexpr double kPi = std::numbers::pi;

SolitonParams params(SpaceKind kind, int dim, double alpha, Mode mode = Mode::Strict) {
    SolitonParams p;
    p.space = geometry::make_space(kind, dim);
    p.alpha = alpha;
    p.mode = mode;
    return p;
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

}  // namespace

TEST_CASE("validate enforces I_M in strict mode only") {
    CHECK_NOTHROW(soliton::validate(params(SpaceKind::Sphere, 2, 0.5)));
    try {
        soliton::validate(params(SpaceKind::Sphere, 2, 0.4));
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("[0.5, 0.5]") != std::string::npos);
    }
    CHECK_NOTHROW(soliton::validate(params(SpaceKind::Sphere, 2, 0.4, Mode::Exploratory)));
    CHECK_NOTHROW(soliton::validate(params(SpaceKind::Euclidean, 2, 1.0, Mode::Exploratory)));
    CHECK_THROWS_AS(soliton::validate(params(SpaceKind::Euclidean, 2, 0.0, Mode::Exploratory)),
                    ValidationError);
    auto bad = params(SpaceKind::Euclidean, 3, 0.5);
    bad.quad_tol = 0.0;
    CHECK_THROWS_AS(soliton::validate(bad), ValidationError);
}

TEST_CASE("Phi: closed forms and frozen values") {
    const auto e2 = params(SpaceKind::Euclidean, 2, 0.5);
    CHECK(soliton::tau_integral(e2, 0.0) == 0.0);
    CHECK(rel_close(soliton::tau_integral(e2, 0.5), std::log(2.0), 1e-12));
    // n = 3, alpha = 0.4 (mpmath).
    CHECK(rel_close(soliton::tau_integral(params(SpaceKind::Euclidean, 3, 0.4), 0.7),
                    1.97701920647292542394, 1e-10));
    CHECK_THROWS_AS(soliton::tau_integral(e2, 1.0), DomainError);
    CHECK_THROWS_AS(soliton::tau_integral(e2, -0.1), DomainError);
}

TEST_CASE("Phi: tail close to tau = 1") {
    // -log(1 - tau) at tau = 1 - 2^-40, which is exact in binary64.
    const double t = std::ldexp(1.0, -40);
    CHECK(rel_close(soliton::tau_integral(params(SpaceKind::Euclidean, 2, 0.5), 1.0 - t),
                    40.0 * std::log(2.0), 1e-11));
    // mpmath.
    CHECK(rel_close(soliton::tau_integral(params(SpaceKind::Euclidean, 3, 0.5), 1.0 - t),
                    41.2764700374390284399, 1e-10));
    CHECK(rel_close(soliton::tau_integral(params(SpaceKind::Euclidean, 3, 0.25), 1.0 - 1e-6),
                    2249987.16954762543912, 1e-8));
    CHECK(rel_close(soliton::tau_integral(params(SpaceKind::Euclidean, 5, 0.3), 0.999),
                    677.249591116425989538, 1e-10));
}

TEST_CASE("Phi^{-1}") {
    const auto e2 = params(SpaceKind::Euclidean, 2, 0.5);
    CHECK(soliton::tau_from_integral(e2, 0.0) == 0.0);
    CHECK(std::abs(soliton::tau_from_integral(e2, std::log(2.0)) - 0.5) < 1e-12);
    const auto e2_one = params(SpaceKind::Euclidean, 2, 1.0, Mode::Exploratory);
    CHECK(std::abs(soliton::tau_from_integral(e2_one, 1.0) - 0.75) < 1e-12);

    // Deep in the tail the complement 1 - tau is what must be accurate.
    const double t = std::ldexp(1.0, -40);
    const double tau = soliton::tau_from_integral(e2, 40.0 * std::log(2.0));
    CHECK(std::abs((1.0 - tau) - t) < 1e-4 * t);
    // Beyond the last representable level tau saturates below 1.
    CHECK(soliton::tau_from_integral(e2, 60.0) == std::nextafter(1.0, 0.0));
    CHECK_THROWS_AS(soliton::tau_from_integral(e2, -1.0), DomainError);
}

TEST_CASE("Phi^{-1} inverts Phi across the split at 1/2") {
    const Construction c(params(SpaceKind::HypQuaternionic, 2, 0.25));
    for (double tau : {1e-8, 0.01, 0.3, 0.4999, 0.5, 0.5001, 0.9, 0.999, 0.999999}) {
        CAPTURE(tau);
        CHECK(std::abs(c.tau_from_integral(c.tau_integral(tau)) - tau) < 1e-12);
    }
}

TEST_CASE("Phi(1-) and the range error above it") {
    const Construction c(params(SpaceKind::Euclidean, 2, 1.0, Mode::Exploratory));
    CHECK(std::abs(c.tau_integral_limit() - 2.0) < 1e-10);
    try {
        c.tau_from_integral(2.5);
        FAIL("expected RangeError");
    } catch (const RangeError& e) {
        CHECK(std::abs(e.limit() - 2.0) < 1e-10);
    }
    const Construction strict(params(SpaceKind::Euclidean, 2, 0.5));
    CHECK(std::isinf(strict.tau_integral_limit()));
}

TEST_CASE("Psi: closed forms and frozen values") {
    CHECK(rel_close(soliton::radial_integral(geometry::make_space(SpaceKind::Euclidean, 3), 2.0), 8.0,
                    1e-13));
    CHECK(rel_close(soliton::radial_integral(geometry::make_space(SpaceKind::Sphere, 2), kPi / 3),
                    2.0 * std::log(2.0), 1e-12));
    CHECK(soliton::radial_integral(geometry::make_space(SpaceKind::HypReal, 3), 0.0) == 0.0);
    // mpmath.
    CHECK(rel_close(soliton::radial_integral(geometry::make_space(SpaceKind::HypReal, 3), 2.0),
                    3.10791725977254934816, 1e-11));
    CHECK(rel_close(soliton::radial_integral(geometry::make_space(SpaceKind::HypOctonionic, 2), 1.0),
                    0.10435598036833102568, 1e-10));
    CHECK_THROWS_AS(soliton::radial_integral(geometry::make_space(SpaceKind::Sphere, 2), 1.6),
                    DomainError);
}

TEST_CASE("Psi^{-1} on bounded and unbounded spans") {
    const Construction sphere(params(SpaceKind::Sphere, 3, 0.5));
    const double y = 3.0 * (std::tan(1.5) - 1.5);
    CHECK(std::abs(sphere.radial_from_integral(y) - 1.5) < 1e-11);
    const Construction flat(params(SpaceKind::Euclidean, 4, 0.5));
    CHECK(std::abs(flat.radial_from_integral(std::pow(3.0, 4)) - 3.0) < 1e-11);
}

TEST_CASE("tau(s)") {
    CHECK(std::abs(soliton::tau_at(params(SpaceKind::Euclidean, 2, 0.5), 1.0) - (1.0 - std::exp(-1.0))) <
          1e-12);
    CHECK(soliton::tau_at(params(SpaceKind::HypComplex, 2, 0.5), 0.0) == 0.0);
    CHECK(std::abs(soliton::tau_at(params(SpaceKind::Sphere, 2, 0.5), kPi / 6) - 0.25) < 1e-12);
    // mpmath.
    CHECK(rel_close(soliton::tau_at(params(SpaceKind::HypReal, 3, 0.4), 2.0), 0.81795461138289665948,
                    1e-10));
    CHECK(rel_close(soliton::tau_at(params(SpaceKind::HypOctonionic, 2, 0.3), 1.0),
                    0.02540626671824958797, 1e-9));
    // S^3 close to the equator; mpmath gives 1 - tau = 9.2067848e-12.
    const double tau = soliton::tau_at(params(SpaceKind::Sphere, 3, 0.5), 1.5);
    CHECK(std::abs((1.0 - tau) - 9.20678480278323662e-12) < 1e-5 * 9.2e-12);
}

TEST_CASE("levels far beyond the last binary64 below 1") {
    // R^2 at alpha = 1/2: 1 - tau = e^{-s^2}, theta = e^{-s^2/2}.
    const Construction c(params(SpaceKind::Euclidean, 2, 0.5));
    for (double s : {6.0, 10.0, 20.0}) {
        CAPTURE(s);
        const auto st = c.state(s);
        CHECK(st.tau < 1.0);
        CHECK(rel_close(st.theta, std::exp(-0.5 * s * s), 1e-8));
        CHECK(std::abs(st.residual) <= 1e-8 * st.theta);
    }
    // int_0^s sqrt(1 - e^{-u^2}) e^{u^2/2} du (mpmath).
    CHECK(rel_close(c.height(6.0), 11277102.1996992822603, 1e-8));
    CHECK(rel_close(c.height(10.0), 523819176218418783968.698, 1e-8));

    soliton::GridSpec grid;
    grid.points = 41;
    grid.spacing = soliton::Spacing::SUniform;
    grid.s_end = 10.0;
    const auto prof = soliton::build_profile(params(SpaceKind::Euclidean, 2, 0.5), grid);
    CHECK(rel_close(prof.phi.back(), 523819176218418783968.698, 1e-8));
    for (std::size_t i = 1; i < prof.size(); ++i) CHECK(prof.phi[i] > prof.phi[i - 1]);
}

TEST_CASE("rho, rho' and theta") {
    const auto s2 = params(SpaceKind::Sphere, 2, 0.5);
    CHECK(std::abs(soliton::rho_at(s2, kPi / 6) - 0.5) < 1e-12);
    CHECK(std::abs(soliton::theta_at(s2, kPi / 3) - 0.5) < 1e-12);
    CHECK(soliton::theta_at(s2, 0.0) == 1.0);

    const auto e2 = params(SpaceKind::Euclidean, 2, 0.5);
    CHECK(std::abs(soliton::rho_at(e2, 1.0) - 0.79506009762065010730) < 1e-12);
    CHECK(std::abs(soliton::rho_prime_at(e2, 1.0) - 0.46270645737647113886) < 1e-12);

    const auto pt = Construction(e2).state_from_tau(0.5, 0.36);
    CHECK(pt.rho == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(pt.theta == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("rho'(0+) = 1 in every space") {
    for (auto [kind, dim, alpha] : {std::tuple{SpaceKind::Euclidean, 3, 0.5},
                                    std::tuple{SpaceKind::Sphere, 6, 0.25},
                                    std::tuple{SpaceKind::HypComplex, 2, 0.5},
                                    std::tuple{SpaceKind::HypOctonionic, 2, 0.3}}) {
        CHECK(std::abs(soliton::rho_prime_at(params(kind, dim, alpha), 1e-4) - 1.0) < 1e-3);
    }
}

TEST_CASE("height") {
    const auto s2 = params(SpaceKind::Sphere, 2, 0.5);
    CHECK(soliton::height_at(s2, 0.0) == 0.0);
    CHECK(std::abs(soliton::height_at(s2, kPi / 3) - std::log(2.0)) < 1e-9);
    CHECK(std::abs(soliton::height_at(s2, 1.4) - 1.77215013766969851226) < 1e-9);
    // int_0^1 sqrt(e^{u^2} - 1) du (mpmath).
    CHECK(std::abs(soliton::height_at(params(SpaceKind::Euclidean, 2, 0.5), 1.0) -
                   0.57224938143552489598) < 1e-9);
}

TEST_CASE("graph curvatures") {
    const auto e2 = params(SpaceKind::Euclidean, 2, 0.5);
    const auto k = soliton::graph_curvatures(e2, 1.0);
    REQUIRE(k.entries.size() == 2);
    CHECK(std::abs(k.entries[0].value - 0.79506009762065010730) < 1e-12);
    CHECK(std::abs(k.entries[1].value - 0.46270645737647113886) < 1e-12);
    CHECK(std::abs(soliton::gaussian_curvature_graph(e2, 1.0) - std::exp(-1.0)) < 1e-12);

    const auto s2 = params(SpaceKind::Sphere, 2, 0.5);
    const auto ks = soliton::graph_curvatures(s2, kPi / 4);
    CHECK(std::abs(ks.entries[0].value - std::sqrt(0.5)) < 1e-12);
    CHECK(std::abs(ks.entries[1].value - std::sqrt(0.5)) < 1e-12);
    CHECK(std::abs(soliton::gaussian_curvature_graph(s2, kPi / 4) - 0.5) < 1e-12);

    const auto small = soliton::graph_curvatures(params(SpaceKind::HypReal, 4, 0.5), 1e-4);
    CHECK(std::abs(small.entries.back().value - 1.0) < 1e-3);
    CHECK_THROWS_AS(soliton::graph_curvatures(e2, 0.0), DomainError);
    CHECK_THROWS_AS(soliton::gaussian_curvature_graph(e2, 0.0), DomainError);
}

TEST_CASE("soliton residual") {
    CHECK(std::abs(soliton::soliton_residual(params(SpaceKind::Sphere, 2, 0.5), 0.7)) < 1e-8);
    CHECK(std::abs(soliton::soliton_residual(params(SpaceKind::Euclidean, 5, 0.3), 2.0)) < 1e-6);
    CHECK(std::abs(soliton::soliton_residual(params(SpaceKind::HypOctonionic, 2, 0.3), 1.0)) < 1e-6);
    CHECK_THROWS_AS(soliton::soliton_residual(params(SpaceKind::Sphere, 2, 0.5), 0.0), DomainError);
}

TEST_CASE("residual detects a perturbed g") {
    auto p = params(SpaceKind::Euclidean, 3, 0.5);
    p.g_scale = 1.01;
    CHECK(std::abs(soliton::soliton_residual(p, 1.0)) > 1e-4);
}

TEST_CASE("ODE oracle") {
    const auto e2 = soliton::ode_oracle_tau(params(SpaceKind::Euclidean, 2, 0.5), 2.0);
    CHECK(std::abs(e2(2.0) - (1.0 - std::exp(-4.0))) < 1e-7);
    const auto zero = soliton::ode_oracle_tau(params(SpaceKind::Euclidean, 2, 0.5), 0.0);
    CHECK(zero(0.0) == 0.0);
    const auto s2 = soliton::ode_oracle_tau(params(SpaceKind::Sphere, 2, 0.5), 1.2);
    CHECK(std::abs(s2(1.2) - std::pow(std::sin(1.2), 2)) < 1e-7);
}

TEST_CASE("exploratory truncation radius") {
    const Construction c(params(SpaceKind::Euclidean, 2, 1.0, Mode::Exploratory));
    REQUIRE_FALSE(c.s_max_effective().is_unbounded());
    CHECK(std::abs(c.s_max_effective().value() - std::sqrt(2.0)) < 1e-9);
    CHECK_THROWS_AS(c.tau(1.5), DomainError);
}

TEST_CASE("build_profile: grid layout and invariants") {
    soliton::GridSpec grid;
    grid.points = 64;
    const auto prof = soliton::build_profile(params(SpaceKind::HypReal, 3, 0.4), grid);
    REQUIRE(prof.size() == 64);
    CHECK(prof.s.front() == 0.0);
    CHECK(prof.tau.front() == 0.0);
    CHECK(prof.phi.front() == 0.0);
    CHECK(std::abs(prof.tau.back() - 0.999) < 1e-9);
    for (std::size_t i = 1; i < prof.size(); ++i) {
        CHECK(prof.s[i] > prof.s[i - 1]);
        CHECK(prof.tau[i] > prof.tau[i - 1]);
        CHECK(prof.phi[i] > prof.phi[i - 1]);
        CHECK(std::abs(prof.residual[i]) < 1e-6);
    }
    // Psi-uniform spacing.
    const double step = prof.psi[1] - prof.psi[0];
    CHECK(std::abs((prof.psi[40] - prof.psi[39]) - step) < 1e-8 * prof.psi.back());
}

TEST_CASE("build_profile: s-uniform grid to a fixed radius") {
    soliton::GridSpec grid;
    grid.points = 11;
    grid.spacing = soliton::Spacing::SUniform;
    grid.s_end = 10.0;
    const auto prof = soliton::build_profile(params(SpaceKind::HypReal, 3, 0.5), grid);
    CHECK(prof.s.back() == 10.0);
    CHECK(std::abs(prof.s[3] - 3.0) < 1e-15);
    CHECK(prof.tau.back() > 0.99);
}

TEST_CASE("build_profile: strict mode names the interval") {
    try {
        soliton::build_profile(params(SpaceKind::Sphere, 2, 0.4), {});
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("[0.5, 0.5]") != std::string::npos);
    }
}

TEST_CASE("build_profile: bad grids") {
    soliton::GridSpec grid;
    grid.points = 1;
    CHECK_THROWS_AS(soliton::build_profile(params(SpaceKind::Euclidean, 2, 0.5), grid), ValidationError);
    grid.points = 8;
    grid.s_end = 2.0;
    CHECK_THROWS_AS(soliton::build_profile(params(SpaceKind::Sphere, 2, 0.5), grid), DomainError);
    grid.s_end.reset();
    grid.tau_end = 1.0;
    CHECK_THROWS(soliton::build_profile(params(SpaceKind::Euclidean, 2, 0.5), grid));
}

TEST_CASE("plugins") {
    soliton::GridSpec grid;
    grid.points = 32;
    grid.spacing = soliton::Spacing::SUniform;
    grid.s_end = 4.0;

    const auto horo = soliton::build_profile_from_plugin(soliton::horosphere_plugin(2), 0.5, grid);
    CHECK(horo.family == "horosphere-hyp-real");
    for (std::size_t i = 0; i < horo.size(); ++i)
        CHECK(std::abs(horo.tau[i] + std::expm1(-2.0 * horo.s[i])) < 1e-10);

    // A plugin echoing a built-in space reproduces it bit for bit.
    const auto p = params(SpaceKind::Euclidean, 3, 0.5);
    const auto direct = soliton::build_profile(p, grid);
    const auto echoed = soliton::build_profile_from_plugin(soliton::space_plugin(p.space), 0.5, grid);
    CHECK(direct.tau == echoed.tau);
    CHECK(direct.phi == echoed.phi);
    CHECK(direct.residual == echoed.residual);

    auto broken = soliton::horosphere_plugin(3);
    broken.g_fn = [](double s) { return 1.0 - s; };
    CHECK_THROWS_AS(soliton::build_profile_from_plugin(broken, 0.5, grid), ValidationError);
}

TEST_CASE("sup rho'") {
    const auto s2 = params(SpaceKind::Sphere, 2, 0.5);
    CHECK(std::abs(soliton::sup_rho_prime(s2, 1e-3, kPi / 2 - 1e-3) - std::cos(1e-3)) < 1e-9);
    const auto s5 = params(SpaceKind::Sphere, 5, 0.25);
    const double coarse = soliton::sup_rho_prime(s5, 1e-3, kPi / 2 - 1e-3, 256);
    const double fine = soliton::sup_rho_prime(s5, 1e-3, kPi / 2 - 1e-3, 512);
    CHECK(std::isfinite(fine));
    CHECK(std::abs(fine - coarse) < 0.01 * fine);
    CHECK(std::abs(soliton::sup_rho_prime(params(SpaceKind::Euclidean, 2, 0.5), 1e-6, 3.0) - 1.0) < 1e-6);
}

TEST_CASE("growth bound") {
    const auto s2 = params(SpaceKind::Sphere, 2, 0.5);
    const auto gb = soliton::growth_bound_check(s2, 1.4);
    CHECK(std::abs(gb.lhs - 1.77215013766969851226) < 1e-9);
    CHECK(gb.bound == 1.0);
    CHECK(std::abs(gb.rhs - 1.77215013766969851226) < 1e-12);

    const auto s3 = soliton::growth_bound_check(params(SpaceKind::Sphere, 3, 0.5), 1.3);
    CHECK(s3.lhs >= s3.rhs);
    const auto s5 = soliton::growth_bound_check(params(SpaceKind::Sphere, 5, 0.25), 1.5);
    CHECK(s5.lhs >= s5.rhs);

    CHECK_THROWS_AS(soliton::growth_bound_check(params(SpaceKind::Euclidean, 2, 0.5), 1.0), ValidationError);
    CHECK_THROWS_AS(soliton::growth_bound_check(params(SpaceKind::Sphere, 2, 0.5), 1.6), ValidationError);
    // alpha (n - 1) < 1 on S^6 at alpha = 1/6 is outside I_M anyway.
    CHECK_THROWS_AS(soliton::growth_bound_check(params(SpaceKind::Sphere, 6, 0.19, Mode::Exploratory), 1.0),
                    ValidationError);
}

TEST_CASE("Phi(Phi^{-1}(y)) = y on [0, 30]") {
    // Where p >= 2 the level for y = 30 is still far from 1, so the round trip
    // is well conditioned in binary64.
    const SolitonParams cases[] = {
        params(SpaceKind::Euclidean, 3, 0.25),
        params(SpaceKind::Sphere, 5, 0.25),
        params(SpaceKind::HypComplex, 2, 0.2),
        params(SpaceKind::HypOctonionic, 2, 0.125),
    };
    for (const auto& p : cases) {
        const Construction c(p);
        for (int k = 0; k <= 60; ++k) {
            const double y = 0.5 * k;
            CAPTURE(geometry::describe(p.space));
            CAPTURE(y);
            CHECK(std::abs(c.tau_integral(c.tau_from_integral(y)) - y) < 1e-10);
        }
    }
}

TEST_CASE("Phi(Phi^{-1}(y)) at p = 1 is limited by the spacing of doubles below 1") {
    // With p = 1 and n = 2, Phi = -log(1 - tau): an ulp of tau costs e^y ulps of y.
    const Construction c(params(SpaceKind::Euclidean, 2, 0.5));
    for (int k = 0; k <= 60; ++k) {
        const double y = 0.5 * k;
        const double tau = c.tau_from_integral(y);
        const double conditioning = std::nextafter(tau, 2.0) - tau;
        CAPTURE(y);
        CHECK(std::abs(c.tau_integral(tau) - y) < 1e-10 + 2.0 * conditioning * std::exp(y));
    }
}

TEST_CASE("identity and oracle across each exponent interval") {
    struct Family {
        SpaceKind kind;
        int dim;
    };
    const Family families[] = {
        {SpaceKind::Euclidean, 2},   {SpaceKind::Euclidean, 5},     {SpaceKind::Sphere, 2},
        {SpaceKind::Sphere, 3},      {SpaceKind::Sphere, 6},        {SpaceKind::HypReal, 3},
        {SpaceKind::HypComplex, 2},  {SpaceKind::HypQuaternionic, 1}, {SpaceKind::HypOctonionic, 2},
    };
    soliton::GridSpec grid;
    grid.points = 96;
    for (const auto& f : families) {
        const auto space = geometry::make_space(f.kind, f.dim);
        const auto iv = geometry::alpha_interval(space);
        // An open interval (0, 1/2] is sampled at 1/8 instead of its excluded end.
        const double lo = iv.closed_lo ? iv.lo : 0.125;
        for (double alpha : {lo, 0.5 * (lo + iv.hi), iv.hi}) {
            const auto p = params(f.kind, f.dim, alpha);
            CAPTURE(geometry::describe(space));
            CAPTURE(alpha);
            const Construction c(p);
            const auto prof = c.build(grid);
            double sup_residual = 0.0;
            for (std::size_t i = 1; i < prof.size(); ++i)
                sup_residual = std::max(sup_residual, std::abs(prof.residual[i]));
            CHECK(sup_residual < 1e-6);

            const double s_max =
                c.s_max_effective().is_unbounded() ? 10.0 : std::min(c.s_max_effective().value(), 10.0);
            const double s_end = 0.95 * s_max;
            const auto oracle = c.ode_oracle(s_end);
            double sup_gap = 0.0;
            for (int k = 0; k <= 64; ++k) {
                const double s = s_end * k / 64.0;
                sup_gap = std::max(sup_gap, std::abs(c.tau(s) - oracle(s)));
            }
            CHECK(sup_gap < 1e-6);
        }
    }
}

TEST_CASE("Gaussian curvature of the graph is the product of its principal curvatures") {
    const SolitonParams cases[] = {
        params(SpaceKind::Euclidean, 4, 0.3),
        params(SpaceKind::Sphere, 3, 0.5),
        params(SpaceKind::HypQuaternionic, 2, 0.25),
    };
    for (const auto& p : cases) {
        for (double s : {0.1, 0.7, 1.3}) {
            CAPTURE(geometry::describe(p.space));
            CAPTURE(s);
            const double product = soliton::graph_curvatures(p, s).product();
            CHECK(std::abs(soliton::gaussian_curvature_graph(p, s) - product) <=
                  1e-10 * std::max(1.0, std::abs(product)));
        }
    }
}
