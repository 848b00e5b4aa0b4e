#include <ksoliton/errors.hpp>
#include <ksoliton/geometry.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace ksol;
using geometry::SpaceKind;

namespace {

// mpmath, 30 digits.
constexpr double kHalfCothHalf = 1.08197670686932642439;
constexpr double kCoth1 = 1.31303528549933130364;
constexpr double kCoth1Sq = 1.72406166096631046641;
constexpr double kGComplex2At1 = 0.65056063425701851554;

std::vector<geometry::AmbientSpace> all_spaces() {
    return {geometry::make_space(SpaceKind::Euclidean, 2),
            geometry::make_space(SpaceKind::Euclidean, 5),
            geometry::make_space(SpaceKind::Sphere, 2),
            geometry::make_space(SpaceKind::Sphere, 6),
            geometry::make_space(SpaceKind::HypReal, 3),
            geometry::make_space(SpaceKind::HypComplex, 1),
            geometry::make_space(SpaceKind::HypComplex, 3),
            geometry::make_space(SpaceKind::HypQuaternionic, 2),
            geometry::make_space(SpaceKind::HypOctonionic, 2)};
}

}  // namespace

TEST_CASE("make_space derives n, p and the radius") {
    const auto e3 = geometry::make_space(SpaceKind::Euclidean, 3);
    CHECK(e3.n == 3);
    CHECK(e3.radius.is_unbounded());

    const auto s2 = geometry::make_space(SpaceKind::Sphere, 2);
    CHECK(s2.n == 2);
    CHECK(s2.radius.value() == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));

    const auto c2 = geometry::make_space(SpaceKind::HypComplex, 2);
    CHECK(c2.n == 4);
    CHECK(c2.p == 1);
    CHECK(c2.radius.is_unbounded());

    const auto q2 = geometry::make_space(SpaceKind::HypQuaternionic, 2);
    CHECK(q2.n == 8);
    CHECK(q2.p == 3);
    const auto o2 = geometry::make_space(SpaceKind::HypOctonionic, 2);
    CHECK(o2.n == 16);
    CHECK(o2.p == 7);
    const auto r4 = geometry::make_space(SpaceKind::HypReal, 4);
    CHECK(r4.n == 4);
    CHECK(r4.p == 3);
}

TEST_CASE("make_space rejects bad dimensions") {
    CHECK_THROWS_AS(geometry::make_space(SpaceKind::Euclidean, 1), ValidationError);
    CHECK_THROWS_AS(geometry::make_space(SpaceKind::Sphere, 0), ValidationError);
    CHECK_THROWS_AS(geometry::make_space(SpaceKind::HypOctonionic, 3), ValidationError);
    CHECK_THROWS_AS(geometry::make_space(SpaceKind::HypComplex, 0), ValidationError);
    // H_R^1 is a line: its geodesic spheres are points.
    CHECK_THROWS_AS(geometry::make_space(SpaceKind::HypReal, 1), ValidationError);
}

TEST_CASE("principal curvatures of geodesic spheres") {
    const auto e3 = geometry::make_space(SpaceKind::Euclidean, 3);
    const auto spec = geometry::sphere_principal_curvatures(e3, 2.0);
    REQUIRE(spec.entries.size() == 1);
    CHECK(spec.entries[0] == geometry::CurvatureEntry{-0.5, 2});

    const auto r3 = geometry::make_space(SpaceKind::HypReal, 3);
    const auto hr = geometry::sphere_principal_curvatures(r3, 1.0);
    REQUIRE(hr.entries.size() == 1);
    CHECK(hr.entries[0].value == doctest::Approx(-kCoth1).epsilon(1e-15));
    CHECK(hr.entries[0].multiplicity == 2);

    const auto c2 = geometry::make_space(SpaceKind::HypComplex, 2);
    const auto hc = geometry::sphere_principal_curvatures(c2, 1.0);
    REQUIRE(hc.entries.size() == 2);
    CHECK(hc.entries[0].value == doctest::Approx(-kHalfCothHalf).epsilon(1e-15));
    CHECK(hc.entries[0].multiplicity == 2);
    CHECK(hc.entries[1].value == doctest::Approx(-kCoth1).epsilon(1e-15));
    CHECK(hc.entries[1].multiplicity == 1);

    const auto s3 = geometry::make_space(SpaceKind::Sphere, 3);
    const auto ss = geometry::sphere_principal_curvatures(s3, 0.3);
    CHECK(ss.entries[0].value == doctest::Approx(-1.0 / std::tan(0.3)).epsilon(1e-15));
}

TEST_CASE("principal curvatures: domain is (0, R)") {
    const auto s2 = geometry::make_space(SpaceKind::Sphere, 2);
    CHECK_THROWS_AS(geometry::sphere_principal_curvatures(s2, 0.0), DomainError);
    CHECK_THROWS_AS(geometry::sphere_principal_curvatures(s2, std::numbers::pi / 2), DomainError);
    const auto e2 = geometry::make_space(SpaceKind::Euclidean, 2);
    CHECK_THROWS_AS(geometry::sphere_principal_curvatures(e2, -1.0), DomainError);
}

TEST_CASE("g closed forms") {
    CHECK(geometry::g_of_s(geometry::make_space(SpaceKind::Euclidean, 3), 2.0) == 4.0);
    CHECK(geometry::g_of_s(geometry::make_space(SpaceKind::Sphere, 2), std::numbers::pi / 4) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(geometry::g_of_s(geometry::make_space(SpaceKind::HypComplex, 2), 1.0) ==
          doctest::Approx(kGComplex2At1).epsilon(1e-14));
    CHECK(geometry::g_of_s(geometry::make_space(SpaceKind::HypReal, 3), 0.0) == 0.0);
    CHECK_THROWS_AS(geometry::g_of_s(geometry::make_space(SpaceKind::Sphere, 2), 2.0), DomainError);
    CHECK_THROWS_AS(geometry::g_of_s(geometry::make_space(SpaceKind::Euclidean, 2), -0.1),
                    DomainError);
}

TEST_CASE("sphere Gaussian curvature") {
    const auto e2 = geometry::make_space(SpaceKind::Euclidean, 2);
    CHECK(geometry::gaussian_curvature_sphere(e2, 0.5) == -2.0);
    const auto e3 = geometry::make_space(SpaceKind::Euclidean, 3);
    CHECK(geometry::gaussian_curvature_sphere(e3, 2.0) == 0.25);
    const auto r3 = geometry::make_space(SpaceKind::HypReal, 3);
    CHECK(geometry::gaussian_curvature_sphere(r3, 1.0) == doctest::Approx(kCoth1Sq).epsilon(1e-14));
    CHECK_THROWS_AS(geometry::gaussian_curvature_sphere(e2, 0.0), DomainError);
}

TEST_CASE("alpha intervals") {
    const auto e7 = geometry::alpha_interval(geometry::make_space(SpaceKind::Euclidean, 7));
    CHECK(e7.lo == 0.0);
    CHECK(e7.hi == 0.5);
    CHECK_FALSE(e7.closed_lo);
    CHECK_FALSE(e7.contains(0.0));
    CHECK(e7.contains(1e-9));

    const auto s2 = geometry::alpha_interval(geometry::make_space(SpaceKind::Sphere, 2));
    CHECK(s2.lo == 0.5);
    CHECK(s2.closed_lo);
    CHECK(s2.contains(0.5));
    CHECK_FALSE(s2.contains(0.4));
    CHECK(s2.to_string() == "[0.5, 0.5]");

    const auto s5 = geometry::alpha_interval(geometry::make_space(SpaceKind::Sphere, 5));
    CHECK(s5.lo == 0.25);
    CHECK(s5.contains(0.25));
    CHECK(s5.to_string() == "[0.25, 0.5]");

    // delta_n = 1/(n-1) once that exceeds 1/4.
    const auto s4 = geometry::alpha_interval(geometry::make_space(SpaceKind::Sphere, 4));
    CHECK(s4.lo == doctest::Approx(1.0 / 3.0));
    const auto s9 = geometry::alpha_interval(geometry::make_space(SpaceKind::Sphere, 9));
    CHECK(s9.lo == 0.25);
}

TEST_CASE("g times K_s is (-1)^{n-1} and K_s is the spectrum product") {
    for (const auto& space : all_spaces()) {
        CAPTURE(geometry::describe(space));
        const double reach = space.radius.is_unbounded() ? 20.0 : space.radius.value();
        for (int k = 0; k < 40; ++k) {
            const double s = reach * std::pow(10.0, -6.0 + 6.0 * k / 40.0) * 0.999;
            const double g = geometry::g_of_s(space, s);
            const double K = geometry::gaussian_curvature_sphere(space, s);
            const double sign = (space.n - 1) % 2 == 0 ? 1.0 : -1.0;
            CHECK(g > 0.0);
            CHECK(std::abs(g * K - sign) < 1e-12);
            const auto spec = geometry::sphere_principal_curvatures(space, s);
            CHECK(spec.total_multiplicity() == space.n - 1);
            CHECK(spec.min_value() < 0.0);
            for (const auto& e : spec.entries) CHECK(e.value < 0.0);
            CHECK(std::abs(spec.product() - K) <= 1e-10 * std::abs(K));
        }
    }
}

TEST_CASE("g behaves like s^{n-1} near the centre") {
    for (const auto& space : all_spaces()) {
        CAPTURE(geometry::describe(space));
        const double s = 1e-4;
        CHECK(std::abs(geometry::g_of_s(space, s) / std::pow(s, space.n - 1) - 1.0) < 1e-3);
    }
}

TEST_CASE("hyperbolic g saturates at 2^{n-p-1}") {
    for (const auto& space : all_spaces()) {
        if (!space.is_hyperbolic()) continue;
        CAPTURE(geometry::describe(space));
        const double limit = std::pow(2.0, space.n - space.p - 1);
        CHECK(std::abs(geometry::g_of_s(space, 50.0) - limit) <= 1e-8 * limit);
    }
}

TEST_CASE("sphere g in high dimension stays finite close to the equator") {
    const auto s30 = geometry::make_space(SpaceKind::Sphere, 30);
    const double s = std::numbers::pi / 2 - 1e-9;
    const double g = geometry::g_of_s(s30, s);
    CHECK(std::isfinite(g));
    CHECK(g > 1e200);
}

TEST_CASE("kind names round-trip") {
    for (auto kind : {SpaceKind::Euclidean, SpaceKind::Sphere, SpaceKind::HypReal,
                      SpaceKind::HypComplex, SpaceKind::HypQuaternionic, SpaceKind::HypOctonionic}) {
        const auto parsed = geometry::parse_kind(geometry::kind_name(kind));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == kind);
    }
    CHECK_FALSE(geometry::parse_kind("torus").has_value());
}
