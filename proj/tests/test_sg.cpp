#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "glint/oracle.hpp"
#include "glint/sg.hpp"
#include "test_util.hpp"

using namespace glint;
using std::numbers::pi;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const QuadratureSpec kLattice{1'000'000, 0};
}

TEST_CASE("isotropic lobe evaluation") {
    const SphericalGaussian sg{{0.0, 0.0, 1.0}, 1.0, {1.0, 1.0, 1.0}};

    SECTION("amplitude at the axis") {
        const Rgb v = eval(sg, sg.axis);
        CHECK(v.r == 1.0);
        CHECK(v.g == 1.0);
        CHECK(v.b == 1.0);
    }
    SECTION("orthogonal direction decays by exp(-sharpness)") {
        CHECK_THAT(eval(sg, {1.0, 0.0, 0.0}).r, WithinRel(std::exp(-1.0), 1e-12));
    }
    SECTION("flat-lobe limit") {
        const SphericalGaussian flat{{0.0, 0.0, 1.0}, 1e-12, {0.7, 0.8, 0.9}};
        std::mt19937_64 rng(7);
        for (int i = 0; i < 100; ++i) {
            const Rgb v = eval(flat, testutil::random_direction(rng));
            CHECK_THAT(v.r, WithinAbs(0.7, 1e-9));
            CHECK_THAT(v.g, WithinAbs(0.8, 1e-9));
            CHECK_THAT(v.b, WithinAbs(0.9, 1e-9));
        }
    }
    SECTION("non-negative, maximal at the axis") {
        const SphericalGaussian lobe = make_sg(normalize({0.2, -0.5, 1.0}), 37.0, {2.0, 1.0, 0.5});
        const double peak = eval(lobe, lobe.axis).r;
        std::mt19937_64 rng(11);
        for (int i = 0; i < 1000; ++i) {
            const double v = eval(lobe, testutil::random_direction(rng)).r;
            CHECK(v >= 0.0);
            CHECK(v <= peak * (1.0 + 1e-15));
        }
    }
}

TEST_CASE("anisotropic lobe evaluation") {
    std::mt19937_64 rng(3);
    const auto frame = testutil::random_frame(rng);
    const AnisotropicSphericalGaussian asg{frame.z, frame.x, frame.y, 40.0, 10.0, {1.5, 1.0, 0.5}};

    SECTION("amplitude at the lobe axis") {
        const Rgb v = eval(asg, asg.lobe);
        CHECK_THAT(v.r, WithinRel(1.5, 1e-12));
        CHECK_THAT(v.g, WithinRel(1.0, 1e-12));
        CHECK_THAT(v.b, WithinRel(0.5, 1e-12));
    }
    SECTION("clamped to zero on the back hemisphere") {
        const Rgb v = eval(asg, -asg.lobe);
        CHECK(v.r == 0.0);
        const Rgb w = eval(asg, normalize(asg.tangent * 1.0 - asg.lobe * 0.3));
        CHECK(w.r == 0.0);
    }
    SECTION("zero at the tangent (perpendicular to the lobe)") {
        CHECK_THAT(eval(asg, asg.tangent).r, WithinAbs(0.0, 1e-15));
    }
    SECTION("non-negative, maximal at the lobe") {
        const double peak = eval(asg, asg.lobe).r;
        for (int i = 0; i < 1000; ++i) {
            const double v = eval(asg, testutil::random_direction(rng)).r;
            CHECK(v >= 0.0);
            CHECK(v <= peak * (1.0 + 1e-15));
        }
    }
}

TEST_CASE("polar and Cartesian anisotropic forms agree") {
    SECTION("lobe direction gives the amplitude") {
        const Rgb v = eval_asg_polar(0.0, pi / 2, pi / 2, 30.0, 20.0, {0.25, 0.5, 1.0});
        CHECK_THAT(v.r, WithinRel(0.25, 1e-12));
    }
    SECTION("equator gives zero") {
        CHECK_THAT(eval_asg_polar(pi / 2, 0.3, 1.2, 30.0, 20.0, {1, 1, 1}).r, WithinAbs(0.0, 1e-15));
    }
    SECTION("random directions across the whole sphere") {
        std::mt19937_64 rng(17);
        const auto frame = testutil::random_frame(rng);
        const AnisotropicSphericalGaussian asg{frame.z, frame.x, frame.y, 55.0, 7.0, {1.0, 2.0, 3.0}};
        for (int i = 0; i < 1000; ++i) {
            const Vec3 v = testutil::random_direction(rng);
            const double theta = std::acos(std::clamp(dot(v, frame.z), -1.0, 1.0));
            const double phi = std::acos(std::clamp(dot(v, frame.x), -1.0, 1.0));
            const double eta = std::acos(std::clamp(dot(v, frame.y), -1.0, 1.0));
            const Rgb a = eval(asg, v);
            const Rgb b = eval_asg_polar(theta, phi, eta, asg.lambda, asg.mu, asg.amplitude);
            REQUIRE_THAT(a.r, WithinAbs(b.r, 1e-9));
            REQUIRE_THAT(a.g, WithinAbs(b.g, 1e-9));
            REQUIRE_THAT(a.b, WithinAbs(b.b, 1e-9));
        }
    }
}

TEST_CASE("anisotropic lobe integral") {
    SECTION("closed form substitutions") {
        const AnisotropicSphericalGaussian a{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}, 100.0, 100.0, {1, 1, 1}};
        CHECK_THAT(integral(a).r, WithinRel(pi / 100.0, 1e-12));
        const AnisotropicSphericalGaussian b{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}, 400.0, 100.0, {1, 1, 1}};
        CHECK_THAT(integral(b).r, WithinRel(pi / 200.0, 1e-12));
    }
    SECTION("agrees with sphere quadrature within 5%") {
        std::mt19937_64 rng(23);
        const auto frame = testutil::random_frame(rng);
        for (const auto [lambda, mu] : {std::pair{100.0, 100.0}, {50.0, 70.0}, {400.0, 90.0}}) {
            const AnisotropicSphericalGaussian asg{frame.z, frame.x, frame.y, lambda, mu, {1, 1, 1}};
            const double quad =
                spherical_quadrature([&](const Vec3& v) { return eval(asg, v).r; }, kLattice);
            CHECK_THAT(integral(asg).r, WithinRel(quad, 0.05));
        }
    }
}

TEST_CASE("product integral of anisotropic and isotropic lobes") {
    const AnisotropicSphericalGaussian asg{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}, 100.0, 100.0, {1, 1, 1}};

    SECTION("on-axis value is the convolved amplitude") {
        // with half the SG sharpness entering the formula, lambda=mu=100 and
        // sharpness 100 give pi/sqrt(150*150)
        const SphericalGaussian sg{{0, 0, 1}, 100.0, {1, 1, 1}};
        CHECK_THAT(convolve(asg, sg).r, WithinRel(pi / 150.0, 1e-12));
    }
    SECTION("zero when the SG axis is behind the lobe") {
        const SphericalGaussian sg{{0, 0, -1}, 100.0, {1, 1, 1}};
        CHECK(convolve(asg, sg).r == 0.0);
    }
    SECTION("matches quadrature off-axis within 10%") {
        const double th = 10.0 * pi / 180.0;
        const SphericalGaussian sg{{std::sin(th), 0.0, std::cos(th)}, 200.0, {1, 1, 1}};
        const double quad = spherical_quadrature(
            [&](const Vec3& v) { return eval(asg, v).r * eval(sg, v).r; }, kLattice);
        CHECK_THAT(convolve(asg, sg).r, WithinRel(quad, 0.10));
    }
    SECTION("sharp-SG limit tends to lobe value times SG integral") {
        const double th = 5.0 * pi / 180.0;
        const SphericalGaussian sg{{std::sin(th), 0.0, std::cos(th)}, 50000.0, {1, 1, 1}};
        const double expected = eval(asg, sg.axis).r * integral(sg).r;
        CHECK_THAT(convolve(asg, sg).r, WithinRel(expected, 0.01));
    }
    SECTION("amplitude scaling is linear") {
        const SphericalGaussian sg{normalize({0.2, 0.1, 1.0}), 150.0, {1, 1, 1}};
        const Rgb base = convolve(asg, sg);

        AnisotropicSphericalGaussian asg4 = asg;
        asg4.amplitude = asg.amplitude * 4.0;  // power of two: bit-exact scaling
        CHECK(convolve(asg4, sg).r == 4.0 * base.r);

        SphericalGaussian sgs = sg;
        sgs.amplitude = sg.amplitude * 3.7;
        CHECK_THAT(convolve(asg, sgs).g, WithinRel(3.7 * base.g, 1e-12));
    }
}

TEST_CASE("anisotropic to isotropic collapse") {
    std::mt19937_64 rng(29);
    const auto frame = testutil::random_frame(rng);

    SECTION("equal bandwidths double into the sharpness") {
        const AnisotropicSphericalGaussian asg{frame.z, frame.x, frame.y, 100.0, 100.0, {1, 1, 1}};
        const SphericalGaussian sg = to_isotropic(asg);
        CHECK(sg.axis == frame.z);
        CHECK(sg.sharpness == 200.0);
        CHECK(sg.amplitude == asg.amplitude);
        CHECK(eval(sg, frame.z).r == eval(asg, frame.z).r);
    }
    SECTION("larger bandwidth wins regardless of order") {
        const AnisotropicSphericalGaussian asg{frame.z, frame.x, frame.y, 25.0, 100.0, {1, 1, 1}};
        CHECK(to_isotropic(asg).sharpness == 200.0);
    }
    SECTION("integral mismatch is the documented sqrt(lambda/mu) factor") {
        const AnisotropicSphericalGaussian asg{frame.z, frame.x, frame.y, 100.0, 25.0, {1, 1, 1}};
        const double asg_int = integral(asg).r;
        const double sg_int = integral(to_isotropic(asg)).r;
        CHECK_THAT(asg_int / sg_int, WithinRel(std::sqrt(100.0 / 25.0), 1e-6));
    }
}

TEST_CASE("product integral of two isotropic lobes") {
    SECTION("collinear axes collapse analytically") {
        const SphericalGaussian a{{0, 0, 1}, 100.0, {1, 1, 1}};
        const SphericalGaussian b{{0, 0, 1}, 100.0, {1, 1, 1}};
        CHECK_THAT(product_integral(a, b).r, WithinRel(pi / 100.0 * (1.0 - std::exp(-400.0)), 1e-12));
    }
    SECTION("antipodal axes hit the removable singularity") {
        for (const double nu : {1.0, 10.0, 40.0}) {
            const SphericalGaussian a{{0, 0, 1}, nu, {1, 1, 1}};
            const SphericalGaussian b{{0, 0, -1}, nu, {1, 1, 1}};
            const double v = product_integral(a, b).r;
            CHECK(std::isfinite(v));
            CHECK_THAT(v, WithinRel(4.0 * pi * std::exp(-2.0 * nu), 1e-6));
        }
    }
    SECTION("random lobes match quadrature within 0.1% for sharpness <= 500") {
        std::mt19937_64 rng(31);
        for (int i = 0; i < 4; ++i) {
            const SphericalGaussian a{testutil::random_direction(rng),
                                      10.0 + 490.0 * testutil::uniform01(rng),
                                      {1, 1, 1}};
            const SphericalGaussian b{testutil::random_direction(rng),
                                      10.0 + 490.0 * testutil::uniform01(rng),
                                      {1, 1, 1}};
            const double quad = spherical_quadrature(
                [&](const Vec3& v) { return eval(a, v).r * eval(b, v).r; }, kLattice);
            if (quad < 1e-200) continue;  // both sides collapse to the same denormal regime
            CHECK_THAT(product_integral(a, b).r, WithinRel(quad, 1e-3));
        }
    }
    SECTION("no overflow at large sharpness") {
        const SphericalGaussian a{{0, 0, 1}, 5000.0, {1, 1, 1}};
        const SphericalGaussian b{normalize({0.1, 0, 1.0}), 5000.0, {1, 1, 1}};
        CHECK(std::isfinite(product_integral(a, b).r));
    }
}

TEST_CASE("bandwidth floor in the factories") {
    CHECK(make_sg({0, 0, 1}, 0.0, {1, 1, 1}).sharpness == kMinBandwidth);
    const auto asg = make_asg({0, 0, 1}, {1, 0, 0}, {0, 1, 0}, -5.0, 1e-9, {1, 1, 1});
    CHECK(asg.lambda == kMinBandwidth);
    CHECK(asg.mu == kMinBandwidth);
}
