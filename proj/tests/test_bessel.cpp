#include <cmath>
#include <cstdio>

#include "doctest.h"
#include "rv/bessel_kernel.hpp"

using namespace rv;

namespace {
const RealPlaceParams kGL1{{GL1Block{0, 0}}};
const RealPlaceParams kDS2{{DS2Block{11, 0}}};
}  // namespace

TEST_CASE("GL(1)/R kernel is e(x)") {
    CHECK(std::abs(bessel_real(kGL1, 1, 1e-10L) - complex_t(1)) < 1e-9L);
    CHECK(std::abs(bessel_real(kGL1, 0.25L, 1e-10L) - complex_t(0, 1)) < 1e-9L);
    CHECK(std::abs(bessel_real(kGL1, 0.5L, 1e-10L) - complex_t(-1)) < 1e-9L);
    CHECK(std::abs(bessel_real(kGL1, -0.25L, 1e-10L) - complex_t(0, -1)) < 1e-9L);
    CHECK(std::abs(kernel_eval(kGL1, 4, 1e-10L) - complex_t(2)) < 1e-8L);
}

TEST_CASE("GL(1)/C kernel is e(z + conj z)") {
    const ComplexPlaceParams c{{ComplexBlock{0, 0}}};
    CHECK(std::abs(bessel_complex(c, complex_t(0.5L, 0.3L), 1e-9L, 64) - complex_t(1)) < 1e-7L);
    CHECK(std::abs(bessel_complex(c, complex_t(0.25L, -0.2L), 1e-9L, 64) - complex_t(-1)) < 1e-7L);
    // |z|_C = 4 and z + conj z = 2
    CHECK(std::abs(kernel_eval(c, complex_t(1, std::sqrt(3.0L)), 1e-9L) - complex_t(2)) < 1e-6L);
}

TEST_CASE("property: DS2 kernel is 2 pi J_l(4 pi sqrt x) for x > 0") {
    for (real_t x : {0.05L, 0.4L, 1.0L, 3.0L, 9.0L, 18.0L}) {
        const real_t oracle = kTwoPi * std::cyl_bessel_j(11.0L, 4 * kPi * std::sqrt(x));
        CHECK(std::abs(bessel_real(kDS2, x, 1e-11L) - oracle) < 1e-10L);
    }
}

TEST_CASE("contours respect their constraints") {
    // n = 1: the bound 1/2 + (Re t − 1)/n is −1/2, so the asymptote sits at −3/4
    Contour g = build_contour(kGL1, {0});
    CHECK(g.sigma < g.bound);
    CHECK(g.sigma == doctest::Approx(-0.75));
    CHECK(g.clearance >= 0.25L - 1e-18L);
    Contour d = build_contour(kDS2, {0});
    CHECK(d.sigma == doctest::Approx(-0.25));
    CHECK(d.nodes.empty());
    Contour c = build_contour(ComplexPlaceParams{{ComplexBlock{0, 0}}}, {0});
    CHECK(c.sigma < 0);
    CHECK_THROWS_AS(build_contour_at(gamma_dual_poles(kGL1, {0}), 0.5L, 0), InfeasibleContour);
}

TEST_CASE("property: kernel values do not depend on the admissible contour") {
    Contour c1 = build_contour(kGL1, {0});
    Contour c2 = build_contour_at(gamma_dual_poles(kGL1, {0}), -0.6L, c1.bound);
    for (real_t x : {0.2L, 1.3L, -2.2L}) {
        complex_t a = bessel_real_mb(kGL1, x, 1e-10L, c1).value;
        complex_t b = bessel_real_mb(kGL1, x, 1e-10L, c2).value;
        CHECK(std::abs(a - b) < 1e-8L);
    }
}

TEST_CASE("kernel table") {
    KernelTable t = kernel_table(kGL1, {1}, 1e-9L);
    REQUIRE(t.values.size() == 1);
    CHECK(std::abs(t.values[0] - complex_t(1)) < 1e-8L);
    CHECK_THROWS_AS(kernel_table(kGL1, {}, 1e-9L), ConfigError);
    CHECK_THROWS_AS(kernel_table(kGL1, {0}, 1e-9L), ConfigError);

    KernelTable u = kernel_table(kDS2, {-2, -0.5L, 0.5L, 3}, 1e-9L);
    u.params_json = R"({"place":"real","blocks":[{"kind":"ds2","l":11,"t":"0,0"}]})";
    const std::string path = "kernel_roundtrip.csv";
    save_kernel_table(u, path);
    KernelTable v = load_kernel_table(path);
    REQUIRE(v.values.size() == u.values.size());
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        CHECK(v.values[i] == u.values[i]);
        CHECK(v.grid[i] == u.grid[i]);
        CHECK(v.sign[i] == u.sign[i]);
    }
    CHECK(v.achieved_tol == u.achieved_tol);
    CHECK(v.contour.sigma == u.contour.sigma);
    std::remove(path.c_str());
    std::remove((path + ".json").c_str());
}

TEST_CASE("property: sampled kernel matches direct contour integration") {
    const RealPlaceParams mixed{{GL1Block{1, 0}, DS2Block{3, 0}}};
    for (const RealPlaceParams* p : {&kGL1, &kDS2, &mixed}) {
        BesselSampler bs(*p, 1e-10L);
        for (real_t x : {0.3L, 0.9L, 3.7L, 12.0L, 41.0L, -0.3L, -3.7L, -41.0L}) {
            complex_t a = bs(x).value;
            complex_t b = bessel_real_mb(*p, x, 1e-11L).value;
            CHECK(std::abs(a - b) < 1e-9L);
        }
    }
    BesselSampler bs(kDS2, 1e-10L);
    CHECK(bs(-2.0L).value == complex_t(0));
    CHECK_THROWS_AS(bs(0.0L), ConfigError);
}
