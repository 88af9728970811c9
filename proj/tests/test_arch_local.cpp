#include <random>

#include "doctest.h"
#include "rv/arch_local.hpp"
#include "rv/special.hpp"

using namespace rv;

namespace {
bool close(complex_t a, complex_t b, real_t tol) { return std::abs(a - b) <= tol * std::max<real_t>(1, std::abs(b)); }
}  // namespace

TEST_CASE("l_factor examples") {
    RealPlaceParams gl1{{GL1Block{0, 0}}};
    CHECK(close(l_factor(gl1, {0}, 1), 1, 1e-15L));
    ComplexPlaceParams c0{{ComplexBlock{0, 0}}};
    // 2(2π)^{−1}Γ(1)
    CHECK(close(l_factor(c0, {0}, 1), 0.31830988618379067154L, 1e-15L));
    RealPlaceParams ds2{{DS2Block{11, 0}}};
    // 2(2π)^{−6}Γ(6), mpmath at 50 digits
    CHECK(close(l_factor(ds2, {0}, 0.5L), 0.0039006055248594461103L, 1e-15L));
}

TEST_CASE("epsilon factors") {
    CHECK(epsilon_factor(ComplexPlaceParams{{ComplexBlock{0, 0}, ComplexBlock{0, 0}}}, {0}) == complex_t(1));
    CHECK(close(epsilon_factor(ComplexPlaceParams{{ComplexBlock{0, 3}}}, {0}), complex_t(0, -1), 1e-18L));
    CHECK(close(epsilon_factor(RealPlaceParams{{DS2Block{11, 0}}}, {0}), 1, 1e-18L));
}

TEST_CASE("gamma factor at the symmetric point") {
    CHECK(close(gamma_factor(RealPlaceParams{{GL1Block{0, 0}}}, {0}, 0.5L), 1, 1e-15L));
    CHECK(close(gamma_factor(RealPlaceParams{{DS2Block{11, 0}}}, {0}, 0.5L), 1, 1e-15L));
    CHECK(close(gamma_factor(ComplexPlaceParams{{ComplexBlock{0, 0}}}, {0}, 0.5L), 1, 1e-15L));
}

TEST_CASE("contragredient") {
    auto c = contragredient_params(ComplexPlaceParams{{ComplexBlock{complex_t(0.3L, 2), 5}}});
    CHECK(c.blocks[0].t == complex_t(-0.3L, -2));
    CHECK(c.blocks[0].l == -5);
    auto r = contragredient_params(RealPlaceParams{{DS2Block{11, 0}}});
    CHECK(std::get<DS2Block>(r.blocks[0]).l == 11);
    CHECK(std::get<DS2Block>(r.blocks[0]).t == complex_t(0));
}

TEST_CASE("pole of the L-factor is reported") {
    CHECK_THROWS_AS(l_factor(RealPlaceParams{{GL1Block{0, 0}}}, {0}, 0), PoleError);
    CHECK_THROWS_AS(l_factor(RealPlaceParams{{GL1Block{0, 0}}}, {0}, -2), PoleError);
}

TEST_CASE("invalid params are rejected") {
    CHECK_THROWS_AS(validate(RealPlaceParams{}), ConfigError);
    CHECK_THROWS_AS(validate(RealPlaceParams{{GL1Block{2, 0}}}), ConfigError);
    CHECK_THROWS_AS(validate(RealPlaceParams{{DS2Block{0, 0}}}), ConfigError);
}

TEST_CASE("property: gamma(s) gamma(1-s) for the contragredient is the central sign") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> re(-1.5, 2.5), im(-6, 6);
    const std::vector<std::pair<RealPlaceParams, real_t>> cases = {
        {RealPlaceParams{{GL1Block{0, complex_t(0.1L, 0.4L)}}}, 1},
        {RealPlaceParams{{GL1Block{1, complex_t(0, 1)}}}, -1},
        {RealPlaceParams{{DS2Block{11, 0}}}, 1},
        {RealPlaceParams{{DS2Block{4, complex_t(0, 0.3L)}}}, -1},
        {RealPlaceParams{{GL1Block{1, 0}, DS2Block{3, 0}}}, -1},
    };
    for (const auto& [p, sign] : cases) {
        const auto pd = contragredient_params(p);
        for (int i = 0; i < 20; ++i) {
            complex_t s(re(rng), im(rng));
            complex_t prod = gamma_factor(p, {0}, s) * gamma_factor(pd, {0}, 1.0L - s);
            CHECK(close(prod, sign, 1e-12L));
        }
    }
}

TEST_CASE("property: twisting by sgn twice is the identity") {
    RealPlaceParams p{{GL1Block{1, complex_t(0.2L, 1)}, DS2Block{5, 0}}};
    for (real_t t : {-3.0L, 0.0L, 2.5L}) {
        complex_t s(0.3L, t);
        CHECK(close(gamma_factor(p, {2}, s), gamma_factor(p, {0}, s), 1e-15L));
        CHECK(close(l_factor(p, {3}, s), l_factor(p, {1}, s), 1e-15L));
    }
}
