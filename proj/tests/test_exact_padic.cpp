#include <random>

#include "doctest.h"
#include "rv/padic_local.hpp"

using namespace rv;

namespace {
// τ(p) for the Δ tests; the q-expansion oracle is checked in test_voronoi
SatakeParams delta_at(long p) {
    const long tau[] = {0, 0, -24, 252, 0, 4830, 0, -16744};
    return delta_satake(p, tau[p]);
}
}  // namespace

TEST_CASE("quadratic field arithmetic") {
    QF a(mpq_class(1, 2), mpq_class(3), -7), b(mpq_class(-2), mpq_class(1, 3), -7);
    CHECK(a * a.inverse() == QF(1));
    CHECK((a + b) - b == a);
    CHECK(a * b == b * a);
    // (x + y√d)(x − y√d) = x² − d y²
    CHECK(a * a.conj() == QF(mpq_class(1, 4) + 7 * 9));
    CHECK_THROWS_AS(QF(0).inverse(), Singular);
    CHECK_THROWS_AS(a + QF(1, 1, 5), ConfigError);
}

TEST_CASE("p-adic helpers") {
    CHECK(vp(mpq_class(50, 3), 5) == 2);
    CHECK(vp(mpq_class(3, 250), 5) == -3);
    CHECK(vp(mpq_class(0), 5) == LONG_MAX);
    CHECK(frac_p(mpq_class(1, 4), 2) == mpq_class(1, 4));
    CHECK(frac_p(mpq_class(7, 4), 2) == mpq_class(3, 4));
    CHECK(frac_p(mpq_class(1, 3), 2) == 0);
    // 1/15 = a/5 + (integral at 5): {1/15}_5 = 2/5 since 3·2 ≡ 1 mod 5
    CHECK(frac_p(mpq_class(1, 15), 5) == mpq_class(2, 5));
    CHECK(parse_rational("-3/6") == mpq_class(-1, 2));
}

TEST_CASE("exact values of roots of unity") {
    ExactValue z = root_of_unity(mpq_class(1, 5));
    ExactValue sum;
    for (int k = 0; k < 5; ++k) sum += root_of_unity(mpq_class(k, 5));
    CHECK(sum == ExactValue());
    CHECK(std::abs(z.to_complex() - std::exp(complex_t(0, kTwoPi / 5))) < 1e-17L);
    CHECK(root_of_unity(mpq_class(1, 4)) * root_of_unity(mpq_class(3, 4)) == ExactValue(Alg(QF(1))));
}

TEST_CASE("whittaker_diag") {
    SatakeParams sp{3, {QF(mpq_class(2)), QF(mpq_class(1, 2))}, 0};
    CHECK(whittaker_diag(sp, 0) == Alg(QF(1)));
    CHECK(whittaker_diag(sp, -1).is_zero());
    // q^{−1/2}(a + 1/a)
    CHECK(whittaker_diag(sp, 1) == sqrt_power(3, -1) * Alg(QF(mpq_class(5, 2))));
    // Δ: τ(p^m)/p^{6m}, here m = 1 at p = 2
    CHECK(whittaker_diag(delta_at(2), 1) == Alg(QF(mpq_class(-24, 64))));
}

TEST_CASE("basic function") {
    CHECK(basic_function_value(delta_at(2), 0) == Alg(QF(1)));
    CHECK(basic_function_value(delta_at(2), -1).is_zero());
    // λ(2)/√2 = τ(2)/2^6
    CHECK(basic_function_value(delta_at(2), 1) == Alg(QF(mpq_class(-3, 8))));
    // λ(4)/2 = τ(4)/2^{12}
    CHECK(basic_function_value(delta_at(2), 2) == Alg(QF(mpq_class(-1472, 4096))));
}

TEST_CASE("local L-series identity") {
    CHECK(local_l_series_check(SatakeParams{2, {QF(1)}, 0}, 10).ok);
    auto r = local_l_series_check(SatakeParams{5, {QF(mpq_class(3, 2)), QF(mpq_class(2, 3))}, 0}, 30);
    CHECK(r.ok);
    auto bad = r.series.coeffs;
    bad[4] += QF(mpq_class(1, 1000));
    CHECK_FALSE(l_series_identity(bad, {QF(mpq_class(3, 2)), QF(mpq_class(2, 3))}));
    for (long p : {2L, 3L, 5L, 7L}) CHECK(local_l_series_check(delta_at(p), 30).ok);
    CHECK_THROWS_AS(local_l_series_check(SatakeParams{1, {QF(1)}, 0}, 3), ConfigError);
}

TEST_CASE("property: complete homogeneous polynomials, exact and floating agree") {
    std::vector<QF> a{QF(mpq_class(2)), QF(mpq_class(-1, 3)), QF(mpq_class(5, 7))};
    std::vector<complex_t> ac;
    for (auto& x : a) ac.push_back(x.to_complex());
    for (long m = 0; m <= 8; ++m) {
        complex_t e = complete_homogeneous(m, a).to_complex();
        CHECK(std::abs(e - complete_homogeneous(m, ac)) < 1e-13L * std::max<real_t>(1, std::abs(e)));
    }
}

TEST_CASE("Iwasawa decomposition") {
    PAdicMat k(5, 2, {2, 1, 1, 1});
    Iwasawa a = iwasawa_gl2(k);
    CHECK(a.u == PAdicMat::identity(5, 2));
    CHECK(a.t == PAdicMat::identity(5, 2));
    PAdicMat d = PAdicMat::diag(5, {25, mpq_class(1, 5)});
    Iwasawa b = iwasawa_gl2(d);
    CHECK(b.t == d);
    CHECK(b.k == PAdicMat::identity(5, 2));
    // [[xζ, x], [1, 0]] with v(ζ) = −1
    PAdicMat g(5, 2, {mpq_class(7, 5), 7, 1, 0});
    Iwasawa c = iwasawa_gl2(g);
    CHECK(c.u * c.t * c.k == g);
    CHECK(c.k.in_K());
}

TEST_CASE("property: Iwasawa factors multiply back, GL3") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> ent(-20, 20), den(0, 2);
    for (long p : {2L, 3L}) {
        for (int i = 0; i < 15; ++i) {
            PAdicMat g(p, 3);
            do {
                for (auto& x : g.e) {
                    mpz_class dd;
                    mpz_ui_pow_ui(dd.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(den(rng)));
                    x = mpq_class(ent(rng), dd);
                    x.canonicalize();
                }
            } while (g.det() == 0);
            Iwasawa w = iwasawa_gl3(g);
            CHECK(w.u * w.t * w.k == g);
            CHECK(w.k.in_K());
            for (int r = 0; r < 3; ++r) {
                CHECK(w.u(r, r) == 1);
                for (int c = 0; c < r; ++c) CHECK(w.u(r, c) == 0);
            }
        }
    }
}

TEST_CASE("Whittaker function on GL2") {
    SatakeParams d5 = delta_at(5);
    CHECK(whittaker_general(d5, PAdicMat::identity(5, 2)) == ExactValue(Alg(QF(1))));
    // n(y)diag(p,1), y ∈ Z_p
    PAdicMat g(5, 2, {5, 3, 0, 1});
    CHECK(whittaker_gl2_general(d5, g) == ExactValue(whittaker_diag(d5, 1)));
    // n(1/p)diag(p,1): ψ_p(1/p) = e(−1/p)
    PAdicMat h(5, 2, {5, mpq_class(1, 5), 0, 1});
    CHECK(whittaker_gl2_general(d5, h) == root_of_unity(mpq_class(-1, 5)) * ExactValue(whittaker_diag(d5, 1)));
}

TEST_CASE("ramified transform") {
    SatakeParams d5 = delta_at(5);
    // integral ζ: the twist is invisible
    for (long m = -1; m <= 3; ++m) {
        mpq_class x = m >= 0 ? mpq_class(7 * (m == 0 ? 1 : m * 5)) : mpq_class(2, 5);
        CHECK(ramified_transform_gl2(d5, 3, x) == ExactValue(whittaker_diag(d5, vp(x, 5))));
    }
    CHECK_THROWS_AS(ramified_transform_gl2(d5, 0, 1), ConfigError);
    CHECK_THROWS_AS(ramified_transform_gl2(SatakeParams{5, {QF(2), QF(3)}, 0}, 1, 1), ConfigError);
    // |ζ| = 5: support starts two shells down and the shell below is empty
    ShellValues s2 = ramified_shell_gl2(d5, mpq_class(1, 5), -2);
    ShellValues s3 = ramified_shell_gl2(d5, mpq_class(1, 5), -3);
    CHECK_FALSE(s2.vanishes());
    CHECK(s3.vanishes());
}

TEST_CASE("property: Weyl conventions differ by zeta -> -zeta") {
    SatakeParams d5 = delta_at(5);
    for (long a = 1; a < 5; ++a)
        for (mpq_class x : {mpq_class(1, 25), mpq_class(3, 25), mpq_class(2, 5), mpq_class(1)}) {
            mpq_class z(a, 5);
            CHECK(ramified_transform_gl2(d5, z, x, WeylConvention::swap) ==
                  ramified_transform_gl2(d5, -z, x, WeylConvention::det_one));
        }
}

TEST_CASE("GL3 Kloosterman integral terminates") {
    SatakeParams s3{5, {QF(2), QF(1), QF(mpq_class(1, 2))}, 0};
    KloostermanResult r = kloosterman_gl3(1, mpq_class(1, 5), s3);
    CHECK(r.vanishing_shell >= 0);
    CHECK(std::isfinite(static_cast<double>(std::abs(r.value.to_complex()))));
    CHECK_THROWS_AS(kloosterman_gl3(1, mpq_class(1, 5), s3, 0), DepthExceeded);
}

TEST_CASE("literal n = 2 Kloosterman reading drops the additive phase") {
    auto d5 = delta_satake(5, 4830);
    // same modulus, different numerators: the literal reading cannot tell them apart
    for (long a = 1; a < 5; ++a) {
        mpq_class zeta(a, 5);
        for (long r : {1L, 2L, 3L}) {
            mpq_class alpha(r, 25);
            auto lit = kloosterman_gl2_literal(d5, alpha, zeta);
            auto tr = ramified_transform_gl2(d5, zeta, alpha);
            CHECK(lit == kloosterman_gl2_literal(d5, alpha, mpq_class(1, 5)));
            CHECK(std::abs(std::abs(lit.to_complex()) - std::abs(tr.to_complex())) < 1e-15L);
            // the transform carries e(r a^-1 / 5), never trivial here
            CHECK(std::abs(tr.to_complex() - lit.to_complex()) > 0.1L);
        }
        // on the unit shell both readings agree
        CHECK(kloosterman_gl2_literal(d5, mpq_class(1), zeta) == ramified_transform_gl2(d5, zeta, mpq_class(1)));
    }
}
