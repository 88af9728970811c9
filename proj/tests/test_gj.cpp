#include "doctest.h"
#include "rv/gj_kernels.hpp"
#include "rv/special.hpp"

using namespace rv;

TEST_CASE("h_kernel examples") {
    DirichletCoeffs z = riemann_coefficients(10);
    KernelSpec sp{&z, &z, 2, KernelVariant::cuspidal};
    CHECK(h_kernel(sp, 0.5L) == complex_t(0));
    CHECK(h_kernel(sp, -0.99L) == complex_t(0));
    // 2.5^{1.5}(1 + 1/4)
    CHECK(std::abs(h_kernel(sp, 2.5L) - 4.941058844013092L) < 1e-14L);
    CHECK(std::abs(k_dual_kernel(sp, 3.5L) - std::pow(3.5L, 1.5L) * (1 + 0.25L + 1 / 9.0L)) < 1e-15L);
    DirichletCoeffs t = tau_coefficients(10);
    KernelSpec sd{&t, &t, 2, KernelVariant::cuspidal};
    const real_t lam2 = -24 / std::pow(2.0L, 5.5L);
    CHECK(std::abs(h_kernel(sd, 2.5L) - std::pow(2.5L, 1.5L) * (1 + lam2 / 4)) < 1e-15L);
    KernelSpec far{&z, &z, 2, KernelVariant::cuspidal};
    CHECK_THROWS_AS(h_kernel(far, 11.5L), CoeffRangeExceeded);
}

TEST_CASE("Tate kernels") {
    auto [h0, k0] = clozel_tate_kernels(2, 0.5L);
    CHECK(std::abs(h0 - complex_t(1)) < 1e-18L);
    CHECK(h0 == k0);
    auto [h, k] = clozel_tate_kernels(2, 2.5L);
    CHECK(std::abs(h - complex_t(4.125L)) < 1e-17L);
    CHECK_THROWS_AS(clozel_tate_kernels(1, 2), PoleAtOne);
}

TEST_CASE("property: step structure between integers") {
    DirichletCoeffs t = tau_coefficients(30);
    for (complex_t s : {complex_t(2), complex_t(0.5L, 3)}) {
        KernelSpec sp{&t, &t, s, KernelVariant::cuspidal};
        for (long n = 1; n < 30; ++n) {
            auto strip = [&](real_t x) { return h_kernel(sp, x) * std::exp((0.5L - s) * std::log(x)); };
            complex_t a = strip(n + 0.01L), b = strip(n + 0.99L);
            CHECK(std::abs(a - b) <= 1e-16L * std::abs(a));
            // the step at n adds a_n n^{−s}
            if (n == 1) continue;
            complex_t jump = strip(n + 0.5L) - strip(n - 0.5L);
            CHECK(std::abs(jump - t[n] * std::exp(-s * std::log(static_cast<real_t>(n)))) < 1e-15L);
        }
    }
}

TEST_CASE("Tate pairing") {
    // ∫ H_s φ̂ + H_{1−s} φ = π^{−s/2}Γ(s/2)ζ(s); at s = 2 this is π/6
    PairingResult r = tate_pairing(2, GaussianPhi{});
    CHECK(std::abs(r.value - kPi / 6) < 1e-14L);
    CHECK(std::abs(r.reference - kPi / 6) < 1e-15L);
    // the Gaussian with another width sees the same zeros
    PairingResult z = tate_pairing(complex_t(0.5L, 14.134725141734693790L), GaussianPhi{2});
    CHECK(std::abs(z.value) < 1e-12L);
    CHECK_THROWS_AS(tate_pairing(1, GaussianPhi{}), PoleAtOne);
    CHECK_THROWS_AS(tate_pairing(2, GaussianPhi{0}), ConfigError);
}

TEST_CASE("property: Tate pairing equals the completed zeta function off the zeros") {
    for (complex_t s : {complex_t(0.3L, 1), complex_t(0.5L, 7), complex_t(0.8L, -3), complex_t(1.5L, 0)}) {
        PairingResult r = tate_pairing(s, GaussianPhi{});
        CHECK(std::abs(r.value - r.reference) < 1e-12L * std::abs(r.reference));
    }
}

TEST_CASE("L(s, Delta) oracles agree") {
    DirichletCoeffs t = tau_coefficients(200000);
    complex_t e = l_delta_euler(2, t, 200000), a = l_delta_afe(2, t);
    CHECK(std::abs(e - a) < 1e-9L);
    CHECK_THROWS_AS(l_delta_euler(1, t, 1000), ConfigError);
    // Λ(s) = (2π)^{−w}Γ(w)L(s), w = s + 11/2, is symmetric under s ↦ 1 − s
    auto lambda = [&](complex_t s) {
        complex_t w = s + 5.5L;
        return std::exp(-w * std::log(kTwoPi) + lgamma_c(w)) * l_delta_afe(s, t);
    };
    for (complex_t s : {complex_t(0.2L, 1), complex_t(0.5L, 4), complex_t(-0.5L, 0.3L)})
        CHECK(std::abs(lambda(s) - lambda(1.0L - s)) < 1e-13L * std::abs(lambda(s)));
}
