#include "doctest.h"
#include "rv/quadrature.hpp"
#include "rv/special.hpp"

using namespace rv;

TEST_CASE("gamma oracles") {
    CHECK(std::abs(gamma_c(0.5L) - std::sqrt(kPi)) < 1e-17L);
    CHECK(std::abs(gamma_c(6) - 120.0L) < 1e-14L);
    // reflection Γ(z)Γ(1−z) = π/sin(πz)
    complex_t z(0.3L, 2.1L);
    CHECK(std::abs(gamma_c(z) * gamma_c(1.0L - z) - kPi / std::sin(kPi * z)) < 1e-15L);
}

TEST_CASE("zeta oracle") {
    CHECK(std::abs(zeta_em(2) - kPi * kPi / 6) < 1e-16L);
    CHECK(std::abs(zeta_em(complex_t(0.5L, 14.134725141734693790L))) < 1e-8L);
    CHECK(std::abs(hardy_z_zero(14, 14.3L, 1e-10L) - 14.134725141734693790L) < 1e-9L);
    CHECK(std::abs(hardy_z_zero(20.5L, 21.5L, 1e-10L) - 21.022039638771554993L) < 1e-9L);
}

TEST_CASE("upper incomplete gamma") {
    // Γ(1, x) = e^{−x}
    CHECK(std::abs(upper_gamma(complex_t(1), 2.5L) - std::exp(-2.5L)) < 1e-17L);
    // Γ(2, x) = (x+1)e^{−x}
    CHECK(std::abs(upper_gamma(complex_t(2), 3.0L) - 4 * std::exp(-3.0L)) < 1e-16L);
}

TEST_CASE("adaptive Gauss-Legendre") {
    auto r = adaptive_gl<real_t>([](real_t x) { return std::sin(x); }, 0, kPi, 1e-15L, 20);
    CHECK(std::abs(r.value - 2) < 1e-15L);
}
