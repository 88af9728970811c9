#include <fstream>

#include "doctest.h"
#include "rv/voronoi_global.hpp"

using namespace rv;

namespace {
// τ(n) by brute-force product q∏(1−q^k)^{24}, an oracle independent of the Jacobi-cube route
std::vector<long long> tau_oracle(int N) {
    std::vector<long long> c(static_cast<std::size_t>(N), 0);
    c[0] = 1;
    for (int k = 1; k < N; ++k)
        for (int r = 0; r < 24; ++r)
            for (int i = N - 1; i >= k; --i) c[static_cast<std::size_t>(i)] -= c[static_cast<std::size_t>(i - k)];
    std::vector<long long> t(static_cast<std::size_t>(N + 1), 0);
    for (int n = 1; n <= N; ++n) t[static_cast<std::size_t>(n)] = c[static_cast<std::size_t>(n - 1)];
    return t;
}
}  // namespace

TEST_CASE("tau coefficients match the product expansion") {
    DirichletCoeffs d = tau_coefficients(60);
    auto o = tau_oracle(60);
    for (int n = 1; n <= 60; ++n) CHECK(d.tau[static_cast<std::size_t>(n)] == mpz_class(static_cast<long>(o[static_cast<std::size_t>(n)])));
    CHECK(d.tau[2] == -24);
    CHECK(d.tau[11] == 534612);
    // Hecke normalization λ(n) = τ(n)/n^{11/2}
    CHECK(std::abs(d[2] - complex_t(-24 / std::pow(2.0L, 5.5L))) < 1e-18L);
    CHECK_THROWS_AS(d[61], CoeffRangeExceeded);
}

TEST_CASE("property: tau is multiplicative and satisfies the Hecke recursion") {
    DirichletCoeffs d = tau_coefficients(5000);
    CHECK(multiplicativity_failures(d, 200, 5).empty());
    // τ(p²) = τ(p)² − p^{11}
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L, 43L, 47L, 53L, 59L, 61L, 67L}) {
        mpz_class p11;
        mpz_ui_pow_ui(p11.get_mpz_t(), static_cast<unsigned long>(p), 11);
        CHECK(d.tau[static_cast<std::size_t>(p * p)] == d.tau[static_cast<std::size_t>(p)] * d.tau[static_cast<std::size_t>(p)] - p11);
    }
    // Deligne: |λ(p)| ≤ 2
    for (long p : {2L, 3L, 5L, 7L, 4999L}) CHECK(std::abs(d[p]) <= 2);
}

TEST_CASE("coefficient files") {
    {
        std::ofstream f("coeffs_ok.csv");
        f << "n,lambda_re,lambda_im\n1,1,0\n2,-0.5,0\n3,0.25,0.5\n";
    }
    DirichletCoeffs d = read_coefficients("coeffs_ok.csv");
    CHECK(d.N == 3);
    CHECK(d.provenance == "file");
    CHECK(d[3] == complex_t(0.25L, 0.5L));
    {
        std::ofstream f("coeffs_gap.csv");
        f << "n,lambda_re,lambda_im\n1,1,0\n3,0.25,0\n";
    }
    CHECK_THROWS_AS(read_coefficients("coeffs_gap.csv"), ConfigError);
    {
        std::ofstream f("coeffs_hdr.csv");
        f << "n,re,im\n1,1,0\n";
    }
    CHECK_THROWS_AS(read_coefficients("coeffs_hdr.csv"), ConfigError);
    // file input is multiplicative only up to 1e-9 and failures are just reported
    {
        std::ofstream f("coeffs_bad.csv");
        f << "n,lambda_re,lambda_im\n";
        for (int n = 1; n <= 40; ++n) f << n << ',' << (n == 1 ? 1 : 0.5) << ",0\n";
    }
    CHECK_FALSE(multiplicativity_failures(read_coefficients("coeffs_bad.csv"), 20, 1).empty());
    for (const char* p : {"coeffs_ok.csv", "coeffs_gap.csv", "coeffs_hdr.csv", "coeffs_bad.csv"}) std::remove(p);
}

TEST_CASE("LHS of the Voronoi identity") {
    VoronoiContext ctx(make_bump(1, 4));
    VoronoiJob job;
    job.w = make_bump(1, 4);
    // two-term direct sum
    const DirichletCoeffs& co = ctx.coeffs(10);
    const complex_t ref = co[2] / std::sqrt(2.0L) * job.w(2) + co[3] / std::sqrt(3.0L) * job.w(3);
    CHECK(std::abs(lhs_theta(job, ctx) - ref) < 1e-18L);
    // a/c and (a+c)/c
    job.a = 2;
    job.c = 5;
    complex_t v1 = lhs_theta(job, ctx);
    job.a = 7;
    CHECK(std::abs(lhs_theta(job, ctx) - v1) < 1e-18L);
    job.N = 2;
    CHECK_THROWS_AS(lhs_theta(job, ctx), TruncationTooSmall);
    job.N = 0;
    job.a = 5;
    CHECK_THROWS_AS(lhs_theta(job, ctx), ConfigError);
}

TEST_CASE("file coefficients reach only c = 1") {
    VoronoiContext ctx(make_bump(1, 4));
    DirichletCoeffs d = tau_coefficients(50);
    d.tau.clear();
    d.provenance = "file";
    ctx.set_coefficients(d);
    VoronoiJob job;
    job.w = make_bump(1, 4);
    job.a = 1;
    job.c = 5;
    CHECK_THROWS_AS(rhs_theta(job, ctx, 1e-6L), ConfigError);
    CHECK_THROWS_AS(ctx.coeffs(51), CoeffRangeExceeded);
}
