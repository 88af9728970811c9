#include "rv/special.hpp"

#include <array>
#include <cmath>

namespace rv {

namespace {

// B_{2k} / (2k (2k-1)), k = 1..12
constexpr std::array<long double, 12> kStirling = {
    1.0L / 12,          -1.0L / 360,         1.0L / 1260,         -1.0L / 1680,
    1.0L / 1188,        -691.0L / 360360,    1.0L / 156,          -3617.0L / 122400,
    43867.0L / 244188,  -174611.0L / 125400, 77683.0L / 5796,     -236364091.0L / 1506960};

constexpr real_t kLogSqrt2Pi = 0.918938533204672741780329736405617639861L;
constexpr real_t kStirlingRadius = 18;

complex_t stirling(complex_t z) {
    complex_t w = 1.0L / z;
    complex_t w2 = w * w;
    complex_t sum = 0;
    complex_t p = w;
    for (long double c : kStirling) {
        sum += c * p;
        p *= w2;
    }
    return (z - 0.5L) * std::log(z) - z + kLogSqrt2Pi + sum;
}

}  // namespace

complex_t lgamma_c(complex_t z) {
    real_t x = z.real();
    real_t y = z.imag();
    if (x <= 0.5L && std::abs(y) < 1e-12L) {
        real_t n = std::round(x);
        if (n <= 0 && std::abs(x - n) < 1e-12L) throw PoleError(-1, z);
    }
    // Shift right until Stirling is accurate, accumulating the product in chunks.
    complex_t logprod = 0;
    complex_t prod = 1;
    auto need_shift = [&](complex_t w) {
        return std::abs(w.imag()) < kStirlingRadius ? w.real() < kStirlingRadius : w.real() < 0;
    };
    while (need_shift(z)) {
        prod *= z;
        z += 1.0L;
        if (std::abs(prod) > 1e300L) {
            logprod += std::log(prod);
            prod = 1;
        }
    }
    logprod += std::log(prod);
    return stirling(z) - logprod;
}

complex_t gamma_c(complex_t z) { return std::exp(lgamma_c(z)); }

complex_t gamma_ratio(complex_t a, complex_t b) { return std::exp(lgamma_c(a) - lgamma_c(b)); }

complex_t upper_gamma(complex_t a, real_t x) {
    if (x <= 0) throw Error("upper_gamma: x must be positive");
    const real_t eps = 1e-19L;
    if (x < std::abs(a) + 1) {
        // Γ(a) - γ(a,x), series γ(a,x) = x^a e^{-x} Σ x^k / (a)_{k+1}
        complex_t term = 1.0L / a;
        complex_t sum = term;
        for (int k = 1; k < 5000; ++k) {
            term *= x / (a + static_cast<real_t>(k));
            sum += term;
            if (std::abs(term) < eps * std::abs(sum)) break;
        }
        complex_t lower = std::exp(a * std::log(x) - x) * sum;
        return gamma_c(a) - lower;
    }
    // Legendre continued fraction, modified Lentz.
    const real_t tiny = 1e-300L;
    complex_t b = x + 1.0L - a;
    complex_t c = 1.0L / tiny;
    complex_t d = 1.0L / b;
    complex_t h = d;
    for (int i = 1; i < 5000; ++i) {
        complex_t an = -static_cast<real_t>(i) * (static_cast<real_t>(i) - a);
        b += 2.0L;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0L / d;
        complex_t del = d * c;
        h *= del;
        if (std::abs(del - 1.0L) < eps) break;
    }
    return std::exp(a * std::log(x) - x) * h;
}

complex_t zeta_em(complex_t s) {
    if (std::abs(s - 1.0L) < 1e-15L) throw PoleAtOne("zeta pole at s=1");
    if (s.real() < 0.5L) {
        // ζ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s)
        return std::pow(complex_t(2), s) * std::pow(complex_t(kPi), s - 1.0L) *
               std::sin(kPi * s / 2.0L) * gamma_c(1.0L - s) * zeta_em(1.0L - s);
    }
    const int N = 20 + static_cast<int>(std::abs(s.imag()));
    complex_t sum = 0;
    for (int n = 1; n < N; ++n) sum += std::exp(-s * std::log(static_cast<real_t>(n)));
    const real_t logN = std::log(static_cast<real_t>(N));
    complex_t Ns = std::exp(-s * logN);
    sum += Ns * static_cast<real_t>(N) / (s - 1.0L) + Ns / 2.0L;
    // B_{2k}/(2k)!
    constexpr std::array<long double, 10> b2k = {
        1.0L / 12,  -1.0L / 720,  1.0L / 30240,  -1.0L / 1209600,  1.0L / 47900160,
        -691.0L / 1307674368000.0L,  1.0L / 74724249600.0L,  -3617.0L / 10670622842880000.0L,
        43867.0L / 5109094217170944000.0L, -174611.0L / 802857662698291200000.0L};
    complex_t poch = s;        // s(s+1)...(s+2k-2)
    complex_t npow = Ns / static_cast<real_t>(N);  // N^{-s-2k+1}
    for (int k = 0; k < 10; ++k) {
        complex_t term = b2k[k] * poch * npow;
        sum += term;
        poch *= (s + static_cast<real_t>(2 * k + 1)) * (s + static_cast<real_t>(2 * k + 2));
        npow /= static_cast<real_t>(N) * static_cast<real_t>(N);
    }
    return sum;
}

real_t hardy_z(real_t t) {
    // θ(t) = arg Γ(1/4 + it/2) - (t/2) log π
    complex_t lg = lgamma_c(complex_t(0.25L, t / 2));
    real_t theta = lg.imag() - t / 2 * std::log(kPi);
    complex_t z = std::exp(complex_t(0, theta)) * zeta_em(complex_t(0.5L, t));
    return z.real();
}

real_t hardy_z_zero(real_t lo, real_t hi, real_t tol) {
    real_t flo = hardy_z(lo);
    real_t fhi = hardy_z(hi);
    if (flo * fhi > 0) throw Error("hardy_z_zero: no sign change in bracket");
    while (hi - lo > tol) {
        real_t mid = (lo + hi) / 2;
        real_t fm = hardy_z(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / 2;
}

}  // namespace rv
