#pragma once

#include "rv/common.hpp"

namespace rv {

// log Γ(z) on some branch; exp(lgamma_c(z)) is Γ(z). Throws PoleError(-1, z) within
// 1e-12 of a non-positive integer.
complex_t lgamma_c(complex_t z);
complex_t gamma_c(complex_t z);

// Γ(a)/Γ(b) without intermediate overflow.
complex_t gamma_ratio(complex_t a, complex_t b);

// Upper incomplete gamma Γ(a, x) for x > 0.
complex_t upper_gamma(complex_t a, real_t x);

// Riemann zeta by Euler–Maclaurin summation; s != 1.
complex_t zeta_em(complex_t s);

// Hardy Z(t) = exp(iθ(t)) ζ(1/2+it), real for real t.
real_t hardy_z(real_t t);

// A zero of hardy_z bracketed by [lo, hi], found by bisection to |hi-lo| < tol.
real_t hardy_z_zero(real_t lo, real_t hi, real_t tol);

}  // namespace rv
