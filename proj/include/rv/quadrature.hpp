#pragma once

#include <cmath>
#include <vector>

#include "rv/common.hpp"

namespace rv {

struct GLRule {
    std::vector<real_t> x;  // nodes on [-1, 1]
    std::vector<real_t> w;
};

// Gauss–Legendre rule with n nodes, computed once per n.
const GLRule& gl_rule(int n);

// The pair of rules used everywhere: the 16-point value is kept, the 12-point value
// only feeds the error estimate.
inline constexpr int kGLHi = 16;
inline constexpr int kGLLo = 12;

template <class T>
struct PanelResult {
    T value{};
    real_t err = 0;
    real_t abs = 0;  // ∫|f|, estimated from the high rule
};

template <class T, class F>
PanelResult<T> gl_pair(F&& f, real_t a, real_t b) {
    static const GLRule& hi = gl_rule(kGLHi);
    static const GLRule& lo = gl_rule(kGLLo);
    real_t c = (a + b) / 2, h = (b - a) / 2;
    PanelResult<T> r;
    T vlo{};
    for (std::size_t i = 0; i < hi.x.size(); ++i) {
        T v = f(c + h * hi.x[i]);
        r.value += hi.w[i] * v;
        r.abs += hi.w[i] * std::abs(v);
    }
    for (std::size_t i = 0; i < lo.x.size(); ++i) vlo += lo.w[i] * f(c + h * lo.x[i]);
    r.value *= h;
    r.abs *= std::abs(h);
    vlo *= h;
    r.err = std::abs(r.value - vlo);
    return r;
}

// Recursive bisection of gl_pair until the local error is below tol.
template <class T, class F>
PanelResult<T> adaptive_gl(F&& f, real_t a, real_t b, real_t tol, int depth = 40) {
    PanelResult<T> r = gl_pair<T>(f, a, b);
    if (r.err <= tol || depth == 0 || !(r.err == r.err)) return r;
    real_t m = (a + b) / 2;
    PanelResult<T> l = adaptive_gl<T>(f, a, m, tol / 2, depth - 1);
    PanelResult<T> rr = adaptive_gl<T>(f, m, b, tol / 2, depth - 1);
    return {l.value + rr.value, l.err + rr.err, l.abs + rr.abs};
}

// Tanh–sinh rule on [a, b]; tolerates integrable endpoint singularities. Levels are
// refined until two successive estimates agree to tol.
template <class T, class F>
PanelResult<T> tanh_sinh(F&& f, real_t a, real_t b, real_t tol, int max_level = 10) {
    const real_t c = (a + b) / 2, h0 = (b - a) / 2;
    const real_t tmax = 3.2L;
    auto point = [&](real_t t, T& acc, real_t& accabs) {
        real_t u = (kPi / 2) * std::sinh(t);
        real_t ch = std::cosh(u);
        real_t wgt = (kPi / 2) * std::cosh(t) / (ch * ch);
        real_t comp = 1 / (std::exp(2 * u) + 1);  // (1 - x)/2 computed without cancellation
        real_t xr = b - (b - a) * comp;            // c + h0 x near b
        real_t xl = a + (b - a) * comp;            // c - h0 x near a
        if (t == 0) {
            T v = f(c);
            acc += wgt * v;
            accabs += wgt * std::abs(v);
            return;
        }
        if (xr < b && xr > c) {
            T v = f(xr);
            acc += wgt * v;
            accabs += wgt * std::abs(v);
        }
        if (xl > a && xl < c) {
            T v = f(xl);
            acc += wgt * v;
            accabs += wgt * std::abs(v);
        }
    };
    real_t step = 0.5L;
    T sum{};
    real_t sabs = 0;
    for (real_t t = 0; t <= tmax; t += step) point(t, sum, sabs);
    T est = sum * step * h0;
    PanelResult<T> r{est, std::abs(est) + 1, sabs * step * std::abs(h0)};
    for (int level = 1; level <= max_level; ++level) {
        step /= 2;
        for (real_t t = step; t <= tmax; t += 2 * step) point(t, sum, sabs);
        T next = sum * step * h0;
        r.err = std::abs(next - r.value);
        r.value = next;
        r.abs = sabs * step * std::abs(h0);
        if (level >= 3 && r.err <= tol) break;
    }
    return r;
}

}  // namespace rv
