#include "rv/gj_kernels.hpp"

#include <cmath>

#include "rv/quadrature.hpp"
#include "rv/special.hpp"

namespace rv {

namespace {

complex_t cpow(real_t x, complex_t e) { return std::exp(e * std::log(x)); }

const DirichletCoeffs& need(const DirichletCoeffs* c, long n) {
    if (!c) throw ConfigError("kernel coefficients missing");
    if (n > c->N) throw CoeffRangeExceeded("coefficients stop at " + std::to_string(c->N) + ", need " + std::to_string(n));
    return *c;
}

complex_t partial_sum(const DirichletCoeffs* c, long N, complex_t s) {
    if (N < 1) return 0;
    const DirichletCoeffs& co = need(c, N);
    complex_t sum = 0;
    for (long n = 1; n <= N; ++n) sum += co[n] * cpow(static_cast<real_t>(n), -s);
    return sum;
}

complex_t kernel(const DirichletCoeffs* c, complex_t s, KernelVariant v, real_t x) {
    if (x == 0) throw ConfigError("kernels live on nonzero x");
    const real_t X = std::abs(x);
    const long N = static_cast<long>(std::floor(X));
    if (v == KernelVariant::cuspidal) {
        if (N < 1) return 0;
        return cpow(X, s - 0.5L) * partial_sum(c, N, s);
    }
    if (s == complex_t(1)) throw PoleAtOne("Tate kernel at s = 1");
    return cpow(X, s - 1.0L) * partial_sum(c, N, s) - 1.0L / (1.0L - s);
}

std::vector<long> primes_upto(long P) {
    std::vector<char> comp(static_cast<std::size_t>(P + 1), 0);
    std::vector<long> ps;
    for (long i = 2; i <= P; ++i) {
        if (comp[static_cast<std::size_t>(i)]) continue;
        ps.push_back(i);
        for (long j = i * i; j <= P; j += i) comp[static_cast<std::size_t>(j)] = 1;
    }
    return ps;
}

}  // namespace

DirichletCoeffs riemann_coefficients(long N) {
    DirichletCoeffs d;
    d.N = N;
    d.provenance = "riemann";
    d.lambda.assign(static_cast<std::size_t>(N + 1), complex_t(1));
    d.lambda[0] = 0;
    return d;
}

complex_t h_kernel(const KernelSpec& spec, real_t x) { return kernel(spec.a, spec.s, spec.variant, x); }

complex_t k_dual_kernel(const KernelSpec& spec, real_t x) {
    return kernel(spec.a_dual ? spec.a_dual : spec.a, spec.s, spec.variant, x);
}

std::pair<complex_t, complex_t> clozel_tate_kernels(complex_t s, real_t x) {
    if (s == complex_t(1)) throw PoleAtOne("Tate kernel at s = 1");
    if (x == 0) throw ConfigError("kernels live on nonzero x");
    const real_t X = std::abs(x);
    const long N = static_cast<long>(std::floor(X));
    complex_t sum = 0;
    for (long n = 1; n <= N; ++n) sum += cpow(static_cast<real_t>(n), -s);
    complex_t h = cpow(X, s - 1.0L) * sum - 1.0L / (1.0L - s);
    return {h, h};
}

complex_t l_delta_euler(complex_t s, const DirichletCoeffs& tau, long P) {
    if (s.real() <= 1.5L) throw ConfigError("Euler product needs Re s > 3/2");
    if (tau.N < P) throw CoeffRangeExceeded("Euler product needs coefficients to P");
    // log of ∏(1 − λ(p)p^{−s} + p^{−2s})^{−1}, summed small primes last for accuracy
    std::vector<long> ps = primes_upto(P);
    complex_t lg = 0;
    for (auto it = ps.rbegin(); it != ps.rend(); ++it) {
        const real_t p = static_cast<real_t>(*it);
        const complex_t ps_ = cpow(p, -s);
        lg -= std::log(1.0L - tau[*it] * ps_ + ps_ * ps_);
    }
    return std::exp(lg);
}

complex_t l_delta_afe(complex_t s, const DirichletCoeffs& tau) {
    // Λ(w) = (2π)^{−w}Γ(w)Σ τ(n)n^{−w} = Σ τ(n)[(2πn)^{−w}Γ(w,2πn) + (2πn)^{w−12}Γ(12−w,2πn)],
    // w = s + 11/2, and L(s) = Σ τ(n) n^{−w}.
    const complex_t w = s + 5.5L, w2 = 12.0L - w;
    if (tau.tau.empty()) throw ConfigError("AFE needs exact tau values");
    complex_t sum = 0;
    for (long n = 1;; ++n) {
        if (n > tau.N) throw CoeffRangeExceeded("AFE ran out of coefficients");
        const real_t x = kTwoPi * static_cast<real_t>(n);
        const real_t t = static_cast<real_t>(tau.tau[static_cast<std::size_t>(n)].get_d());
        complex_t term = t * (cpow(x, -w) * upper_gamma(w, x) + cpow(x, -w2) * upper_gamma(w2, x));
        sum += term;
        if (n > 3 && std::abs(term) < 1e-22L * std::abs(sum)) break;
    }
    return sum * std::exp(w * std::log(kTwoPi) - lgamma_c(w));
}

SplitZetaReport split_zeta_identity(const TestFunction& phi, VoronoiContext& ctx, complex_t s, real_t tol,
                                    long euler_P) {
    if (ctx.weight() != 12) throw ConfigError("split zeta identity is wired for Delta (weight 12)");
    SplitZetaReport r;
    r.s = s;
    // the dual side needs F(φ) = w̃ of the same φ the context was built for
    const TestFunction& w = ctx.test_function();
    if (phi.terms.size() != w.terms.size() || phi.abs_min() != w.abs_min() || phi.abs_max() != w.abs_max())
        throw ConfigError("phi differs from the context's test function");

    r.z_inf = signed_mellin(phi, 0, s - 0.5L, tol * 1e-3L);
    if (s.real() > 1.5L) {
        const DirichletCoeffs& co = ctx.coeffs(euler_P);
        r.l_value = l_delta_euler(s, co, euler_P);
        r.l_source = "euler";
    } else {
        r.l_value = l_delta_afe(s, ctx.coeffs(64));
        r.l_source = "afe";
    }
    r.reference = r.z_inf * r.l_value;
    const real_t target = tol * std::max(std::abs(r.reference), 1e-30L);

    // I₁: compact support; H is a step function times |x|^{s−1/2}
    for (const auto& t : phi.terms) {
        const long lo = std::max(1L, static_cast<long>(std::floor(t.a)));
        complex_t S = partial_sum(&ctx.coeffs(lo), lo - 1, s);
        for (long n = lo; static_cast<real_t>(n) < t.b; ++n) {
            S += ctx.coeffs(n)[n] * cpow(static_cast<real_t>(n), -s);
            const real_t u0 = std::max<real_t>(static_cast<real_t>(n), t.a);
            const real_t u1 = std::min<real_t>(static_cast<real_t>(n + 1), t.b);
            if (u1 <= u0) continue;
            auto f = [&](real_t u) -> complex_t { return bump_profile(t.a, t.b, u) * cpow(u, s - 1.5L); };
            auto pr = adaptive_gl<complex_t>(f, u0, u1, target * 1e-3L, 20);
            r.i1 += t.coef * S * pr.value;
            r.quad_error += std::abs(t.coef * S) * pr.err;
        }
    }

    // I₂ = ∫_{|x|≥1} (w̃(x) + w̃(−x)) |x|^{1/2−s} S*(⌊|x|⌋) d×x, S*(N) = Σ_{n≤N} λ(n) n^{s−1}
    const real_t ymin = w.abs_min(), ymax = w.abs_max();
    complex_t Sd = 0;
    real_t amp = 0;
    auto integrand = [&](real_t u) -> complex_t {
        real_t e = 0;
        auto [wp, wm] = ctx.dual_pair(u, &e);
        complex_t v = (wp + wm) * Sd * cpow(u, -0.5L - s);
        amp = std::max(amp, std::abs(v));
        return v;
    };
    for (long n = 1;; ++n) {
        if (n > 100000) throw TailNotConverged("I2 sweep did not converge");
        Sd += ctx.coeffs(n)[n] * cpow(static_cast<real_t>(n), s - 1.0L);
        amp = 0;
        real_t u = static_cast<real_t>(n);
        const real_t end = u + 1;
        while (u < end) {
            const real_t rate = kTwoPi * std::sqrt(ymax / u) + std::abs(s.imag()) / u + 1;
            const real_t v = std::min(end, u + kPi / rate);
            auto pr = adaptive_gl<complex_t>(integrand, u, v, target * 1e-3L, 3);
            r.i2 += pr.value;
            r.quad_error += pr.err;
            u = v;
        }
        r.x_max = end;
        // past the transition the tail is at most a few amplitudes per unit of phase
        const real_t slow = kTwoPi * std::sqrt(ymin / end);
        if (end > 4 / ymin && 4 * amp * std::max<real_t>(1, 1 / slow) < target / 10) break;
    }
    r.defect = std::abs(r.i1 + r.i2 - r.reference);
    return r;
}

real_t GaussianPhi::operator()(real_t x) const { return std::exp(-kPi * a * x * x); }
real_t GaussianPhi::hat(real_t x) const { return std::exp(-kPi * x * x / a) / std::sqrt(a); }

PairingResult tate_pairing(complex_t s, const GaussianPhi& phi) {
    if (phi.a <= 0) throw ConfigError("Gaussian width must be positive");
    PairingResult r;
    r.s = s;
    // ∫_ℝ H_σ g dx = 2[Σ_k (Σ_{n≤k} n^{−σ}) ∫_k^{k+1} x^{σ−1} g dx − (1/(1−σ))∫_0^∞ g]
    auto half_line = [&](complex_t sig, auto g, real_t g_half_mass) {
        if (sig == complex_t(1)) throw PoleAtOne("Tate kernel at s = 1");
        complex_t total = 0, S = 0;
        const real_t cutoff = std::sqrt(50.0L * std::max<real_t>(phi.a, 1 / phi.a));
        for (long k = 1; static_cast<real_t>(k) < cutoff; ++k) {
            S += cpow(static_cast<real_t>(k), -sig);
            auto f = [&](real_t x) -> complex_t { return cpow(x, sig - 1.0L) * g(x); };
            total += S * adaptive_gl<complex_t>(f, static_cast<real_t>(k), static_cast<real_t>(k + 1), 1e-17L, 30).value;
        }
        return 2.0L * (total - g_half_mass / (1.0L - sig));
    };
    auto g_hat = [&](real_t x) { return phi.hat(x); };
    auto g = [&](real_t x) { return phi(x); };
    r.value = half_line(s, g_hat, 0.5L) + half_line(1.0L - s, g, 0.5L / std::sqrt(phi.a));
    if (phi.a == 1) r.reference = std::exp(-s / 2.0L * std::log(kPi) + lgamma_c(s / 2.0L)) * zeta_em(s);
    r.defect = std::abs(r.value);
    return r;
}

PairingResult cuspidal_pairing(complex_t s, const TestFunction& phi, VoronoiContext& ctx, real_t tol) {
    SplitZetaReport rep = split_zeta_identity(phi, ctx, s, tol);
    PairingResult r;
    r.s = s;
    r.value = (rep.i1 + rep.i2) / rep.z_inf;
    r.reference = rep.l_value;
    r.defect = std::abs(r.value - r.reference);
    return r;
}

std::vector<PairingResult> zero_criterion_pairing(KernelVariant variant, const std::vector<complex_t>& s_list,
                                                  const TestFunction& bump_phi, const GaussianPhi& gauss_phi,
                                                  VoronoiContext* ctx, real_t tol) {
    std::vector<PairingResult> out;
    for (complex_t s : s_list) {
        if (variant == KernelVariant::tate) {
            out.push_back(tate_pairing(s, gauss_phi));
        } else {
            if (!ctx) throw ConfigError("cuspidal pairing needs a dual-function context");
            out.push_back(cuspidal_pairing(s, bump_phi, *ctx, tol));
        }
    }
    return out;
}

}  // namespace rv
