#pragma once

#include <utility>
#include <vector>

#include "rv/exact.hpp"

namespace rv {

// Unramified local data. The Satake parameters are α_i = alpha[i]·q^{−scale/2}; the
// scale lets Δ's parameters (roots of X² − τ(p)X + p^{11}, scale 11) stay in Q(√D).
struct SatakeParams {
    long q = 2;
    std::vector<QF> alpha;
    long scale = 0;
    int rank() const { return static_cast<int>(alpha.size()); }
};

void validate(const SatakeParams& sp);

// Δ at the prime p, given τ(p).
SatakeParams delta_satake(long p, const mpz_class& tau_p);

// h_m by enumeration of monomials.
QF complete_homogeneous(long m, const std::vector<QF>& alpha);
complex_t complete_homogeneous(long m, const std::vector<complex_t>& alpha);

// °W(diag(ϖ^m, 1, …, 1)) = q^{−m(n−1)/2} h_m(α), 0 for m < 0.
Alg whittaker_diag(const SatakeParams& sp, long m);
complex_t whittaker_diag(long q, const std::vector<complex_t>& alpha, long m);

// 𝕃(ϖ^m) = h_m(α) q^{−m/2}, 0 for m < 0.
Alg basic_function_value(const SatakeParams& sp, long m);
complex_t basic_function_value(long q, const std::vector<complex_t>& alpha, long m);

// Series Σ_{m≤M} h_m X^m in the variable Y = q^{−scale/2}X (so its coefficients are
// h_m(alpha) and stay in Q(√d)), and whether it times ∏(1 − alpha_i Y) is 1 mod Y^{M+1}.
struct FormalSeries {
    std::vector<QF> coeffs;
    long scale = 0;
};
struct LSeriesCheck {
    FormalSeries series;
    bool ok = false;
};
LSeriesCheck local_l_series_check(const SatakeParams& sp, long M);
bool l_series_identity(const std::vector<QF>& coeffs, const std::vector<QF>& alpha);

// n×n matrix over ℚ viewed inside GL_n(ℚ_p).
struct PAdicMat {
    long p = 2;
    int n = 2;
    std::vector<mpq_class> e;

    PAdicMat() = default;
    PAdicMat(long p_, int n_);
    PAdicMat(long p_, int n_, std::initializer_list<mpq_class> v);
    static PAdicMat identity(long p, int n);
    static PAdicMat diag(long p, const std::vector<mpq_class>& d);

    mpq_class& operator()(int i, int j) { return e[static_cast<std::size_t>(i * n + j)]; }
    const mpq_class& operator()(int i, int j) const { return e[static_cast<std::size_t>(i * n + j)]; }
    mpq_class det() const;
    PAdicMat inverse() const;  // Singular if det = 0
    PAdicMat transpose() const;
    bool integral() const;  // entries in ℤ_(p)
    bool in_K() const;      // integral with unit determinant
    friend PAdicMat operator*(const PAdicMat& a, const PAdicMat& b);
    friend bool operator==(const PAdicMat& a, const PAdicMat& b) { return a.p == b.p && a.n == b.n && a.e == b.e; }
};

// g = u·t·k, u upper unipotent, t = diag(p^{v_i}), k ∈ GL_n(ℤ_p).
struct Iwasawa {
    PAdicMat u, t, k;
};
Iwasawa iwasawa(const PAdicMat& g);
// As iwasawa, with u₁₂ reduced to its canonical representative mod p^{v₁−v₂}ℤ_p.
Iwasawa iwasawa_gl2(const PAdicMat& g);
Iwasawa iwasawa_gl3(const PAdicMat& g);

// Unramified Whittaker value on the torus diag(p^{λ_1}, …, p^{λ_n}): δ^{1/2}·s_λ(α) for
// dominant λ, else 0.
Alg whittaker_torus(const SatakeParams& sp, const std::vector<long>& lambda);
// °W(g) = ψ_p(u₁₂ + u₂₃ + …)·°W(t) through the Iwasawa decomposition.
ExactValue whittaker_general(const SatakeParams& sp, const PAdicMat& g);
ExactValue whittaker_gl2_general(const SatakeParams& sp, const PAdicMat& g);
ExactValue whittaker_gl3(const SatakeParams& sp, const PAdicMat& g);

// Which 2×2 Weyl representative acts on the Kirillov model. swap: [[0,1],[1,0]];
// det_one: [[0,1],[−1,0]], which amounts to ζ ↦ −ζ. Only det_one reproduces the global
// identity numerically; the other is kept so the discrepancy stays visible.
enum class WeylConvention { det_one, swap };

// Local π_p-Fourier transform of x ↦ ψ_p(xζ)°W(diag(x,1)), evaluated as
// °W(diag(x,1)·w₂·n(ζ)) (the Weyl action on the Kirillov model, trivial central character).
ExactValue ramified_transform_gl2(const SatakeParams& sp, const mpq_class& zeta, const mpq_class& x,
                                  WeylConvention wc = WeylConvention::det_one);

// Values of the transform on the shell v_p(x) = m, one per unit class u mod p^k.
struct ShellClass {
    mpz_class u;
    ExactValue value;
};
struct ShellValues {
    long m = 0;
    long modulus_exp = 0;  // k
    std::vector<ShellClass> classes;
    bool vanishes() const;
};
ShellValues ramified_shell_gl2(const SatakeParams& sp, const mpq_class& zeta, long m,
                               WeylConvention wc = WeylConvention::det_one);

// Literal n = 2 reading of the Kloosterman integral: °W̃(τ) with τ = diag(−α/ζ, −ζ).
ExactValue kloosterman_gl2_literal(const SatakeParams& sp, const mpq_class& alpha,
                                   const mpq_class& zeta);

struct KloostermanResult {
    ExactValue value;
    std::vector<ExactValue> shells;  // shell j: u ∈ p^{−j}ℤ_p^× (j = 0: u ∈ ℤ_p)
    long vanishing_shell = -1;       // first of two consecutive zero shells
};
// |ζ|·∫ ψ̄(u) °W̃(τ u(u)) du over ℚ_p, u(u) = I + u·E₁₂, shell by shell.
KloostermanResult kloosterman_gl3(const mpq_class& alpha, const mpq_class& zeta,
                                  const SatakeParams& sp, long shell_depth = -1);

}  // namespace rv
