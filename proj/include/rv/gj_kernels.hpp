#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rv/hankel.hpp"
#include "rv/voronoi_global.hpp"

namespace rv {

enum class KernelVariant { cuspidal, tate };

// a_n and dual a_n*; pointers are borrowed.
struct KernelSpec {
    const DirichletCoeffs* a = nullptr;
    const DirichletCoeffs* a_dual = nullptr;
    complex_t s;
    KernelVariant variant = KernelVariant::cuspidal;
};

// a_n = 1 for n ≤ N (ζ over ℚ)
DirichletCoeffs riemann_coefficients(long N);

// cuspidal: |x|^{s−1/2} Σ_{n≤|x|} a_n n^{−s}
// tate:     |x|^{s−1} Σ_{n≤|x|} a_n n^{−s} − 1/(1−s)
complex_t h_kernel(const KernelSpec& spec, real_t x);
complex_t k_dual_kernel(const KernelSpec& spec, real_t x);

// Clozel's kernels over ℚ: H_s(x) = X^{s−1}Σ_{n≤X} n^{−s} − 1/(1−s), X = |x|, K_s = H_s.
std::pair<complex_t, complex_t> clozel_tate_kernels(complex_t s, real_t x);

// L(s, Δ) = Σ λ(n) n^{−s} through the Euler product over p ≤ P (Re s > 3/2).
complex_t l_delta_euler(complex_t s, const DirichletCoeffs& tau, long P);
// The same through the smoothed sums of the functional equation (any s).
complex_t l_delta_afe(complex_t s, const DirichletCoeffs& tau);

struct SplitZetaReport {
    complex_t s;
    complex_t i1, i2;
    complex_t reference;
    complex_t z_inf;         // Z_∞(s, φ) = ∫ φ(x)|x|^{s−1/2} d×x
    complex_t l_value;
    std::string l_source;    // "euler" or "afe"
    real_t defect = 0;       // |i1 + i2 − reference|
    real_t quad_error = 0;
    real_t x_max = 0;        // where the I₂ sweep stopped
};

// I₁ = ∫ φ H_{π,s} d×x and I₂ = ∫ F(φ) K_{π,1−s} d×x for π = Δ (F(φ) = w̃ from dual),
// against Z_∞(s,φ)·L_f(s).
SplitZetaReport split_zeta_identity(const TestFunction& phi, VoronoiContext& ctx, complex_t s,
                                    real_t tol, long euler_P = 200000);

struct PairingResult {
    complex_t s;
    complex_t value;
    complex_t reference;
    real_t defect = 0;
};

// Gaussian e^{−π a x²} with additive Fourier transform a^{−1/2} e^{−π x²/a}.
struct GaussianPhi {
    real_t a = 1;
    real_t operator()(real_t x) const;
    real_t hat(real_t x) const;
};

// tate: ⟨H_s, φ̂⟩ + ⟨K_{1−s}, φ⟩ with ⟨f, g⟩ = ∫_ℝ f g dx; reference π^{−s/2}Γ(s/2)ζ(s)
// for a = 1 (zero of the pairing ⟺ zero of ζ in the strip).
PairingResult tate_pairing(complex_t s, const GaussianPhi& phi);
// cuspidal: (I₁ + I₂)/Z_∞ as a proxy for L_f(s), reference from l_delta_euler / afe.
PairingResult cuspidal_pairing(complex_t s, const TestFunction& phi, VoronoiContext& ctx, real_t tol);

std::vector<PairingResult> zero_criterion_pairing(KernelVariant variant, const std::vector<complex_t>& s_list,
                                                  const TestFunction& bump_phi, const GaussianPhi& gauss_phi,
                                                  VoronoiContext* ctx, real_t tol);

}  // namespace rv
