#pragma once

#include <map>
#include <utility>
#include <vector>

#include "rv/arch_local.hpp"
#include "rv/bessel_kernel.hpp"

namespace rv {

// One bump exp(−1/(1−u²)), u = (2|x|−a−b)/(b−a), living on sign·[a, b].
struct BumpTerm {
    real_t a = 1, b = 2;
    real_t coef = 1;
    int sign = 1;
};

// Finite sum of bumps on ℝ^×.
struct TestFunction {
    std::vector<BumpTerm> terms;

    real_t operator()(real_t x) const;
    real_t abs_min() const;
    real_t abs_max() const;
};

real_t bump_profile(real_t a, real_t b, real_t y);
TestFunction make_bump(real_t a, real_t b, int sign = 1);
TestFunction operator+(TestFunction f, const TestFunction& g);
TestFunction operator*(real_t c, TestFunction f);

// ∫ f(y) sgn(y)^δ |y|^z d×y.
complex_t signed_mellin(const TestFunction& f, int delta, complex_t z, real_t tol);

enum class Route { mellin, convolution };

struct DualFunctionResult {
    real_t x = 0;
    complex_t value;
    Route route = Route::mellin;
    real_t achieved_tol = 0;
};

// w̃ by inverse Mellin transform of γ(1−s, π×sgn^δ)·M_δ[w](1−s−(n−1)/2) along
// Re s = sigma (right of every pole, bent tails as in bessel_kernel). The path nodes
// and the products γ·M are computed once per octave [2^k, 2^{k+1}) of |x| and reused.
class MellinDual {
public:
    MellinDual(const RealPlaceParams& p, const TestFunction& w, real_t tol);

    DualFunctionResult operator()(real_t x);
    // (I_0, I_1) with I_δ = (1/2πi)∫ γ·M_δ |x|^{−s+(n−1)/2} ds, so w̃(±|x|) = (I_0 ± I_1)/2.
    std::pair<complex_t, complex_t> parity_parts(real_t absx, real_t* achieved = nullptr);
    // γ(1−s, π×sgn^δ)·M_δ[w](1−s−(n−1)/2)
    complex_t gamma_mellin(int delta, complex_t s);
    void gamma_mellin_both(complex_t s, complex_t& v0, complex_t& v1);

    real_t sigma() const { return sigma_; }
    int rank() const { return n_; }
    long node_count() const;

private:
    struct Band {
        std::vector<complex_t> s;
        std::vector<complex_t> A[2];
        // double copies for the evaluation loop
        std::vector<double> sr, si, a0r, a0i, a1r, a1i, amag;
        real_t err = 0, tail = 0;
        real_t lref = 0;
    };
    const Band& band(int k);
    Band build_band(int k);
    real_t band_sigma(real_t x0, real_t x1, real_t bend);
    void mellin_w(complex_t z, complex_t& m0, complex_t& m1);

    RealPlaceParams p_;
    TestFunction w_;
    real_t tol_;
    int n_;
    real_t sigma_;
    real_t max_t_ = 0;
    DualGammaLog g0_, g1_;
    std::map<int, Band> bands_;
    std::vector<std::map<long, std::vector<real_t>>> term_cache_;
    std::vector<long> hint_;
};

DualFunctionResult hankel_mellin_route(const RealPlaceParams& p, int n, const TestFunction& w,
                                       real_t x, real_t tol);

// w̃(x) = |x|^{(n−1)/2} ∫ 𝔟(xt) w(t) |t|^{e} d×t with e = (3−n)/2. The exponent is a
// parameter only so the calibration test can show the other reading fails.
DualFunctionResult hankel_convolution_route(const RealPlaceParams& p, int n, const TestFunction& w,
                                            real_t x, real_t tol);
DualFunctionResult hankel_convolution_route_exp(const RealPlaceParams& p, int n,
                                                const TestFunction& w, real_t x, real_t tol,
                                                real_t t_exponent);

struct FEResidualRow {
    complex_t s;
    int delta = 0;
    complex_t lhs, rhs;
    real_t residual = 0;  // |lhs − rhs| / |rhs|
};

// Both sides of the local functional equation for each s and parity. The left side
// integrates sampled w̃; where the integral diverges at 0 it is continued analytically
// by subtracting the small-|y| expansion of w̃, whose exponents come from the pole set
// of γ(1−s) and whose coefficients are fitted to samples of w̃.
std::vector<FEResidualRow> local_fe_residual(const RealPlaceParams& p, int n,
                                             const TestFunction& w,
                                             const std::vector<complex_t>& s_samples, real_t tol);

}  // namespace rv
