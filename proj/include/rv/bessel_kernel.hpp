#pragma once

#include <functional>
#include <map>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rv/arch_local.hpp"
#include "rv/quadrature.hpp"

namespace rv {

// Mellin–Barnes path: the vertical line Re s = sigma, except for the polygonal detour
// through `nodes` (ordered bottom to top). Direction is upward.
struct Contour {
    real_t sigma = 0;
    std::vector<complex_t> nodes;
    real_t clearance = 0;  // distance from the path to the nearest pole
    real_t bound = 0;      // the convergence bound sigma must stay below
};

// Contour for s ↦ γ(1−s, π×χ)|x|^{−s} (real) or γ(1−s, π×[·]^m) x^{−2s} (complex).
Contour build_contour(const RealPlaceParams& p, CharTwist tw);
Contour build_contour(const ComplexPlaceParams& p, CharTwist tw);
// One contour serving both parities at a real place (union of the pole sets).
Contour build_contour_both_parities(const RealPlaceParams& p);
// Same asymptote rule with an explicit sigma (must respect bound and clearance).
Contour build_contour_at(const std::vector<PoleSeries>& poles, real_t sigma, real_t bound);

// Distance from the contour polygon (with its vertical continuation) to the nearest pole.
real_t contour_clearance(const Contour& c, const std::vector<PoleSeries>& poles);

// s ↦ log γ(1−s, π×χ), block data precomputed for speed.
class DualGammaLog {
public:
    DualGammaLog(const RealPlaceParams& p, CharTwist tw);
    DualGammaLog(const ComplexPlaceParams& p, CharTwist tw);
    complex_t operator()(complex_t s) const;
    int rank() const { return rank_; }
    bool complex_place() const { return complex_; }

private:
    struct Block {
        int kind;  // 0: real GL1, 1: real DS2 or complex
        complex_t t;
        real_t a;
    };
    std::vector<Block> blocks_;
    complex_t log_eps_;
    int rank_ = 0;
    bool complex_ = false;
};

// How the tails are treated beyond the detour. The vertical piece runs to bend_height,
// after which the path turns left along s = s_b + (−slope ± i)τ. This is a Cauchy
// deformation of the vertical line: γ(1−s) decays super-exponentially on the turned
// rays once |s| exceeds 2π|x|^{1/n}.
struct TailSpec {
    real_t bend_height = std::numeric_limits<real_t>::infinity();
    real_t slope = 1;
    // Phase-rate model: ω(|s|) = rate_n·(|log((|s|+3)/2π)| + 1) + rate_const.
    real_t rate_n = 1;
    real_t rate_const = 0;
    real_t max_length = 1;  // cap on a single panel
    real_t panel_phase = kPi;  // phase budget of one 16-point panel
    long max_panels = 4000000;
};

struct MBResult {
    complex_t value;
    real_t err = 0;         // quadrature error estimate
    real_t tail = 0;        // truncation estimate
    real_t achieved = 0;    // err + tail
    long evaluations = 0;
    real_t top = 0;         // furthest |Im s| reached
};

// (1/2πi)∫_C f(s) ds along the contour with the given tail treatment.
MBResult integrate_contour(const Contour& c, const std::function<complex_t(complex_t)>& f,
                           const TailSpec& tail, real_t tol);

// Straight panel enumeration used by the Mellin route to precompute nodes.
struct PathPanel {
    complex_t a, b;
    bool tail = false;
    bool upper = false;
    real_t tau = 0;  // arc length along the tail at the panel start
};
class ContourWalker {
public:
    ContourWalker(const Contour& c, const TailSpec& t);
    std::vector<PathPanel> finite_panels() const;
    PathPanel next(bool upper);

private:
    Contour c_;
    TailSpec t_;
    complex_t pos_[2];
    real_t tau_[2] = {0, 0};
    real_t rate(complex_t s) const;
};

TailSpec bessel_tail(const DualGammaLog& g, real_t absx, real_t max_abs_t);

// 𝔟_{π,ψ}(x) over ℝ^×.
MBResult bessel_real_mb(const RealPlaceParams& p, real_t x, real_t tol,
                        std::optional<Contour> contour = std::nullopt,
                        std::optional<TailSpec> tail = std::nullopt);
complex_t bessel_real(const RealPlaceParams& p, real_t x, real_t tol);

// 𝔟 at many arguments. The γ values on the contour do not depend on x, so they are
// computed once per octave of |x| and each evaluation is a node sum.
class BesselSampler {
public:
    BesselSampler(const RealPlaceParams& p, real_t tol);
    MBResult operator()(real_t x);
    long node_count() const;

private:
    struct Band {
        std::vector<complex_t> s, A0, A1;  // nodes and weighted γ for both parities
        real_t err = 0, tail = 0;
    };
    Band build(int k);

    RealPlaceParams p_;
    real_t tol_;
    DualGammaLog g0_, g1_;
    Contour contour_;
    real_t max_t_ = 0;
    bool parity_free_ = true;
    std::map<int, Band> bands_;
};

struct ComplexBesselResult {
    complex_t value;
    real_t achieved = 0;
    real_t tail_estimate = 0;  // series tail estimate
    long terms = 0;
    long m_used = 0;
};
// j_{(t,l)}(x) = (1/2πi)∫ γ(1−s, π×[·]^m) x^{−2s} ds for x > 0.
MBResult bessel_j_complex(const ComplexPlaceParams& p, long m, real_t x, real_t tol);
ComplexBesselResult bessel_complex_series(const ComplexPlaceParams& p, complex_t z, real_t tol,
                                          long m_max);
complex_t bessel_complex(const ComplexPlaceParams& p, complex_t z, real_t tol, long m_max);

// k = 𝔟·|x|^{1/2} with the normalized absolute value (|z|_ℂ = z z̄).
complex_t kernel_eval(const RealPlaceParams& p, real_t x, real_t tol);
complex_t kernel_eval(const ComplexPlaceParams& p, complex_t z, real_t tol, long m_max = 64);

struct KernelTable {
    std::string params_json;
    std::vector<real_t> grid;       // |x|, strictly increasing within each sign
    std::vector<int> sign;          // +1 or -1
    std::vector<complex_t> values;
    std::vector<bool> ok;           // false where evaluation failed
    bool partial = false;
    real_t requested_tol = 0;
    real_t achieved_tol = 0;
    Contour contour;
};

KernelTable kernel_table(const RealPlaceParams& p, const std::vector<real_t>& xs, real_t tol);
void save_kernel_table(const KernelTable& t, const std::string& csv_path);
KernelTable load_kernel_table(const std::string& csv_path);

}  // namespace rv
