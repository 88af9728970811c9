#include "rv/bessel_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "rv/special.hpp"

namespace rv {

namespace {

const real_t kLogPi = std::log(kPi);
const real_t kLog2Pi = std::log(kTwoPi);

constexpr real_t kDetourHalfHeight = 0.5L;
constexpr real_t kDetourMargin = 0.5L;
constexpr real_t kMinClearance = 0.1L;

real_t seg_point_dist(complex_t p, complex_t a, complex_t b) {
    complex_t d = b - a;
    real_t len2 = std::norm(d);
    real_t u = len2 > 0 ? ((p - a) * std::conj(d)).real() / len2 : 0;
    u = std::clamp<real_t>(u, 0, 1);
    return std::abs(p - (a + u * d));
}

// Pole points of the series with real part above `floor`.
std::vector<complex_t> poles_above(const std::vector<PoleSeries>& poles, real_t floor) {
    std::vector<complex_t> out;
    for (const auto& ps : poles)
        for (long k = 0;; ++k) {
            complex_t p = ps.start - ps.step * static_cast<real_t>(k);
            if (p.real() <= floor) break;
            out.push_back(p);
        }
    return out;
}

real_t real_bound(const RealPlaceParams& p) {
    real_t sum = 0;
    for (const auto& b : p.blocks) {
        if (auto* g = std::get_if<GL1Block>(&b))
            sum += g->t.real();
        else
            sum += 2 * std::get<DS2Block>(b).t.real();
    }
    int n = p.rank();
    return 0.5L + (sum - 1) / n;
}

real_t complex_bound(const ComplexPlaceParams& p) {
    real_t sum = 0;
    for (const auto& b : p.blocks) sum += b.t.real();
    int n = p.rank();
    return 0.5L + (2 * sum - 1) / (2 * n);
}

}  // namespace

real_t contour_clearance(const Contour& c, const std::vector<PoleSeries>& poles) {
    std::vector<complex_t> pts = poles_above(poles, c.sigma - 50);
    real_t best = std::numeric_limits<real_t>::infinity();
    complex_t lo = c.nodes.empty() ? complex_t(c.sigma, 0) : c.nodes.front();
    complex_t hi = c.nodes.empty() ? complex_t(c.sigma, 0) : c.nodes.back();
    for (complex_t p : pts) {
        real_t d;
        // vertical rays
        if (p.imag() <= lo.imag())
            d = std::abs(p.real() - c.sigma);
        else
            d = std::abs(p - complex_t(c.sigma, lo.imag()));
        if (p.imag() >= hi.imag())
            d = std::min(d, std::abs(p.real() - c.sigma));
        else
            d = std::min(d, std::abs(p - complex_t(c.sigma, hi.imag())));
        for (std::size_t i = 0; i + 1 < c.nodes.size(); ++i)
            d = std::min(d, seg_point_dist(p, c.nodes[i], c.nodes[i + 1]));
        best = std::min(best, d);
    }
    return best;
}

Contour build_contour_at(const std::vector<PoleSeries>& poles, real_t sigma, real_t bound) {
    if (!(sigma < bound)) throw InfeasibleContour("asymptote violates the convergence bound");
    Contour c;
    c.sigma = sigma;
    c.bound = bound;
    std::vector<complex_t> near = poles_above(poles, sigma - kDetourMargin);
    if (!near.empty()) {
        real_t ylo = near[0].imag(), yhi = near[0].imag(), xr = near[0].real();
        for (complex_t p : near) {
            ylo = std::min(ylo, p.imag());
            yhi = std::max(yhi, p.imag());
            xr = std::max(xr, p.real());
        }
        ylo -= kDetourHalfHeight;
        yhi += kDetourHalfHeight;
        xr = std::max(xr + kDetourMargin, sigma + kDetourMargin);
        c.nodes = {complex_t(sigma, ylo), complex_t(xr, ylo), complex_t(xr, yhi),
                   complex_t(sigma, yhi)};
    }
    c.clearance = contour_clearance(c, poles);
    if (!(c.clearance >= kMinClearance)) throw InfeasibleContour("pole clearance below 0.1");
    return c;
}

Contour build_contour(const RealPlaceParams& p, CharTwist tw) {
    validate(p);
    real_t b = real_bound(p);
    return build_contour_at(gamma_dual_poles(p, tw), b - 0.25L, b);
}

Contour build_contour(const ComplexPlaceParams& p, CharTwist tw) {
    validate(p);
    real_t b = complex_bound(p);
    return build_contour_at(gamma_dual_poles(p, tw), b - 0.125L, b);
}

Contour build_contour_both_parities(const RealPlaceParams& p) {
    validate(p);
    real_t b = real_bound(p);
    auto poles = gamma_dual_poles(p, {0});
    auto p1 = gamma_dual_poles(p, {1});
    poles.insert(poles.end(), p1.begin(), p1.end());
    return build_contour_at(poles, b - 0.25L, b);
}

DualGammaLog::DualGammaLog(const RealPlaceParams& p, CharTwist tw) {
    validate(p);
    rank_ = p.rank();
    long k = 0;
    for (const auto& b : p.blocks) {
        if (auto* g = std::get_if<GL1Block>(&b)) {
            int d = static_cast<int>(((g->delta + tw.value) % 2 + 2) % 2);
            blocks_.push_back({0, g->t, static_cast<real_t>(d)});
            k += d;
        } else {
            const auto& ds = std::get<DS2Block>(b);
            blocks_.push_back({1, ds.t, static_cast<real_t>(ds.l) / 2});
            k += ds.l + 1;
        }
    }
    log_eps_ = complex_t(0, kPi / 2 * static_cast<real_t>(((k % 4) + 4) % 4));
}

DualGammaLog::DualGammaLog(const ComplexPlaceParams& p, CharTwist tw) {
    validate(p);
    rank_ = p.rank();
    complex_ = true;
    long k = 0;
    for (const auto& b : p.blocks) {
        long a = std::labs(b.l + tw.value);
        blocks_.push_back({1, b.t, static_cast<real_t>(a) / 2});
        k += a;
    }
    log_eps_ = complex_t(0, kPi / 2 * static_cast<real_t>(k % 4));
}

complex_t DualGammaLog::operator()(complex_t s) const {
    complex_t acc = log_eps_;
    for (const auto& b : blocks_) {
        if (b.kind == 0) {
            complex_t u = (s - b.t + b.a) / 2.0L;
            complex_t v = (1.0L - s + b.t + b.a) / 2.0L;
            acc += (v - u) * kLogPi + lgamma_c(u) - lgamma_c(v);
        } else {
            complex_t u = s - b.t + b.a;
            complex_t v = 1.0L - s + b.t + b.a;
            acc += (v - u) * kLog2Pi + lgamma_c(u) - lgamma_c(v);
        }
    }
    return acc;
}

ContourWalker::ContourWalker(const Contour& c, const TailSpec& t) : c_(c), t_(t) {
    pos_[0] = c.nodes.empty() ? complex_t(c.sigma, 0) : c.nodes.front();
    pos_[1] = c.nodes.empty() ? complex_t(c.sigma, 0) : c.nodes.back();
}

real_t ContourWalker::rate(complex_t s) const {
    return t_.rate_n * (std::abs(std::log((std::abs(s) + 3) / kTwoPi)) + 1) + t_.rate_const;
}

std::vector<PathPanel> ContourWalker::finite_panels() const {
    std::vector<PathPanel> out;
    for (std::size_t i = 0; i + 1 < c_.nodes.size(); ++i) {
        complex_t a = c_.nodes[i], b = c_.nodes[i + 1];
        real_t len = std::abs(b - a);
        real_t piece = std::min(t_.max_length, t_.panel_phase / rate(a));
        long k = std::max<long>(1, static_cast<long>(std::ceil(len / piece)));
        for (long j = 0; j < k; ++j)
            out.push_back({a + (b - a) * (static_cast<real_t>(j) / k),
                           a + (b - a) * (static_cast<real_t>(j + 1) / k), false, false, 0});
    }
    return out;
}

PathPanel ContourWalker::next(bool upper) {
    int side = upper ? 1 : 0;
    complex_t p = pos_[side];
    real_t sgn = upper ? 1 : -1;
    real_t L = std::min(t_.max_length, t_.panel_phase / rate(p));
    complex_t q;
    if (std::abs(p.imag()) < t_.bend_height) {
        real_t y = p.imag() + sgn * L;
        if (std::abs(y) > t_.bend_height) y = sgn * t_.bend_height;
        q = complex_t(p.real(), y);
    } else {
        complex_t d(-t_.slope, sgn);
        q = p + d * (L / std::abs(d));
    }
    PathPanel panel;
    panel.tail = true;
    panel.upper = upper;
    panel.tau = tau_[side];
    if (upper) {
        panel.a = p;
        panel.b = q;
    } else {
        panel.a = q;
        panel.b = p;
    }
    tau_[side] += std::abs(q - p);
    pos_[side] = q;
    return panel;
}

MBResult integrate_contour(const Contour& c, const std::function<complex_t(complex_t)>& f,
                           const TailSpec& tail, real_t tol) {
    MBResult r;
    const real_t piece_tol = tol * 1e-3L;
    complex_t sum = 0;
    auto do_panel = [&](const PathPanel& pn) {
        complex_t d = pn.b - pn.a;
        auto g = [&](real_t u) {
            ++r.evaluations;
            return f(pn.a + d * u) * d;
        };
        return adaptive_gl<complex_t>(g, 0, 1, piece_tol, 12);
    };
    ContourWalker w(c, tail);
    for (const auto& pn : w.finite_panels()) {
        auto pr = do_panel(pn);
        sum += pr.value;
        r.err += pr.err;
    }
    const bool vertical_only = !std::isfinite(tail.bend_height);
    for (bool upper : {true, false}) {
        real_t win_start = 0, win_abs = 0, last_win = std::numeric_limits<real_t>::infinity();
        bool in_bent = vertical_only;
        long panels = 0;
        for (;;) {
            PathPanel pn = w.next(upper);
            if (++panels > tail.max_panels)
                throw ToleranceNotMet("contour tail did not decay", last_win);
            auto pr = do_panel(pn);
            sum += pr.value;
            r.err += pr.err;
            r.top = std::max(r.top, std::abs(pn.b.imag()));
            r.top = std::max(r.top, std::abs(pn.a.imag()));
            if (!in_bent) {
                complex_t end = upper ? pn.b : pn.a;
                if (std::abs(end.imag()) >= tail.bend_height) {
                    in_bent = true;
                    win_start = pn.tau + std::abs(pn.b - pn.a);
                    win_abs = 0;
                }
                continue;
            }
            win_abs += pr.abs;
            real_t tau_end = pn.tau + std::abs(pn.b - pn.a);
            real_t win_len = std::max<real_t>(2, 0.25L * win_start);
            if (tau_end - win_start >= win_len) {
                last_win = win_abs;
                if (2 * win_abs < tol / 10 * kTwoPi) break;
                win_start = tau_end;
                win_abs = 0;
            }
        }
        r.tail += 2 * last_win / kTwoPi;
    }
    r.value = sum / complex_t(0, kTwoPi);
    r.err /= kTwoPi;
    r.achieved = r.err + r.tail;
    return r;
}

TailSpec bessel_tail(const DualGammaLog& g, real_t absx, real_t max_abs_t) {
    TailSpec t;
    int n = g.rank();
    real_t lx = std::log(absx);
    if (g.complex_place()) {
        t.rate_n = 2 * n;
        t.rate_const = 2 * std::abs(lx);
    } else {
        t.rate_n = n;
        t.rate_const = std::abs(lx);
    }
    t.bend_height = 1.5L * kTwoPi * std::pow(absx, 1.0L / n) + max_abs_t + 3;
    return t;
}

namespace {

real_t max_abs_t(const RealPlaceParams& p) {
    real_t m = 0;
    for (const auto& b : p.blocks) {
        complex_t t = std::holds_alternative<GL1Block>(b) ? std::get<GL1Block>(b).t
                                                           : std::get<DS2Block>(b).t;
        m = std::max(m, std::abs(t));
    }
    return m;
}

real_t max_abs_t(const ComplexPlaceParams& p) {
    real_t m = 0;
    for (const auto& b : p.blocks) m = std::max(m, std::abs(b.t));
    return m;
}

bool parity_free(const RealPlaceParams& p) {
    for (const auto& b : p.blocks)
        if (std::holds_alternative<GL1Block>(b)) return false;
    return true;
}

void check_tol(real_t tol) {
    real_t floor = std::pow(10.0L, -(working_precision() - 6));
    if (!(tol >= floor)) throw ConfigError("tolerance below 10^(-precision+6)");
}

}  // namespace

MBResult bessel_real_mb(const RealPlaceParams& p, real_t x, real_t tol,
                        std::optional<Contour> contour, std::optional<TailSpec> tail) {
    check_tol(tol);
    if (x == 0) throw ConfigError("bessel_real needs x != 0");
    DualGammaLog g0(p, {0});
    DualGammaLog g1(p, {1});
    const real_t ax = std::abs(x);
    const real_t lx = std::log(ax);
    const real_t sg = x > 0 ? 1 : -1;
    Contour c = contour ? *contour : build_contour_both_parities(p);
    TailSpec ts = tail ? *tail : bessel_tail(g0, ax, max_abs_t(p));
    if (!tail && !c.nodes.empty())
        ts.bend_height = std::max(ts.bend_height, std::abs(c.nodes.back().imag()) + 1);
    MBResult r;
    if (parity_free(p)) {
        // Both parities give the same γ, so 𝔟 vanishes on the negative axis.
        if (x < 0) return r;
        r = integrate_contour(c, [&](complex_t s) { return std::exp(g0(s) - s * lx); }, ts, tol);
    } else {
        r = integrate_contour(
            c,
            [&](complex_t s) {
                return 0.5L * (std::exp(g0(s) - s * lx) + sg * std::exp(g1(s) - s * lx));
            },
            ts, tol);
    }
    if (r.achieved > tol) throw ToleranceNotMet("bessel_real", r.achieved);
    return r;
}

complex_t bessel_real(const RealPlaceParams& p, real_t x, real_t tol) {
    return bessel_real_mb(p, x, tol).value;
}

BesselSampler::BesselSampler(const RealPlaceParams& p, real_t tol)
    : p_(p), tol_(tol), g0_(p, {0}), g1_(p, {1}) {
    check_tol(tol);
    contour_ = build_contour_both_parities(p);
    max_t_ = max_abs_t(p);
    parity_free_ = parity_free(p);
}

long BesselSampler::node_count() const {
    long n = 0;
    for (const auto& [k, b] : bands_) n += static_cast<long>(b.s.size());
    return n;
}

// Same panel rule as integrate_contour, with the 16/12 error taken at three |x| across
// [2^k, 2^{k+1}] so the node set serves the whole octave.
BesselSampler::Band BesselSampler::build(int k) {
    const real_t x0 = std::ldexp(1.0L, k), x1 = 2 * x0;
    const real_t logs[3] = {std::log(x0), std::log(x0) + std::log(2.0L) / 2, std::log(x1)};
    TailSpec ts = bessel_tail(g0_, x1, max_t_);
    ts.rate_const = std::max(std::abs(logs[0]), std::abs(logs[2]));
    if (!contour_.nodes.empty())
        ts.bend_height = std::max(ts.bend_height, std::abs(contour_.nodes.back().imag()) + 1);
    const GLRule& hi = gl_rule(kGLHi);
    const GLRule& lo = gl_rule(kGLLo);
    const real_t piece_tol = tol_ * 1e-3L;
    Band out;

    struct Eval {
        real_t err, abs;
    };
    std::function<Eval(complex_t, complex_t, int)> panel = [&](complex_t a, complex_t b,
                                                               int depth) -> Eval {
        const complex_t mid = (a + b) / 2.0L, h = (b - a) / 2.0L;
        auto weights = [&](const GLRule& r, std::vector<complex_t>& s, std::vector<complex_t>& G0,
                           std::vector<complex_t>& G1) {
            for (std::size_t i = 0; i < r.x.size(); ++i) {
                s.push_back(mid + h * r.x[i]);
                G0.push_back(r.w[i] * h * std::exp(g0_(s.back())));
                G1.push_back(parity_free_ ? G0.back() : r.w[i] * h * std::exp(g1_(s.back())));
            }
        };
        std::vector<complex_t> sh, H0, H1, sl, L0, L1;
        weights(hi, sh, H0, H1);
        weights(lo, sl, L0, L1);
        real_t err = 0, abs = 0;
        for (real_t L : logs) {
            complex_t v0 = 0, v1 = 0, u0 = 0, u1 = 0;
            real_t ab = 0;
            for (std::size_t i = 0; i < sh.size(); ++i) {
                const complex_t e = std::exp(-sh[i] * L);
                v0 += H0[i] * e;
                v1 += H1[i] * e;
                ab += (std::abs(H0[i]) + std::abs(H1[i])) * std::abs(e);
            }
            for (std::size_t i = 0; i < sl.size(); ++i) {
                const complex_t e = std::exp(-sl[i] * L);
                u0 += L0[i] * e;
                u1 += L1[i] * e;
            }
            err = std::max(err, std::abs(v0 - u0) + std::abs(v1 - u1));
            abs = std::max(abs, ab);
        }
        if (err > piece_tol && depth < 12) {
            Eval l = panel(a, mid, depth + 1);
            Eval r = panel(mid, b, depth + 1);
            return {l.err + r.err, l.abs + r.abs};
        }
        out.s.insert(out.s.end(), sh.begin(), sh.end());
        out.A0.insert(out.A0.end(), H0.begin(), H0.end());
        out.A1.insert(out.A1.end(), H1.begin(), H1.end());
        out.err += err;
        return {err, abs};
    };

    ContourWalker walker(contour_, ts);
    for (const auto& pn : walker.finite_panels()) panel(pn.a, pn.b, 0);
    for (bool upper : {true, false}) {
        real_t win_start = 0, win_abs = 0, last = std::numeric_limits<real_t>::infinity();
        bool bent = false;
        for (long count = 0;; ++count) {
            if (count > ts.max_panels) throw ToleranceNotMet("bessel sampler tail", last);
            PathPanel pn = walker.next(upper);
            Eval ev = panel(pn.a, pn.b, 0);
            const real_t tau_end = pn.tau + std::abs(pn.b - pn.a);
            if (!bent) {
                complex_t end = upper ? pn.b : pn.a;
                if (std::abs(end.imag()) >= ts.bend_height) {
                    bent = true;
                    win_start = tau_end;
                }
                continue;
            }
            win_abs += ev.abs;
            if (tau_end - win_start >= std::max<real_t>(2, 0.25L * win_start)) {
                last = win_abs;
                if (2 * win_abs < tol_ / 10 * kTwoPi) break;
                win_start = tau_end;
                win_abs = 0;
            }
        }
        out.tail += 2 * last;
    }
    return out;
}

MBResult BesselSampler::operator()(real_t x) {
    if (x == 0) throw ConfigError("bessel_real needs x != 0");
    MBResult r;
    if (parity_free_ && x < 0) return r;
    const real_t ax = std::abs(x);
    const int k = static_cast<int>(std::floor(std::log2(ax)));
    auto it = bands_.find(k);
    if (it == bands_.end()) it = bands_.emplace(k, build(k)).first;
    const Band& b = it->second;
    const real_t lx = std::log(ax);
    complex_t v0 = 0, v1 = 0;
    for (std::size_t i = 0; i < b.s.size(); ++i) {
        const complex_t e = std::exp(-b.s[i] * lx);
        v0 += b.A0[i] * e;
        v1 += b.A1[i] * e;
    }
    const real_t sg = x > 0 ? 1 : -1;
    r.value = (parity_free_ ? v0 : 0.5L * (v0 + sg * v1)) / complex_t(0, kTwoPi);
    r.err = b.err / kTwoPi;
    r.tail = b.tail / kTwoPi;
    r.achieved = r.err + r.tail;
    r.evaluations = static_cast<long>(b.s.size());
    if (r.achieved > tol_) throw ToleranceNotMet("bessel sampler", r.achieved);
    return r;
}

MBResult bessel_j_complex(const ComplexPlaceParams& p, long m, real_t x, real_t tol) {
    check_tol(tol);
    DualGammaLog g(p, {m});
    Contour c = build_contour(p, {m});
    TailSpec ts = bessel_tail(g, x, max_abs_t(p));
    if (!c.nodes.empty())
        ts.bend_height = std::max(ts.bend_height, std::abs(c.nodes.back().imag()) + 1);
    const real_t lx = std::log(x);
    MBResult r = integrate_contour(c, [&](complex_t s) { return std::exp(g(s) - 2.0L * s * lx); },
                                   ts, tol);
    if (r.achieved > tol) throw ToleranceNotMet("bessel_complex term", r.achieved);
    return r;
}

ComplexBesselResult bessel_complex_series(const ComplexPlaceParams& p, complex_t z, real_t tol,
                                          long m_max) {
    if (m_max < 1) throw ConfigError("m_max must be >= 1");
    if (z == complex_t(0)) throw ConfigError("bessel_complex needs z != 0");
    const real_t r = std::abs(z);
    const complex_t unit = z / r;
    const real_t term_tol = tol / static_cast<real_t>(2 * m_max + 1);
    ComplexBesselResult out;
    complex_t sum = 0;
    int small_run = 0;
    real_t last_mag = 0;
    for (long m = 0; m <= m_max; ++m) {
        real_t mag = 0;
        for (long sm : (m == 0 ? std::vector<long>{0} : std::vector<long>{m, -m})) {
            MBResult j = bessel_j_complex(p, sm, r, term_tol);
            complex_t term = j.value * std::pow(unit, static_cast<int>(sm)) / kTwoPi;
            sum += term;
            out.achieved += j.achieved / kTwoPi;
            mag = std::max(mag, std::abs(term));
            ++out.terms;
        }
        out.m_used = m;
        last_mag = mag;
        small_run = mag < tol / 10 ? small_run + 1 : 0;
        if (small_run >= 3 && m >= 8) break;
    }
    out.value = sum;
    out.tail_estimate = small_run >= 3 ? 2 * last_mag : std::max(last_mag, tol);
    return out;
}

complex_t bessel_complex(const ComplexPlaceParams& p, complex_t z, real_t tol, long m_max) {
    return bessel_complex_series(p, z, tol, m_max).value;
}

complex_t kernel_eval(const RealPlaceParams& p, real_t x, real_t tol) {
    return bessel_real(p, x, tol) * std::sqrt(std::abs(x));
}

complex_t kernel_eval(const ComplexPlaceParams& p, complex_t z, real_t tol, long m_max) {
    // |z|_ℂ^{1/2} = |z|
    return bessel_complex(p, z, tol, m_max) * std::abs(z);
}

KernelTable kernel_table(const RealPlaceParams& p, const std::vector<real_t>& xs, real_t tol) {
    if (xs.empty()) throw ConfigError("kernel_table needs a nonempty grid");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] == 0) throw ConfigError("kernel_table grid must avoid 0");
        if (i > 0 && !(xs[i] > xs[i - 1])) throw ConfigError("kernel_table grid must increase");
    }
    KernelTable t;
    t.requested_tol = tol;
    t.contour = build_contour_both_parities(p);
    for (real_t x : xs) {
        t.grid.push_back(std::abs(x));
        t.sign.push_back(x > 0 ? 1 : -1);
        try {
            MBResult r = bessel_real_mb(p, x, tol);
            t.values.push_back(r.value * std::sqrt(std::abs(x)));
            t.ok.push_back(true);
            t.achieved_tol = std::max(t.achieved_tol, r.achieved * std::sqrt(std::abs(x)));
        } catch (const Error&) {
            t.values.push_back(complex_t(std::nanl(""), std::nanl("")));
            t.ok.push_back(false);
            t.partial = true;
        }
    }
    return t;
}

namespace {

std::string fmt_real(real_t v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.21Lg", v);
    return buf;
}

}  // namespace

void save_kernel_table(const KernelTable& t, const std::string& csv_path) {
    std::ostringstream os;
    os << "x,sign,re,im\n";
    for (std::size_t i = 0; i < t.grid.size(); ++i)
        os << fmt_real(t.grid[i]) << ',' << t.sign[i] << ',' << fmt_real(t.values[i].real()) << ','
           << fmt_real(t.values[i].imag()) << '\n';
    nlohmann::ordered_json j;
    j["params"] = t.params_json.empty() ? nlohmann::ordered_json() :
                                          nlohmann::ordered_json::parse(t.params_json);
    j["requested_tol"] = fmt_real(t.requested_tol);
    j["achieved_tol"] = fmt_real(t.achieved_tol);
    j["partial"] = t.partial;
    std::vector<int> ok(t.ok.begin(), t.ok.end());
    j["ok"] = ok;
    j["contour"]["sigma"] = fmt_real(t.contour.sigma);
    j["contour"]["bound"] = fmt_real(t.contour.bound);
    j["contour"]["clearance"] = fmt_real(t.contour.clearance);
    auto nodes = nlohmann::ordered_json::array();
    for (complex_t n : t.contour.nodes) nodes.push_back({fmt_real(n.real()), fmt_real(n.imag())});
    j["contour"]["nodes"] = nodes;
    auto write_atomic = [](const std::string& path, const std::string& body) {
        std::string tmp = path + ".tmp";
        {
            std::ofstream f(tmp, std::ios::binary);
            if (!f) throw Error("cannot write " + tmp);
            f << body;
        }
        if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error("cannot rename " + tmp);
    };
    write_atomic(csv_path, os.str());
    write_atomic(csv_path + ".json", j.dump(2) + "\n");
}

KernelTable load_kernel_table(const std::string& csv_path) {
    KernelTable t;
    std::ifstream f(csv_path);
    if (!f) throw Error("cannot read " + csv_path);
    std::string line;
    std::getline(f, line);
    if (line != "x,sign,re,im") throw Error("bad kernel table header");
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string a, b, c, d;
        std::getline(ls, a, ',');
        std::getline(ls, b, ',');
        std::getline(ls, c, ',');
        std::getline(ls, d, ',');
        t.grid.push_back(std::strtold(a.c_str(), nullptr));
        t.sign.push_back(std::stoi(b));
        t.values.emplace_back(std::strtold(c.c_str(), nullptr), std::strtold(d.c_str(), nullptr));
    }
    std::ifstream js(csv_path + ".json");
    if (js) {
        auto j = nlohmann::json::parse(js);
        if (!j["params"].is_null()) t.params_json = j["params"].dump();
        t.requested_tol = std::strtold(j["requested_tol"].get<std::string>().c_str(), nullptr);
        t.achieved_tol = std::strtold(j["achieved_tol"].get<std::string>().c_str(), nullptr);
        t.partial = j["partial"].get<bool>();
        for (int v : j["ok"]) t.ok.push_back(v != 0);
        t.contour.sigma = std::strtold(j["contour"]["sigma"].get<std::string>().c_str(), nullptr);
        t.contour.bound = std::strtold(j["contour"]["bound"].get<std::string>().c_str(), nullptr);
        t.contour.clearance =
            std::strtold(j["contour"]["clearance"].get<std::string>().c_str(), nullptr);
        for (const auto& n : j["contour"]["nodes"])
            t.contour.nodes.emplace_back(std::strtold(n[0].get<std::string>().c_str(), nullptr),
                                         std::strtold(n[1].get<std::string>().c_str(), nullptr));
    } else {
        t.ok.assign(t.grid.size(), true);
    }
    return t;
}

}  // namespace rv
