#include "rv/hankel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "rv/quadrature.hpp"

namespace rv {

real_t bump_profile(real_t a, real_t b, real_t y) {
    if (!(y > a && y < b)) return 0;
    real_t u = (2 * y - a - b) / (b - a);
    return std::exp(-1 / (1 - u * u));
}

real_t TestFunction::operator()(real_t x) const {
    real_t v = 0;
    for (const auto& t : terms)
        if ((x > 0) == (t.sign > 0)) v += t.coef * bump_profile(t.a, t.b, std::abs(x));
    return v;
}

real_t TestFunction::abs_min() const {
    real_t m = std::numeric_limits<real_t>::infinity();
    for (const auto& t : terms) m = std::min(m, t.a);
    return m;
}

real_t TestFunction::abs_max() const {
    real_t m = 0;
    for (const auto& t : terms) m = std::max(m, t.b);
    return m;
}

TestFunction make_bump(real_t a, real_t b, int sign) {
    if (!(a > 0 && b > a && std::isfinite(b))) throw BadSupport("bump needs 0 < a < b");
    if (sign != 1 && sign != -1) throw BadSupport("bump sign must be +1 or -1");
    return TestFunction{{BumpTerm{a, b, 1, sign}}};
}

TestFunction operator+(TestFunction f, const TestFunction& g) {
    f.terms.insert(f.terms.end(), g.terms.begin(), g.terms.end());
    return f;
}

TestFunction operator*(real_t c, TestFunction f) {
    for (auto& t : f.terms) t.coef *= c;
    return f;
}

namespace {

// Trapezoid sums in u = log y. The integrand is C^∞ with all derivatives vanishing at
// both ends, so the rule converges faster than any power of the step.
struct LogTrap {
    const BumpTerm& term;
    std::map<long, std::vector<real_t>>* cache;

    const std::vector<real_t>& values(long N) {
        auto it = cache->find(N);
        if (it != cache->end()) return it->second;
        std::vector<real_t> v(N + 1);
        real_t la = std::log(term.a), lb = std::log(term.b);
        for (long j = 0; j <= N; ++j)
            v[j] = bump_profile(term.a, term.b, std::exp(la + (lb - la) * j / N));
        return cache->emplace(N, std::move(v)).first->second;
    }

    // Returns T_N, sets diff = |T_N − T_{N/2}| and abs = trapezoid of |integrand|.
    complex_t run(complex_t z, long N, real_t& diff, real_t& abs) {
        const auto& v = values(N);
        const real_t la = std::log(term.a), lb = std::log(term.b);
        const real_t h = (lb - la) / N;
        const complex_t c0 = std::exp(la * z), r = std::exp(h * z);
        real_t cr = c0.real(), ci = c0.imag();
        const real_t rr = r.real(), ri = r.imag();
        real_t mag = std::abs(c0);
        const real_t rmag = std::exp(h * z.real());
        real_t ar = 0, ai = 0, er = 0, ei = 0, ab = 0;
        for (long j = 0; j <= N; ++j) {
            const real_t vj = v[j];
            if (vj != 0) {
                ar += vj * cr;
                ai += vj * ci;
                if ((j & 1) == 0) {
                    er += vj * cr;
                    ei += vj * ci;
                }
                ab += vj * mag;
            }
            const real_t nr = cr * rr - ci * ri;
            ci = cr * ri + ci * rr;
            cr = nr;
            mag *= rmag;
        }
        complex_t all(ar * h, ai * h), even(er * 2 * h, ei * 2 * h);
        abs = ab * h;
        diff = std::abs(all - even);
        return all;
    }
};

complex_t trap_mellin(const BumpTerm& term, std::map<long, std::vector<real_t>>& cache,
                      complex_t z, real_t abs_tol, real_t rel_tol, long* hint = nullptr) {
    real_t width = std::log(term.b / term.a);
    long N = 32;
    while (N < 2 * width * std::abs(z.imag()) / kPi) N *= 2;
    if (hint && *hint / 2 > N) N = *hint / 2;
    LogTrap tr{term, &cache};
    for (; N <= (1L << 20); N *= 2) {
        real_t diff, abs;
        complex_t v = tr.run(z, N, diff, abs);
        if (diff <= abs_tol || diff <= rel_tol * abs) {
            if (hint) *hint = N;
            return v;
        }
    }
    throw ToleranceNotMet("signed_mellin trapezoid did not converge", 0);
}

}  // namespace

complex_t signed_mellin(const TestFunction& f, int delta, complex_t z, real_t tol) {
    complex_t sum = 0;
    for (const auto& t : f.terms) {
        std::map<long, std::vector<real_t>> cache;
        real_t sg = (t.sign < 0 && delta % 2) ? -1 : 1;
        sum += sg * t.coef *
               trap_mellin(t, cache, z, tol / (10 * f.terms.size() * std::max<real_t>(1, std::abs(t.coef))),
                           0);
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Mellin route

namespace {

real_t rightmost_pole(const RealPlaceParams& p) {
    real_t r = -std::numeric_limits<real_t>::infinity();
    for (int d = 0; d < 2; ++d)
        for (const auto& ps : gamma_dual_poles(p, {d})) r = std::max(r, ps.start.real());
    return r;
}

real_t max_abs_t(const RealPlaceParams& p) {
    real_t m = 0;
    for (const auto& b : p.blocks) {
        complex_t t = std::holds_alternative<GL1Block>(b) ? std::get<GL1Block>(b).t
                                                           : std::get<DS2Block>(b).t;
        m = std::max(m, std::abs(t));
    }
    return m;
}

void check_rank(const RealPlaceParams& p, int n) {
    if (p.rank() != n) throw ConfigError("rank does not match the parameter blocks");
}

}  // namespace

MellinDual::MellinDual(const RealPlaceParams& p, const TestFunction& w, real_t tol)
    : p_(p), w_(w), tol_(tol), n_(p.rank()), g0_(p, {0}), g1_(p, {1}) {
    if (w.terms.empty()) throw BadSupport("empty test function");
    sigma_ = rightmost_pole(p) + 0.5L;
    term_cache_.resize(w.terms.size());
    hint_.assign(w.terms.size(), 0);
    max_t_ = max_abs_t(p);
}

void MellinDual::mellin_w(complex_t z, complex_t& m0, complex_t& m1) {
    m0 = m1 = 0;
    for (std::size_t i = 0; i < w_.terms.size(); ++i) {
        const auto& t = w_.terms[i];
        complex_t v = t.coef * trap_mellin(t, term_cache_[i], z, 0, 1e-13L, &hint_[i]);
        m0 += v;
        m1 += t.sign < 0 ? -v : v;
    }
}

complex_t MellinDual::gamma_mellin(int delta, complex_t s) {
    complex_t a, b;
    gamma_mellin_both(s, a, b);
    return delta ? b : a;
}

void MellinDual::gamma_mellin_both(complex_t s, complex_t& v0, complex_t& v1) {
    complex_t z = 1.0L - s - static_cast<real_t>(n_ - 1) / 2;
    complex_t m0, m1;
    mellin_w(z, m0, m1);
    v0 = std::exp(g0_(s)) * m0;
    v1 = std::exp(g1_(s)) * m1;
}

long MellinDual::node_count() const {
    long c = 0;
    for (const auto& [k, b] : bands_) c += static_cast<long>(b.s.size());
    return c;
}

const MellinDual::Band& MellinDual::band(int k) {
    auto it = bands_.find(k);
    if (it != bands_.end()) return it->second;
    return bands_.emplace(k, build_band(k)).first->second;
}

// The line Re s = σ may sit anywhere right of the poles. Pick the σ that minimizes the
// integrand's size on the real axis over the band, which keeps cancellation small.
real_t MellinDual::band_sigma(real_t x0, real_t x1, real_t bend) {
    const real_t c = static_cast<real_t>(n_ - 1) / 2;
    real_t best = sigma_, best_mag = std::numeric_limits<real_t>::infinity();
    for (int i = 0; i <= 160; ++i) {
        real_t sg = sigma_ + 0.25L * i;
        try {
            real_t mag = 0;
            for (real_t T : {0.0L, bend / 2, bend}) {
                complex_t v0, v1;
                gamma_mellin_both(complex_t(sg, T), v0, v1);
                mag = std::max(mag, std::abs(v0) + std::abs(v1));
            }
            mag *= std::max(std::pow(x0, c - sg), std::pow(x1, c - sg));
            if (mag < best_mag) {
                best_mag = mag;
                best = sg;
            }
        } catch (const PoleError&) {
        }
    }
    return best;
}

MellinDual::Band MellinDual::build_band(int k) {
    const real_t x0 = std::ldexp(1.0L, k), x1 = 2 * x0;
    const real_t c = static_cast<real_t>(n_ - 1) / 2;
    const real_t logs[3] = {std::log(x0), std::log(x0) + std::log(2.0L) / 2, std::log(x1)};
    const real_t ymin = w_.abs_min(), ymax = w_.abs_max();

    TailSpec ts;
    ts.rate_n = n_;
    ts.rate_const = std::max(std::abs(std::log(x0 * ymin)), std::abs(std::log(x1 * ymax)));
    real_t saddle = kTwoPi * std::pow(x1 * ymax, 1.0L / n_);
    ts.bend_height = saddle + 3 * std::sqrt(saddle) + max_t_ + 3;
    ts.panel_phase = kTwoPi;
    Contour path;
    path.sigma = band_sigma(x0, x1, ts.bend_height);
    path.bound = std::numeric_limits<real_t>::infinity();

    const GLRule& hi = gl_rule(kGLHi);
    const GLRule& lo = gl_rule(kGLLo);
    const real_t piece_tol = tol_ * 1e-3L;
    Band out;

    struct Eval {
        real_t err, abs;
    };
    // Adds the panel's nodes to `out` after the 16/12 comparison at three |x| in the band.
    std::function<Eval(complex_t, complex_t, int)> panel = [&](complex_t a, complex_t b,
                                                               int depth) -> Eval {
        complex_t mid = (a + b) / 2.0L, h = (b - a) / 2.0L;
        std::vector<complex_t> sh(hi.x.size()), G0(hi.x.size()), G1(hi.x.size());
        for (std::size_t i = 0; i < hi.x.size(); ++i) {
            sh[i] = mid + h * hi.x[i];
            gamma_mellin_both(sh[i], G0[i], G1[i]);
            G0[i] *= hi.w[i] * h;
            G1[i] *= hi.w[i] * h;
        }
        std::vector<complex_t> sl(lo.x.size()), L0(lo.x.size()), L1(lo.x.size());
        for (std::size_t i = 0; i < lo.x.size(); ++i) {
            sl[i] = mid + h * lo.x[i];
            gamma_mellin_both(sl[i], L0[i], L1[i]);
            L0[i] *= lo.w[i] * h;
            L1[i] *= lo.w[i] * h;
        }
        real_t err = 0, abs = 0;
        for (real_t L : logs) {
            complex_t v0 = 0, v1 = 0, u0 = 0, u1 = 0;
            real_t ab = 0;
            for (std::size_t i = 0; i < sh.size(); ++i) {
                complex_t e = std::exp((c - sh[i]) * L);
                v0 += G0[i] * e;
                v1 += G1[i] * e;
                ab += (std::abs(G0[i]) + std::abs(G1[i])) * std::abs(e);
            }
            for (std::size_t i = 0; i < sl.size(); ++i) {
                complex_t e = std::exp((c - sl[i]) * L);
                u0 += L0[i] * e;
                u1 += L1[i] * e;
            }
            err = std::max(err, std::abs(v0 - u0) + std::abs(v1 - u1));
            abs = std::max(abs, ab);
        }
        if (err > piece_tol && depth < 8) {
            Eval l = panel(a, mid, depth + 1);
            Eval r = panel(mid, b, depth + 1);
            return {l.err + r.err, l.abs + r.abs};
        }
        for (std::size_t i = 0; i < sh.size(); ++i) {
            out.s.push_back(sh[i]);
            out.A[0].push_back(G0[i]);
            out.A[1].push_back(G1[i]);
        }
        out.err += err;
        return {err, abs};
    };

    ContourWalker walker(path, ts);
    // Weights are stored scaled by x0^{c−s} so the double copies stay in range.
    const real_t Lref = std::log(x0);
    out.lref = Lref;
    auto finish = [&out, Lref, c]() {
        std::size_t m = out.s.size();
        out.sr.resize(m);
        out.si.resize(m);
        out.a0r.resize(m);
        out.a0i.resize(m);
        out.a1r.resize(m);
        out.a1i.resize(m);
        out.amag.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            const complex_t sc = std::exp((c - out.s[i]) * Lref);
            out.A[0][i] *= sc;
            out.A[1][i] *= sc;
            out.sr[i] = static_cast<double>(out.s[i].real());
            out.si[i] = static_cast<double>(out.s[i].imag());
            out.a0r[i] = static_cast<double>(out.A[0][i].real());
            out.a0i[i] = static_cast<double>(out.A[0][i].imag());
            out.a1r[i] = static_cast<double>(out.A[1][i].real());
            out.a1i[i] = static_cast<double>(out.A[1][i].imag());
            out.amag[i] = static_cast<double>(std::abs(out.A[0][i]) + std::abs(out.A[1][i]));
        }
    };
    for (bool upper : {true, false}) {
        real_t win_start = 0, win_abs = 0, last = std::numeric_limits<real_t>::infinity();
        bool bent = false;
        for (long count = 0;; ++count) {
            if (count > ts.max_panels) throw ToleranceNotMet("Mellin route tail", last);
            PathPanel pn = walker.next(upper);
            Eval ev = panel(pn.a, pn.b, 0);
            real_t tau_end = pn.tau + std::abs(pn.b - pn.a);
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
    finish();
    return out;
}

std::pair<complex_t, complex_t> MellinDual::parity_parts(real_t absx, real_t* achieved) {
    if (!(absx > 0) || !std::isfinite(absx)) throw ConfigError("dual function needs x != 0");
    int k = static_cast<int>(std::floor(std::log2(absx)));
    const Band& b = band(k);
    // Node sums run in double: the terms are of the size of the result, and the
    // rounding bound below is added to the error estimate.
    const double L = static_cast<double>(std::log(absx) - b.lref);
    const double c = (n_ - 1) / 2.0;
    double r0 = 0, i0 = 0, r1 = 0, i1 = 0, mag = 0;
    for (std::size_t i = 0; i < b.s.size(); ++i) {
        const double e = std::exp((c - b.sr[i]) * L);
        double sn, cs;
        sincos(-b.si[i] * L, &sn, &cs);
        const double er = e * cs, ei = e * sn;
        r0 += b.a0r[i] * er - b.a0i[i] * ei;
        i0 += b.a0r[i] * ei + b.a0i[i] * er;
        r1 += b.a1r[i] * er - b.a1i[i] * ei;
        i1 += b.a1r[i] * ei + b.a1i[i] * er;
        mag += e * b.amag[i];
    }
    const complex_t norm(0, kTwoPi);
    if (achieved) *achieved = (b.err + b.tail + 1e-15L * mag) / kTwoPi;
    return {complex_t(r0, i0) / norm, complex_t(r1, i1) / norm};
}

DualFunctionResult MellinDual::operator()(real_t x) {
    DualFunctionResult r;
    r.x = x;
    r.route = Route::mellin;
    auto [i0, i1] = parity_parts(std::abs(x), &r.achieved_tol);
    r.value = x > 0 ? (i0 + i1) / 2.0L : (i0 - i1) / 2.0L;
    if (r.achieved_tol > tol_) {
        const Band& b = band(static_cast<int>(std::floor(std::log2(std::abs(x)))));
        throw ToleranceNotMet("Mellin route (quadrature " + std::to_string(static_cast<double>(b.err / kTwoPi)) +
                                  ", tail " + std::to_string(static_cast<double>(b.tail / kTwoPi)) + ")",
                              r.achieved_tol);
    }
    return r;
}

DualFunctionResult hankel_mellin_route(const RealPlaceParams& p, int n, const TestFunction& w,
                                       real_t x, real_t tol) {
    check_rank(p, n);
    if (w.terms.empty()) {
        if (x == 0) throw ConfigError("dual function needs x != 0");
        DualFunctionResult r;
        r.x = x;
        return r;
    }
    MellinDual md(p, w, tol);
    return md(x);
}

// ---------------------------------------------------------------------------
// Convolution route

DualFunctionResult hankel_convolution_route_exp(const RealPlaceParams& p, int n,
                                                const TestFunction& w, real_t x, real_t tol,
                                                real_t e) {
    check_rank(p, n);
    if (x == 0) throw ConfigError("dual function needs x != 0");
    DualFunctionResult r;
    r.x = x;
    r.route = Route::convolution;
    const real_t ax = std::abs(x);
    const real_t pre = std::pow(ax, static_cast<real_t>(n - 1) / 2);
    // Budget: a tenth to quadrature, the rest to the kernel evaluations.
    real_t mass = 0;
    for (const auto& t : w.terms)
        mass += std::abs(t.coef) * (t.b - t.a) * std::max(std::pow(t.a, e - 1), std::pow(t.b, e - 1));
    mass = std::max<real_t>(mass * pre, 1e-30L);
    const real_t btol = std::clamp<real_t>(tol / (2 * mass), 1e-12L, 1e-6L);
    BesselSampler kernel(p, btol);
    real_t bessel_err = 0;
    complex_t sum = 0;
    real_t qerr = 0;
    for (const auto& t : w.terms) {
        auto f = [&](real_t u) -> complex_t {
            MBResult b = kernel(x * t.sign * u);
            bessel_err = std::max(bessel_err, b.achieved);
            return b.value * bump_profile(t.a, t.b, u) * std::pow(u, e - 1);
        };
        real_t u = t.a;
        while (u < t.b) {
            real_t rate = kTwoPi * std::pow(ax, 1.0L / n) * std::pow(u, 1.0L / n - 1) + 1;
            real_t len = std::min((t.b - t.a) / 8, kPi / rate);
            real_t v = std::min(t.b, u + len);
            auto pr = adaptive_gl<complex_t>(f, u, v, tol / 20 / pre * (v - u) / (t.b - t.a), 10);
            sum += t.coef * pr.value;
            qerr += std::abs(t.coef) * pr.err;
            u = v;
        }
    }
    r.value = pre * sum;
    r.achieved_tol = pre * qerr + bessel_err * mass;
    if (r.achieved_tol > tol) throw ToleranceNotMet("convolution route", r.achieved_tol);
    return r;
}

DualFunctionResult hankel_convolution_route(const RealPlaceParams& p, int n, const TestFunction& w,
                                            real_t x, real_t tol) {
    return hankel_convolution_route_exp(p, n, w, x, tol, static_cast<real_t>(3 - n) / 2);
}

// ---------------------------------------------------------------------------
// Functional-equation residual

namespace {

using CMat = Eigen::Matrix<complex_t, Eigen::Dynamic, Eigen::Dynamic>;
using CVec = Eigen::Matrix<complex_t, Eigen::Dynamic, 1>;

// Exponents e of the small-|y| expansion Σ c_e |y|^e of the parity-δ part of w̃,
// sorted by real part.
std::vector<complex_t> small_y_exponents(const RealPlaceParams& p, int delta, int n, int count) {
    std::vector<complex_t> out;
    const real_t c = static_cast<real_t>(n - 1) / 2;
    for (const auto& ps : gamma_dual_poles(p, {delta}))
        for (int k = 0; k < count; ++k) out.push_back(c - (ps.start - ps.step * static_cast<real_t>(k)));
    std::sort(out.begin(), out.end(),
              [](complex_t a, complex_t b) { return a.real() < b.real(); });
    out.resize(std::min<std::size_t>(out.size(), count));
    return out;
}

}  // namespace

std::vector<FEResidualRow> local_fe_residual(const RealPlaceParams& p, int n,
                                             const TestFunction& w,
                                             const std::vector<complex_t>& s_samples, real_t tol) {
    check_rank(p, n);
    MellinDual md(p, w, tol * 1e-2L);
    const real_t c = static_cast<real_t>(n - 1) / 2;
    const real_t ymin = w.abs_min(), ymax = w.abs_max();
    // Below y0 the expansion at 0 is accurate; above it w̃ is integrated directly.
    const real_t y0 = std::pow(0.02L, n) / ymax;
    const std::size_t R = 2 * s_samples.size();

    std::vector<FEResidualRow> rows(R);
    std::vector<complex_t> z(R);
    std::vector<real_t> target(R);
    for (std::size_t r = 0; r < R; ++r) {
        rows[r].s = s_samples[r / 2];
        rows[r].delta = static_cast<int>(r % 2);
        rows[r].rhs = md.gamma_mellin(rows[r].delta, rows[r].s);
        z[r] = rows[r].s - c;
        target[r] = tol * std::max(std::abs(rows[r].rhs), 1e-300L) / 10;
    }

    // fit the expansion at 0 on y0·0.7^i; the samples are shared by every row
    const int npts = 12;
    std::vector<std::pair<complex_t, complex_t>> fit(npts);
    for (int i = 0; i < npts; ++i) fit[i] = md.parity_parts(y0 * std::pow(0.7L, i));
    for (std::size_t r = 0; r < R; ++r) {
        const int delta = rows[r].delta;
        std::vector<complex_t> ex = small_y_exponents(p, delta, n, 12);
        std::size_t divergent = 0;
        for (complex_t e : ex)
            if ((e + z[r]).real() < 0.5L) ++divergent;
        const std::size_t K = std::min(ex.size(), divergent + 3);
        CMat A(npts, K);
        CVec b(npts);
        for (int i = 0; i < npts; ++i) {
            const real_t ly = static_cast<real_t>(i) * std::log(0.7L);
            for (std::size_t k = 0; k < K; ++k) A(i, k) = std::exp(ex[k] * ly);
            b(i) = delta ? fit[i].second : fit[i].first;
        }
        CVec d = A.colPivHouseholderQr().solve(b);
        for (std::size_t k = 0; k < K; ++k) rows[r].lhs += d(k) * std::pow(y0, z[r]) / (ex[k] + z[r]);
    }

    // direct part in u = log y, one sweep for all rows
    const GLRule& hi = gl_rule(kGLHi);
    const GLRule& lo = gl_rule(kGLLo);
    std::vector<real_t> amp(R, 0);
    std::function<void(real_t, real_t, int)> panel = [&](real_t a, real_t bnd, int depth) {
        const real_t mid = (a + bnd) / 2, h = (bnd - a) / 2;
        std::vector<complex_t> vh(R), vl(R);
        auto add = [&](real_t u, real_t wt, std::vector<complex_t>& acc, bool track) {
            auto [i0, i1] = md.parity_parts(std::exp(u));
            for (std::size_t r = 0; r < R; ++r) {
                complex_t f = (rows[r].delta ? i1 : i0) * std::exp(z[r] * u);
                acc[r] += wt * f;
                if (track) amp[r] = std::max(amp[r], std::abs(f));
            }
        };
        for (std::size_t i = 0; i < hi.x.size(); ++i) add(mid + h * hi.x[i], h * hi.w[i], vh, true);
        for (std::size_t i = 0; i < lo.x.size(); ++i) add(mid + h * lo.x[i], h * lo.w[i], vl, false);
        bool ok = true;
        for (std::size_t r = 0; r < R; ++r)
            if (std::abs(vh[r] - vl[r]) > target[r] * 1e-2L * (bnd - a)) ok = false;
        if (!ok && depth > 0) {
            panel(a, mid, depth - 1);
            panel(mid, bnd, depth - 1);
            return;
        }
        for (std::size_t r = 0; r < R; ++r) rows[r].lhs += vh[r];
    };

    // Past 10/ymin the integrand oscillates at least at rate 2π(y·ymin)^{1/n} in u, so
    // the remaining tail is bounded by a few amplitudes over that rate.
    const real_t check_from = std::log(10 / ymin);
    real_t u = std::log(y0), win_start = u;
    for (long pieces = 0;; ++pieces) {
        if (pieces > 100000) throw ToleranceNotMet("fe residual tail", 0);
        const real_t y = std::exp(u);
        const real_t rate = kTwoPi * std::pow(y * ymax, 1.0L / n) + 1;
        const real_t len = std::min<real_t>(0.5L, kPi / rate);
        panel(u, u + len, 3);
        u += len;
        if (u - win_start >= 1) {
            if (u > check_from) {
                const real_t slow = kTwoPi * std::pow(std::exp(u) * ymin, 1.0L / n);
                bool done = true;
                for (std::size_t r = 0; r < R; ++r)
                    if (4 * amp[r] / slow > target[r]) done = false;
                if (done) break;
            }
            win_start = u;
            std::fill(amp.begin(), amp.end(), 0);
        }
    }
    for (auto& row : rows)
        row.residual = std::abs(row.lhs - row.rhs) / std::max(std::abs(row.rhs), 1e-300L);
    return rows;
}

}  // namespace rv
