#include "rv/voronoi_global.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace rv {

namespace {

mpz_class from_i128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(u & ~0UL));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

std::vector<long> prime_factors(long c) {
    std::vector<long> ps;
    for (long p = 2; p * p <= c; ++p)
        if (c % p == 0) {
            ps.push_back(p);
            while (c % p == 0) c /= p;
        }
    if (c > 1) ps.push_back(c);
    return ps;
}

long ceil_support(const TestFunction& w) { return static_cast<long>(std::ceil(w.abs_max())); }

mpq_class pow_q(long p, long e) {
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e < 0 ? -e : e));
    mpq_class r = e < 0 ? mpq_class(1, pw) : mpq_class(pw);
    r.canonicalize();
    return r;
}

complex_t e_phase(real_t x) {
    real_t a = kTwoPi * (x - std::floor(x));
    return {std::cos(a), std::sin(a)};
}

}  // namespace

complex_t DirichletCoeffs::operator[](long n) const {
    if (n < 1 || n > N) throw CoeffRangeExceeded("coefficient index " + std::to_string(n) + " beyond " + std::to_string(N));
    return lambda[static_cast<std::size_t>(n)];
}

DirichletCoeffs tau_coefficients(long N) {
    if (N < 1) throw ConfigError("need N >= 1");
    // A = ∏(1−q^j)^3 = Σ(−1)^k(2k+1)q^{k(k+1)/2}; τ(n) is the coefficient of q^{n−1} in A^8.
    const long M = N;  // degrees 0..N−1
    std::vector<std::pair<long, long>> sparse;
    for (long k = 0; k * (k + 1) / 2 < M; ++k) sparse.push_back({k * (k + 1) / 2, (k % 2 ? -1 : 1) * (2 * k + 1)});
    std::vector<__int128> P(static_cast<std::size_t>(M), 0), Q(static_cast<std::size_t>(M));
    for (auto [e, c] : sparse) P[static_cast<std::size_t>(e)] = c;
    for (int step = 0; step < 7; ++step) {
        std::fill(Q.begin(), Q.end(), 0);
        for (long i = 0; i < M; ++i) {
            const __int128 v = P[static_cast<std::size_t>(i)];
            if (v == 0) continue;
            for (auto [e, c] : sparse) {
                if (i + e >= M) break;
                Q[static_cast<std::size_t>(i + e)] += v * c;
            }
        }
        P.swap(Q);
    }
    DirichletCoeffs d;
    d.N = N;
    d.provenance = "tau";
    d.tau.resize(static_cast<std::size_t>(N + 1));
    d.lambda.resize(static_cast<std::size_t>(N + 1));
    for (long n = 1; n <= N; ++n) {
        d.tau[static_cast<std::size_t>(n)] = from_i128(P[static_cast<std::size_t>(n - 1)]);
        // τ(n)/n^{11/2} in long double
        long double t = static_cast<long double>(P[static_cast<std::size_t>(n - 1)]);
        d.lambda[static_cast<std::size_t>(n)] = t / std::pow(static_cast<long double>(n), 5.5L);
    }
    return d;
}

DirichletCoeffs read_coefficients(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open coefficient file " + path);
    std::string line;
    if (!std::getline(in, line) || line != "n,lambda_re,lambda_im")
        throw ConfigError("coefficient file must start with the header n,lambda_re,lambda_im");
    DirichletCoeffs d;
    d.provenance = "file";
    d.lambda.push_back(0);
    long expect = 1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string a, b, c;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c))
            throw ConfigError("bad coefficient row: " + line);
        long n = std::stol(a);
        if (n != expect) throw ConfigError("coefficient rows must be n = 1, 2, ... in order");
        d.lambda.emplace_back(std::stold(b), std::stold(c));
        ++expect;
    }
    d.N = expect - 1;
    if (d.N < 1) throw ConfigError("empty coefficient file");
    if (std::abs(d.lambda[1] - complex_t(1)) > 1e-12L) throw ConfigError("lambda(1) must be 1");
    return d;
}

std::vector<std::pair<long, long>> multiplicativity_failures(const DirichletCoeffs& c, int pairs, unsigned seed) {
    std::vector<std::pair<long, long>> bad;
    if (c.N < 6) return bad;
    std::mt19937_64 rng(seed);
    const long lim = static_cast<long>(std::sqrt(static_cast<double>(c.N)));
    std::uniform_int_distribution<long> pick(2, std::max(2L, lim));
    int done = 0;
    for (int tries = 0; done < pairs && tries < pairs * 100; ++tries) {
        long m = pick(rng), n = pick(rng);
        if (std::gcd(m, n) != 1 || m * n > c.N) continue;
        ++done;
        bool ok;
        if (!c.tau.empty()) {
            ok = c.tau[static_cast<std::size_t>(m * n)] == c.tau[static_cast<std::size_t>(m)] * c.tau[static_cast<std::size_t>(n)];
        } else {
            complex_t prod = c[m] * c[n];
            ok = std::abs(c[m * n] - prod) <= 1e-9L * std::max<real_t>(1, std::abs(prod));
        }
        if (!ok) bad.push_back({m, n});
    }
    return bad;
}

// ---------------------------------------------------------------------------

VoronoiContext::VoronoiContext(const TestFunction& w, long k, real_t dual_tol) : w_(w), k_(k) {
    if (k < 2) throw ConfigError("weight must be >= 2");
    RealPlaceParams p{{DS2Block{k - 1, 0}}};
    md_ = std::make_unique<MellinDual>(p, w, dual_tol);
}

const DirichletCoeffs& VoronoiContext::coeffs(long N) {
    if (coeffs_.N < N) {
        if (external_)
            throw CoeffRangeExceeded("coefficient file stops at " + std::to_string(coeffs_.N) + ", need " +
                                     std::to_string(N));
        if (k_ != 12) throw ConfigError("exact coefficients exist only for weight 12 (Delta)");
        coeffs_ = tau_coefficients(std::max(N, 2 * coeffs_.N));
    }
    return coeffs_;
}

void VoronoiContext::set_coefficients(DirichletCoeffs c) {
    coeffs_ = std::move(c);
    external_ = true;
}

std::pair<complex_t, complex_t> VoronoiContext::dual_pair(real_t y, real_t* err) {
    auto it = cache_.find(y);
    if (it == cache_.end()) {
        real_t e = 0;
        auto [i0, i1] = md_->parity_parts(y, &e);
        if (e > 1e-6L) throw ToleranceNotMet("dual function", e);
        it = cache_.emplace(y, std::make_pair(std::make_pair((i0 + i1) / 2.0L, (i0 - i1) / 2.0L), e)).first;
    }
    if (err) *err = it->second.second;
    return it->second.first;
}

complex_t lhs_theta(const VoronoiJob& job, VoronoiContext& ctx) {
    if (job.c < 1 || std::gcd(job.a, job.c) != 1) throw ConfigError("zeta = a/c needs c >= 1 and gcd(a,c) = 1");
    const long need = ceil_support(job.w);
    if (job.N > 0 && job.N < need) throw TruncationTooSmall("N must be at least " + std::to_string(need));
    const long N = job.N > 0 ? job.N : need;
    const DirichletCoeffs& co = ctx.coeffs(N);
    complex_t s = 0;
    for (long n = 1; n <= N; ++n) {
        const real_t scale = 1 / std::sqrt(static_cast<real_t>(n));
        for (int sg : {1, -1}) {
            real_t wv = job.w(sg * static_cast<real_t>(n));
            if (wv == 0) continue;
            // ψ(αζ) = e(−αa/c) for α ∈ ℤ
            long r = ((sg * n % job.c) * (job.a % job.c)) % job.c;
            complex_t ph = e_phase(-static_cast<real_t>(r) / static_cast<real_t>(job.c));
            s += ph * co[n] * scale * wv;
        }
    }
    return s;
}

RhsResult rhs_theta(const VoronoiJob& job, VoronoiContext& ctx, real_t abs_tol) {
    if (job.c < 1 || std::gcd(job.a, job.c) != 1) throw ConfigError("zeta = a/c needs c >= 1 and gcd(a,c) = 1");
    if (job.k != ctx.weight()) throw ConfigError("job weight differs from the context");
    RhsResult res;
    const mpq_class zeta(job.a, job.c);
    const std::vector<long> ps = prime_factors(job.c);

    // ramified places: support detection by descending shells
    struct Place {
        long p;
        SatakeParams sp;
        long vmin;
        std::map<std::pair<long, mpz_class>, complex_t> cache;
    };
    std::vector<Place> places;
    mpq_class D = 1;
    for (long p : ps) {
        const DirichletCoeffs& co = ctx.coeffs(p);
        if (co.tau.empty())
            throw ConfigError("ramified places need exact Satake data; file coefficients support c = 1 only");
        Place pl{p, delta_satake(p, co.tau[static_cast<std::size_t>(p)]), 0, {}};
        PlaceDiagnostics diag;
        diag.p = p;
        int empty = 0;
        long lowest = 0;
        for (long m = 0; empty < 2; --m) {
            ShellValues sh = ramified_shell_gl2(pl.sp, zeta, m, job.weyl);
            if (sh.vanishes()) {
                ++empty;
                diag.empty_shells.push_back(m);
            } else {
                empty = 0;
                lowest = m;
            }
            if (m < -64) throw DepthExceeded("support detection did not terminate");
        }
        pl.vmin = lowest;
        diag.min_valuation = lowest;
        res.places.push_back(diag);
        D *= pow_q(p, -lowest);
        places.push_back(std::move(pl));
    }
    const long Dz = mpz_class(D.get_num()).get_si();

    auto local = [&](Place& pl, const mpq_class& alpha) -> complex_t {
        const long p = pl.p;
        const long m = vp(alpha, p);
        if (m < pl.vmin) return 0;
        const long kexp = std::max(0L, vp(zeta, p) - m);
        mpq_class unit = alpha / pow_q(p, m);
        mpz_class mod;
        mpz_ui_pow_ui(mod.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(kexp));
        mpz_class r = 0;
        if (kexp > 0) {
            mpz_class inv;
            mpz_class den = unit.get_den();
            mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
            r = mpz_class(unit.get_num()) * inv;
            mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
        } else {
            r = 1;  // the factor depends on the valuation alone
        }
        auto key = std::make_pair(m, r);
        auto it = pl.cache.find(key);
        if (it != pl.cache.end()) return it->second;
        complex_t v = ramified_transform_gl2(pl.sp, zeta, pow_q(p, m) * mpq_class(r), job.weyl).to_complex();
        pl.cache.emplace(key, v);
        return v;
    };

    const real_t ymin = ctx.test_function().abs_min();
    const real_t y_start = 4 / ymin;
    long block_end = 1;
    real_t block_abs = 0;
    const long n_cap = static_cast<long>(std::ceil(1e4L * static_cast<real_t>(Dz)));
    for (long n = 1;; ++n) {
        if (n > n_cap) throw TailNotConverged("rhs tail above tolerance at |alpha| = 1e4");
        const DirichletCoeffs& co = ctx.coeffs(n);
        long nprime = n;
        for (long p : ps)
            while (nprime % p == 0) nprime /= p;
        const complex_t unram = co[nprime] / std::sqrt(static_cast<real_t>(nprime));
        const real_t y = static_cast<real_t>(n) / static_cast<real_t>(Dz);
        real_t derr = 0;
        auto [wp, wm] = job.route == Route::mellin ? ctx.dual_pair(y, &derr) : std::pair<complex_t, complex_t>{};
        if (job.route == Route::convolution) {
            RealPlaceParams pp{{DS2Block{job.k - 1, 0}}};
            auto rp = hankel_convolution_route(pp, 2, job.w, y, abs_tol / 10);
            auto rm = hankel_convolution_route(pp, 2, job.w, -y, abs_tol / 10);
            wp = rp.value;
            wm = rm.value;
            derr = std::max(rp.achieved_tol, rm.achieved_tol);
        }
        for (int sg : {1, -1}) {
            const complex_t wv = sg > 0 ? wp : wm;
            mpq_class alpha(sg * n, Dz);
            alpha.canonicalize();
            complex_t f = unram;
            for (auto& pl : places) f *= local(pl, alpha);
            const complex_t term = f * wv;
            res.value += term;
            res.dual_error += std::abs(f) * derr;
            block_abs += std::abs(term);
        }
        ++res.terms;
        res.alpha_max = y;
        if (n == block_end) {
            // blocks [n0, 2n0) once past the transition region
            if (y > y_start && block_abs < abs_tol / 10) {
                res.tail_estimate = block_abs;
                break;
            }
            block_abs = 0;
            block_end = 2 * n;
        }
    }
    return res;
}

VoronoiReport voronoi_residual(const VoronoiJob& job, VoronoiContext& ctx) {
    VoronoiReport r;
    r.lhs = lhs_theta(job, ctx);
    const long need = ceil_support(job.w);
    r.lhs_terms = job.N > 0 ? job.N : need;
    const real_t scale = std::max<real_t>(std::abs(r.lhs), 1e-30L);
    r.rhs_detail = rhs_theta(job, ctx, job.tol * scale);
    r.rhs = r.rhs_detail.value;
    r.abs_residual = std::abs(r.lhs - r.rhs);
    r.rel_residual = r.abs_residual / std::max({std::abs(r.lhs), std::abs(r.rhs), 1e-30L});
    if (job.c > 1 && job.route == Route::mellin) {
        VoronoiJob alt = job;
        alt.weyl = job.weyl == WeylConvention::det_one ? WeylConvention::swap : WeylConvention::det_one;
        try {
            r.rhs_alternate = rhs_theta(alt, ctx, job.tol * scale).value;
            r.has_alternate = true;
            r.rel_residual_alternate =
                std::abs(r.lhs - r.rhs_alternate) / std::max({std::abs(r.lhs), std::abs(r.rhs_alternate), 1e-30L});
        } catch (const TailNotConverged&) {
        }
    }
    return r;
}

}  // namespace rv
