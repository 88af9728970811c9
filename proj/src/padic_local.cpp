#include "rv/padic_local.hpp"

#include <climits>
#include <functional>

namespace rv {

void validate(const SatakeParams& sp) {
    if (sp.q < 2) throw ConfigError("Satake data needs q >= 2");
    if (sp.alpha.empty()) throw ConfigError("Satake data needs at least one parameter");
    for (const auto& a : sp.alpha)
        if (a.is_zero()) throw ConfigError("Satake parameters must be nonzero");
}

SatakeParams delta_satake(long p, const mpz_class& tau_p) {
    // β = (τ ± √D)/2, D = τ² − 4p^{11}
    mpz_class p11;
    mpz_ui_pow_ui(p11.get_mpz_t(), static_cast<unsigned long>(p), 11);
    mpz_class D = tau_p * tau_p - 4 * p11;
    if (!D.fits_slong_p()) throw ConfigError("discriminant out of range");
    SatakeParams sp;
    sp.q = p;
    sp.scale = 11;
    mpq_class half(tau_p, 2);
    half.canonicalize();
    sp.alpha = {QF(half, mpq_class(1, 2), D.get_si()), QF(half, mpq_class(-1, 2), D.get_si())};
    return sp;
}

QF complete_homogeneous(long m, const std::vector<QF>& alpha) {
    if (m < 0) return QF(0);
    if (m == 0) return QF(1);
    // Σ over exponent vectors (k_1..k_n), Σk = m, of ∏ α_i^{k_i}
    QF sum(0);
    const std::size_t n = alpha.size();
    std::function<void(std::size_t, long, QF)> rec = [&](std::size_t i, long left, QF prod) {
        if (i + 1 == n) {
            sum += prod * qf_pow(alpha[i], left);
            return;
        }
        QF pw(1);
        for (long k = 0; k <= left; ++k) {
            rec(i + 1, left - k, prod * pw);
            pw = pw * alpha[i];
        }
    };
    if (n == 0) return QF(0);
    rec(0, m, QF(1));
    return sum;
}

complex_t complete_homogeneous(long m, const std::vector<complex_t>& alpha) {
    if (m < 0 || alpha.empty()) return m == 0 ? 1 : 0;
    // h_m(α_1..α_n) = Σ_k α_1^k h_{m−k}(α_2..α_n), tabulated
    std::vector<complex_t> h(static_cast<std::size_t>(m + 1), 0);
    h[0] = 1;
    for (complex_t a : alpha)
        for (long j = 1; j <= m; ++j) h[static_cast<std::size_t>(j)] += a * h[static_cast<std::size_t>(j - 1)];
    return h[static_cast<std::size_t>(m)];
}

Alg whittaker_diag(const SatakeParams& sp, long m) {
    if (m < 0) return Alg();
    const long n = sp.rank();
    return sqrt_power(sp.q, -m * (n - 1) - sp.scale * m) * Alg(complete_homogeneous(m, sp.alpha));
}

complex_t whittaker_diag(long q, const std::vector<complex_t>& alpha, long m) {
    if (m < 0) return 0;
    const real_t n = static_cast<real_t>(alpha.size());
    return std::pow(static_cast<real_t>(q), -static_cast<real_t>(m) * (n - 1) / 2) *
           complete_homogeneous(m, alpha);
}

Alg basic_function_value(const SatakeParams& sp, long m) {
    if (m < 0) return Alg();
    return sqrt_power(sp.q, -m - sp.scale * m) * Alg(complete_homogeneous(m, sp.alpha));
}

complex_t basic_function_value(long q, const std::vector<complex_t>& alpha, long m) {
    if (m < 0) return 0;
    return std::pow(static_cast<real_t>(q), -static_cast<real_t>(m) / 2) * complete_homogeneous(m, alpha);
}

bool l_series_identity(const std::vector<QF>& coeffs, const std::vector<QF>& alpha) {
    // ∏(1 − α_i Y) as a polynomial
    std::vector<QF> poly{QF(1)};
    for (const auto& a : alpha) {
        std::vector<QF> next(poly.size() + 1, QF(0));
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += poly[i];
            next[i + 1] += -(poly[i] * a);
        }
        poly = std::move(next);
    }
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        QF c(0);
        for (std::size_t i = 0; i < poly.size() && i <= k; ++i) c += poly[i] * coeffs[k - i];
        if (!(c == QF(k == 0 ? 1 : 0))) return false;
    }
    return true;
}

LSeriesCheck local_l_series_check(const SatakeParams& sp, long M) {
    validate(sp);
    if (M < 1) throw ConfigError("series order must be >= 1");
    LSeriesCheck r;
    r.series.scale = sp.scale;
    for (long m = 0; m <= M; ++m) r.series.coeffs.push_back(complete_homogeneous(m, sp.alpha));
    r.ok = l_series_identity(r.series.coeffs, sp.alpha);
    return r;
}

// ---------------------------------------------------------------------------
// matrices

PAdicMat::PAdicMat(long p_, int n_) : p(p_), n(n_), e(static_cast<std::size_t>(n_ * n_), mpq_class(0)) {}

PAdicMat::PAdicMat(long p_, int n_, std::initializer_list<mpq_class> v) : p(p_), n(n_), e(v) {
    if (e.size() != static_cast<std::size_t>(n * n)) throw ConfigError("matrix entry count");
    for (auto& x : e) x.canonicalize();
}

PAdicMat PAdicMat::identity(long p, int n) {
    PAdicMat m(p, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

PAdicMat PAdicMat::diag(long p, const std::vector<mpq_class>& d) {
    PAdicMat m(p, static_cast<int>(d.size()));
    for (int i = 0; i < m.n; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return m;
}

PAdicMat operator*(const PAdicMat& a, const PAdicMat& b) {
    PAdicMat c(a.p, a.n);
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) {
            mpq_class s = 0;
            for (int k = 0; k < a.n; ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

mpq_class PAdicMat::det() const {
    if (n == 1) return e[0];
    if (n == 2) return e[0] * e[3] - e[1] * e[2];
    if (n == 3)
        return (*this)(0, 0) * ((*this)(1, 1) * (*this)(2, 2) - (*this)(1, 2) * (*this)(2, 1)) -
               (*this)(0, 1) * ((*this)(1, 0) * (*this)(2, 2) - (*this)(1, 2) * (*this)(2, 0)) +
               (*this)(0, 2) * ((*this)(1, 0) * (*this)(2, 1) - (*this)(1, 1) * (*this)(2, 0));
    throw ConfigError("only sizes 1..3 are supported");
}

PAdicMat PAdicMat::inverse() const {
    PAdicMat a = *this, inv = identity(p, n);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (a(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw Singular("matrix is singular");
        if (piv != c)
            for (int j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(c, j));
                std::swap(inv(piv, j), inv(c, j));
            }
        mpq_class d = a(c, c);
        for (int j = 0; j < n; ++j) {
            a(c, j) /= d;
            inv(c, j) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || a(r, c) == 0) continue;
            mpq_class f = a(r, c);
            for (int j = 0; j < n; ++j) {
                a(r, j) -= f * a(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

PAdicMat PAdicMat::transpose() const {
    PAdicMat t(p, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t(i, j) = (*this)(j, i);
    return t;
}

bool PAdicMat::integral() const {
    for (const auto& x : e)
        if (x != 0 && vp(x, p) < 0) return false;
    return true;
}

bool PAdicMat::in_K() const {
    mpq_class d = det();
    return integral() && d != 0 && vp(d, p) == 0;
}

// ---------------------------------------------------------------------------
// Iwasawa decomposition: right column operations in GL_n(ℤ_p) bring g to upper
// triangular form, processing rows from the bottom. Pivot: least valuation in the
// row, ties to the leftmost column.

Iwasawa iwasawa(const PAdicMat& g) {
    const int n = g.n;
    const long p = g.p;
    if (g.det() == 0) throw Singular("iwasawa of a singular matrix");
    PAdicMat B = g, E = PAdicMat::identity(p, n);
    auto col_swap = [&](int i, int j) {
        for (int r = 0; r < n; ++r) {
            std::swap(B(r, i), B(r, j));
            std::swap(E(r, i), E(r, j));
        }
    };
    auto col_axpy = [&](int dst, int src, const mpq_class& f) {
        for (int r = 0; r < n; ++r) {
            B(r, dst) -= f * B(r, src);
            E(r, dst) -= f * E(r, src);
        }
    };
    auto col_scale = [&](int c, const mpq_class& f) {
        for (int r = 0; r < n; ++r) {
            B(r, c) *= f;
            E(r, c) *= f;
        }
    };
    std::vector<long> v(static_cast<std::size_t>(n));
    for (int row = n - 1; row >= 0; --row) {
        int piv = -1;
        long best = LONG_MAX;
        for (int j = 0; j <= row; ++j) {
            if (B(row, j) == 0) continue;
            long vj = vp(B(row, j), p);
            if (vj < best) {
                best = vj;
                piv = j;
            }
        }
        if (piv < 0) throw Singular("iwasawa: zero row");
        if (piv != row) col_swap(piv, row);
        for (int j = 0; j < row; ++j)
            if (B(row, j) != 0) col_axpy(j, row, B(row, j) / B(row, row));
        // make the diagonal exactly p^v
        mpq_class pv = 1;
        {
            mpz_class pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(best < 0 ? -best : best));
            pv = best < 0 ? mpq_class(1, pw) : mpq_class(pw);
            pv.canonicalize();
        }
        col_scale(row, pv / B(row, row));
        v[static_cast<std::size_t>(row)] = best;
    }
    Iwasawa r;
    std::vector<mpq_class> d;
    for (int i = 0; i < n; ++i) d.push_back(B(i, i));
    r.t = PAdicMat::diag(p, d);
    r.u = B * r.t.inverse();
    r.k = E.inverse();
    return r;
}

Iwasawa iwasawa_gl2(const PAdicMat& g) {
    if (g.n != 2) throw ConfigError("iwasawa_gl2 needs a 2x2 matrix");
    Iwasawa r = iwasawa(g);
    const long mu = vp(r.t(0, 0), g.p) - vp(r.t(1, 1), g.p);
    // u₁₂ only matters modulo p^μ ℤ_p: keep p^μ·{u₁₂/p^μ}_p
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(g.p), static_cast<unsigned long>(mu < 0 ? -mu : mu));
    mpq_class pmu = mu < 0 ? mpq_class(1, pw) : mpq_class(pw);
    pmu.canonicalize();
    mpq_class canon = pmu * frac_p(mpq_class(r.u(0, 1) / pmu), g.p);
    canon.canonicalize();
    r.u(0, 1) = canon;
    r.k = r.t.inverse() * r.u.inverse() * g;
    return r;
}

Iwasawa iwasawa_gl3(const PAdicMat& g) {
    if (g.n != 3) throw ConfigError("iwasawa_gl3 needs a 3x3 matrix");
    return iwasawa(g);
}

// ---------------------------------------------------------------------------
// Whittaker values

namespace {

// s_λ(alpha) for any (possibly negative) non-increasing λ, via Jacobi–Trudi after
// shifting by e_n^{λ_n}.
QF schur(const std::vector<QF>& alpha, std::vector<long> lambda) {
    const int n = static_cast<int>(alpha.size());
    const long shift = lambda.back();
    for (auto& l : lambda) l -= shift;
    auto h = [&](long m) { return complete_homogeneous(m, alpha); };
    QF val;
    if (n == 1) {
        val = h(lambda[0]);
    } else if (n == 2) {
        val = h(lambda[0]) * h(lambda[1]) - h(lambda[0] + 1) * h(lambda[1] - 1);
    } else if (n == 3) {
        QF m[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[i][j] = h(lambda[static_cast<std::size_t>(i)] - i + j);
        val = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
              m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
              m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    } else {
        throw ConfigError("Schur values only for rank <= 3");
    }
    if (shift != 0) {
        QF en(1);
        for (const auto& a : alpha) en = en * a;
        val = val * qf_pow(en, shift);
    }
    return val;
}

}  // namespace

Alg whittaker_torus(const SatakeParams& sp, const std::vector<long>& lambda) {
    const long n = sp.rank();
    if (static_cast<long>(lambda.size()) != n) throw ConfigError("torus exponent length");
    for (std::size_t i = 1; i < lambda.size(); ++i)
        if (lambda[i] > lambda[i - 1]) return Alg();
    long e = 0, total = 0;
    for (long i = 0; i < n; ++i) {
        e -= (n - 1 - 2 * i) * lambda[static_cast<std::size_t>(i)];
        total += lambda[static_cast<std::size_t>(i)];
    }
    e -= sp.scale * total;
    return sqrt_power(sp.q, e) * Alg(schur(sp.alpha, lambda));
}

ExactValue whittaker_general(const SatakeParams& sp, const PAdicMat& g) {
    if (g.n != sp.rank()) throw ConfigError("matrix size differs from the rank");
    if (g.p != sp.q) throw ConfigError("matrix prime differs from q");
    Iwasawa iw = g.n == 2 ? iwasawa_gl2(g) : iwasawa(g);
    std::vector<long> lambda;
    for (int i = 0; i < g.n; ++i) lambda.push_back(vp(iw.t(i, i), g.p));
    Alg tv = whittaker_torus(sp, lambda);
    if (tv.is_zero()) return ExactValue();
    mpq_class arg = 0;
    for (int i = 0; i + 1 < g.n; ++i) arg += iw.u(i, i + 1);
    ExactValue r;
    r.add(psi_p_phase(arg, g.p), tv);
    return r;
}

ExactValue whittaker_gl2_general(const SatakeParams& sp, const PAdicMat& g) {
    if (g.n != 2) throw ConfigError("whittaker_gl2_general needs a 2x2 matrix");
    return whittaker_general(sp, g);
}

ExactValue whittaker_gl3(const SatakeParams& sp, const PAdicMat& g) {
    if (g.n != 3) throw ConfigError("whittaker_gl3 needs a 3x3 matrix");
    return whittaker_general(sp, g);
}

// ---------------------------------------------------------------------------

namespace {

void require_trivial_central(const SatakeParams& sp) {
    QF en(1);
    for (const auto& a : sp.alpha) en = en * a;
    // ∏α_i = e_n(alpha)·q^{−n·scale/2}
    Alg w = sqrt_power(sp.q, -sp.rank() * sp.scale) * Alg(en);
    if (!(w == Alg(QF(1)))) throw ConfigError("transform needs trivial central character");
}

}  // namespace

ExactValue ramified_transform_gl2(const SatakeParams& sp, const mpq_class& zeta, const mpq_class& x,
                                  WeylConvention wc) {
    validate(sp);
    if (sp.rank() != 2) throw ConfigError("ramified_transform_gl2 needs rank 2");
    if (x == 0 || zeta == 0) throw ConfigError("x and zeta must be nonzero");
    require_trivial_central(sp);
    const long p = sp.q;
    PAdicMat dx = PAdicMat::diag(p, {x, 1});
    PAdicMat w2(p, 2, {0, 1, wc == WeylConvention::swap ? 1 : -1, 0});
    PAdicMat nz(p, 2, {1, zeta, 0, 1});
    return whittaker_gl2_general(sp, dx * w2 * nz);
}

bool ShellValues::vanishes() const {
    for (const auto& c : classes)
        if (!c.value.is_zero()) return false;
    return true;
}

ShellValues ramified_shell_gl2(const SatakeParams& sp, const mpq_class& zeta, long m, WeylConvention wc) {
    const long p = sp.q;
    ShellValues sh;
    sh.m = m;
    // ψ(x/ζ) sees u modulo p^{v(ζ)−m}
    sh.modulus_exp = std::max(0L, vp(zeta, p) - m);
    mpz_class mod;
    mpz_ui_pow_ui(mod.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(sh.modulus_exp));
    mpz_class pm;
    mpz_ui_pow_ui(pm.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(m < 0 ? -m : m));
    mpq_class pmq = m < 0 ? mpq_class(1, pm) : mpq_class(pm);
    pmq.canonicalize();
    for (mpz_class u = 1; u <= std::max(mod, mpz_class(1)); ++u) {
        if (mod > 1 && mpz_divisible_ui_p(u.get_mpz_t(), static_cast<unsigned long>(p))) continue;
        if (mod == 1 && u > 1) break;
        sh.classes.push_back({u, ramified_transform_gl2(sp, zeta, pmq * mpq_class(u), wc)});
    }
    return sh;
}

ExactValue kloosterman_gl2_literal(const SatakeParams& sp, const mpq_class& alpha, const mpq_class& zeta) {
    validate(sp);
    const long p = sp.q;
    PAdicMat tau = PAdicMat::diag(p, {mpq_class(-alpha / zeta), mpq_class(-zeta)});
    PAdicMat w2(p, 2, {0, 1, 1, 0});
    return whittaker_gl2_general(sp, w2 * tau.inverse().transpose());
}

KloostermanResult kloosterman_gl3(const mpq_class& alpha, const mpq_class& zeta,
                                  const SatakeParams& sp, long shell_depth) {
    validate(sp);
    if (sp.rank() != 3) throw ConfigError("kloosterman_gl3 needs rank 3");
    const long p = sp.q;
    const long vz = vp(zeta, p);
    if (zeta == 0 || vz >= 0) throw ConfigError("kloosterman_gl3 needs |zeta|_p > 1");
    if (alpha == 0) throw ConfigError("alpha must be nonzero");
    if (shell_depth < 0) shell_depth = 2 * (-vz) + 3;

    PAdicMat perm(p, 3, {0, 1, 0, 1, 0, 0, 0, 0, 1});
    PAdicMat tau = perm * PAdicMat::diag(p, {1, mpq_class(-alpha / zeta), mpq_class(-zeta)});
    PAdicMat w3(p, 3, {0, 0, 1, 0, 1, 0, 1, 0, 0});
    auto wt = [&](const mpq_class& y) {
        PAdicMat u = PAdicMat::identity(p, 3);
        u(0, 1) = y;
        return whittaker_gl3(sp, w3 * (tau * u).inverse().transpose());
    };

    KloostermanResult r;
    ExactValue total;
    int zeros = 0;
    for (long j = 0; j <= shell_depth; ++j) {
        ExactValue shell;
        if (j == 0) {
            shell = wt(0);
        } else {
            mpz_class pj;
            mpz_ui_pow_ui(pj.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(j));
            for (mpz_class rr = 1; rr < pj; ++rr) {
                if (mpz_divisible_ui_p(rr.get_mpz_t(), static_cast<unsigned long>(p))) continue;
                mpq_class y(rr, pj);
                // ψ̄(y) = e({y}_p)
                shell += root_of_unity(frac_p(y, p)) * wt(y);
            }
        }
        shell.normalize();
        r.shells.push_back(shell);
        total += shell;
        zeros = shell.is_zero() ? zeros + 1 : 0;
        if (zeros == 2) {
            r.vanishing_shell = j - 1;
            break;
        }
    }
    if (r.vanishing_shell < 0)
        throw DepthExceeded("Kloosterman shells did not vanish by depth " + std::to_string(shell_depth));
    total.normalize();
    mpz_class pz;
    mpz_ui_pow_ui(pz.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(-vz));
    r.value = ExactValue(Alg(QF(mpq_class(pz)))) * total;
    return r;
}

}  // namespace rv
