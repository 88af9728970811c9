#include "rv/exact.hpp"

#include <climits>
#include <cmath>
#include <sstream>
#include <vector>

namespace rv {

namespace {

long merge_radicand(long x, bool xused, long y, bool yused) {
    if (!xused) return y;
    if (!yused) return x;
    if (x != y) throw ConfigError("arithmetic across different quadratic fields");
    return x;
}

}  // namespace

QF::QF(mpq_class a, mpq_class b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    normalize();
}

void QF::normalize() {
    a_.canonicalize();
    b_.canonicalize();
    if (d_ == 1) {
        a_ += b_;
        b_ = 0;
    }
    if (d_ == 0) b_ = 0;
    if (b_ == 0) d_ = 1;
}

QF QF::conj() const { return QF(a_, -b_, d_); }

QF QF::inverse() const {
    mpq_class nrm = a_ * a_ - b_ * b_ * d_;
    if (nrm == 0) throw Singular("inverse of zero");
    return QF(a_ / nrm, -b_ / nrm, d_);
}

namespace {
// long double value of a rational; exact division when both parts fit a long
real_t to_ld(const mpq_class& q) {
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p())
        return static_cast<real_t>(q.get_num().get_si()) / static_cast<real_t>(q.get_den().get_si());
    return static_cast<real_t>(q.get_d());
}
}  // namespace

complex_t QF::to_complex() const {
    real_t a = to_ld(a_);
    if (b_ == 0) return {a, 0};
    real_t b = to_ld(b_);
    if (d_ > 0) return {a + b * std::sqrt(static_cast<real_t>(d_)), 0};
    return {a, b * std::sqrt(static_cast<real_t>(-d_))};
}

std::string QF::str() const {
    std::ostringstream os;
    os << a_.get_str();
    if (b_ != 0) os << (b_ > 0 ? "+" : "") << b_.get_str() << "*sqrt(" << d_ << ")";
    return os.str();
}

QF operator+(const QF& x, const QF& y) {
    long d = merge_radicand(x.d_, x.b_ != 0, y.d_, y.b_ != 0);
    return QF(x.a_ + y.a_, x.b_ + y.b_, d);
}

QF operator-(const QF& x, const QF& y) { return x + (-y); }

QF operator-(const QF& x) { return QF(-x.a_, -x.b_, x.d_); }

QF operator*(const QF& x, const QF& y) {
    long d = merge_radicand(x.d_, x.b_ != 0, y.d_, y.b_ != 0);
    return QF(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
}

bool operator==(const QF& x, const QF& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.d_ == y.d_);
}

QF qf_pow(QF x, long e) {
    if (e < 0) {
        x = x.inverse();
        e = -e;
    }
    QF r(1);
    while (e) {
        if (e & 1) r = r * x;
        x = x * x;
        e >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------------------

complex_t Alg::to_complex() const {
    return c0.to_complex() + c1.to_complex() * std::sqrt(static_cast<real_t>(r));
}

std::string Alg::str() const {
    if (c1.is_zero()) return c0.str();
    return "(" + c0.str() + ")+(" + c1.str() + ")*sqrt(" + std::to_string(r) + ")";
}

Alg operator+(const Alg& x, const Alg& y) {
    long r = merge_radicand(x.r, !x.c1.is_zero(), y.r, !y.c1.is_zero());
    return {x.c0 + y.c0, x.c1 + y.c1, r};
}

Alg operator-(const Alg& x, const Alg& y) {
    return x + Alg{-y.c0, -y.c1, y.r};
}

Alg operator*(const Alg& x, const Alg& y) {
    long r = merge_radicand(x.r, !x.c1.is_zero(), y.r, !y.c1.is_zero());
    return {x.c0 * y.c0 + x.c1 * y.c1 * QF(r), x.c0 * y.c1 + x.c1 * y.c0, r};
}

bool operator==(const Alg& x, const Alg& y) {
    return x.c0 == y.c0 && x.c1 == y.c1 && (x.c1.is_zero() || x.r == y.r);
}

Alg sqrt_power(long r, long e) {
    long h = e >= 0 ? e / 2 : -((-e + 1) / 2);  // floor(e/2)
    mpz_class rr(r), num = 1, den = 1;
    if (h >= 0)
        mpz_pow_ui(num.get_mpz_t(), rr.get_mpz_t(), static_cast<unsigned long>(h));
    else
        mpz_pow_ui(den.get_mpz_t(), rr.get_mpz_t(), static_cast<unsigned long>(-h));
    QF base(mpq_class(num, den));
    if (e - 2 * h == 0) return Alg(base);
    return Alg(QF(0), base, r);
}

// ---------------------------------------------------------------------------

mpq_class phase_mod1(const mpq_class& x) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    mpq_class r = x - mpq_class(fl);
    r.canonicalize();
    return r;
}

void ExactValue::add(mpq_class phase, Alg c) {
    if (c.is_zero()) return;
    phase = phase_mod1(phase);
    auto it = terms_.find(phase);
    if (it == terms_.end()) {
        terms_.emplace(phase, std::move(c));
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

complex_t ExactValue::to_complex() const {
    complex_t s = 0;
    for (const auto& [ph, c] : terms_) {
        real_t a = kTwoPi * to_ld(ph);
        s += c.to_complex() * complex_t(std::cos(a), std::sin(a));
    }
    return s;
}

std::string ExactValue::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [ph, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "[" << c.str() << "]";
        if (ph != 0) os << "*e(" << ph.get_str() << ")";
    }
    return os.str();
}

void ExactValue::normalize() {
    // common prime-power denominator
    long p = 0;
    mpz_class N = 1;
    for (const auto& [ph, c] : terms_) {
        mpz_class d = ph.get_den();
        if (d == 1) continue;
        mpz_class q = d;
        long f = 2;
        while (mpz_divisible_ui_p(q.get_mpz_t(), static_cast<unsigned long>(f)) == 0) ++f;
        while (mpz_divisible_ui_p(q.get_mpz_t(), static_cast<unsigned long>(f)))
            mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(f));
        if (q != 1) return;
        if (p == 0) p = f;
        if (p != f) return;
        if (d > N) N = d;
    }
    if (p == 0) return;
    mpz_class M = N / p;
    mpz_class top = M * (p - 1);
    std::map<mpq_class, Alg> old;
    old.swap(terms_);
    for (auto& [ph, c] : old) {
        mpz_class k = ph.get_num() * (N / ph.get_den());
        if (k < top) {
            add(mpq_class(k, N), c);
            continue;
        }
        // x^{(p−1)M + r} = −Σ_{i<p−1} x^{iM + r}
        mpz_class r = k - top;
        Alg neg = Alg() - c;
        for (long i = 0; i + 1 < p; ++i) add(mpq_class(mpz_class(r + M * i), N), neg);
    }
}

ExactValue operator+(const ExactValue& x, const ExactValue& y) {
    ExactValue r = x;
    for (const auto& [ph, c] : y.terms_) r.add(ph, c);
    return r;
}

ExactValue operator-(const ExactValue& x, const ExactValue& y) {
    ExactValue r = x;
    for (const auto& [ph, c] : y.terms_) r.add(ph, Alg() - c);
    return r;
}

ExactValue operator*(const ExactValue& x, const ExactValue& y) {
    ExactValue r;
    for (const auto& [p1, c1] : x.terms_)
        for (const auto& [p2, c2] : y.terms_) r.add(p1 + p2, c1 * c2);
    return r;
}

bool operator==(const ExactValue& x, const ExactValue& y) {
    ExactValue d = x - y;
    d.normalize();
    return d.is_zero();
}

ExactValue root_of_unity(const mpq_class& phase) {
    ExactValue v;
    v.add(phase, Alg(QF(1)));
    return v;
}

// ---------------------------------------------------------------------------

long vp(const mpz_class& x, long p) {
    if (x == 0) return LONG_MAX;
    mpz_class t = x;
    long v = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p))) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
        ++v;
    }
    return v;
}

long vp(const mpq_class& x, long p) {
    if (x == 0) return LONG_MAX;
    return vp(mpz_class(x.get_num()), p) - vp(mpz_class(x.get_den()), p);
}

mpq_class frac_p(const mpq_class& x, long p) {
    if (x == 0) return 0;
    mpz_class den = x.get_den();
    long k = vp(den, p);
    if (k <= 0) return 0;
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
    mpz_class rest = den / pk, inv, c;
    mpz_invert(inv.get_mpz_t(), rest.get_mpz_t(), pk.get_mpz_t());
    c = mpz_class(x.get_num()) * inv;
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), pk.get_mpz_t());
    mpq_class r(c, pk);
    r.canonicalize();
    return r;
}

mpq_class psi_p_phase(const mpq_class& x, long p) { return phase_mod1(-frac_p(x, p)); }

mpq_class parse_rational(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw ConfigError("not a rational: " + s);
    if (q.get_den() == 0) throw ConfigError("zero denominator: " + s);
    q.canonicalize();
    return q;
}

}  // namespace rv
