#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

#include "rv/common.hpp"

namespace rv {

// a + b√d with rationals a, b. d = 1 stands for plain rationals (b is then folded into a).
class QF {
public:
    QF() : a_(0), b_(0), d_(1) {}
    QF(long v) : a_(v), b_(0), d_(1) {}
    QF(mpq_class a) : a_(std::move(a)), b_(0), d_(1) { a_.canonicalize(); }
    QF(mpq_class a, mpq_class b, long d);

    const mpq_class& a() const { return a_; }
    const mpq_class& b() const { return b_; }
    long d() const { return d_; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    QF conj() const;
    QF inverse() const;  // throws Singular on 0
    complex_t to_complex() const;
    std::string str() const;

    friend QF operator+(const QF& x, const QF& y);
    friend QF operator-(const QF& x, const QF& y);
    friend QF operator*(const QF& x, const QF& y);
    friend QF operator/(const QF& x, const QF& y) { return x * y.inverse(); }
    friend QF operator-(const QF& x);
    friend bool operator==(const QF& x, const QF& y);
    QF& operator+=(const QF& y) { return *this = *this + y; }
    QF& operator*=(const QF& y) { return *this = *this * y; }

private:
    void normalize();
    mpq_class a_, b_;
    long d_;
};

QF qf_pow(QF x, long e);

// c0 + c1·√r with c0, c1 ∈ Q(√d); r is a positive integer (here always the residue field size q).
struct Alg {
    QF c0, c1;
    long r = 1;

    Alg() = default;
    Alg(QF v) : c0(std::move(v)) {}
    Alg(QF v0, QF v1, long rr) : c0(std::move(v0)), c1(std::move(v1)), r(rr) {}

    bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
    complex_t to_complex() const;
    std::string str() const;

    friend Alg operator+(const Alg& x, const Alg& y);
    friend Alg operator-(const Alg& x, const Alg& y);
    friend Alg operator*(const Alg& x, const Alg& y);
    friend bool operator==(const Alg& x, const Alg& y);
};

// r^{e/2} for integer e.
Alg sqrt_power(long r, long e);

// Finite sums Σ c_φ e(φ), phases φ ∈ [0,1) rational, coefficients in Alg.
// normalize() reduces to a canonical basis of Q(ζ_N) when every phase has a denominator
// that is a power of a single prime; that is the only case the p-adic code produces.
class ExactValue {
public:
    ExactValue() = default;
    ExactValue(Alg c) { add(mpq_class(0), std::move(c)); }

    void add(mpq_class phase, Alg c);
    const std::map<mpq_class, Alg>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    complex_t to_complex() const;
    std::string str() const;
    void normalize();

    friend ExactValue operator+(const ExactValue& x, const ExactValue& y);
    friend ExactValue operator-(const ExactValue& x, const ExactValue& y);
    friend ExactValue operator*(const ExactValue& x, const ExactValue& y);
    friend bool operator==(const ExactValue& x, const ExactValue& y);
    ExactValue& operator+=(const ExactValue& y) { return *this = *this + y; }

private:
    std::map<mpq_class, Alg> terms_;
};

// e(phase) as an exact value.
ExactValue root_of_unity(const mpq_class& phase);

// p-adic helpers on rationals
long vp(const mpq_class& x, long p);  // LONG_MAX for 0
long vp(const mpz_class& x, long p);
// {x}_p ∈ [0,1) with x − {x}_p ∈ ℤ_(p)
mpq_class frac_p(const mpq_class& x, long p);
// exp(−2πi{x}_p) as a phase in [0,1)
mpq_class psi_p_phase(const mpq_class& x, long p);
mpq_class phase_mod1(const mpq_class& x);
mpq_class parse_rational(const std::string& s);  // "a/b" or "a"

}  // namespace rv
