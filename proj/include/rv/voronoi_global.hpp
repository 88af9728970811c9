#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "rv/hankel.hpp"
#include "rv/padic_local.hpp"

namespace rv {

// λ(1..N), Hecke normalized. tau is filled only for the exact source.
struct DirichletCoeffs {
    long N = 0;
    std::vector<complex_t> lambda;  // index 0 unused
    std::vector<mpz_class> tau;     // index 0 unused; empty for file input
    std::string provenance;         // "tau" or "file"

    complex_t operator[](long n) const;
};

// τ(n), n ≤ N, from q·(Σ(−1)^k(2k+1)q^{k(k+1)/2})^8.
DirichletCoeffs tau_coefficients(long N);

// CSV with header n,lambda_re,lambda_im; rows n = 1..N in order.
DirichletCoeffs read_coefficients(const std::string& path);

// Indices (m, n) of coprime pairs with mn ≤ N where λ(mn) ≠ λ(m)λ(n); exact for the tau
// source, to 1e-9 relative for file input. Pairs are drawn from a fixed-seed generator.
std::vector<std::pair<long, long>> multiplicativity_failures(const DirichletCoeffs& c, int pairs,
                                                             unsigned seed = 1);

struct VoronoiJob {
    long k = 12;
    long a = 1, c = 1;
    TestFunction w = make_bump(1, 40);
    long N = 0;           // LHS truncation; 0 picks ⌈sup supp w⌉
    real_t tol = 1e-6L;   // relative, for the identity
    Route route = Route::mellin;
    WeylConvention weyl = WeylConvention::det_one;
};

struct PlaceDiagnostics {
    long p = 0;
    long min_valuation = 0;  // lowest v_p(α) with a nonzero local factor
    std::vector<long> empty_shells;
};

struct RhsResult {
    complex_t value;
    real_t tail_estimate = 0;
    real_t dual_error = 0;  // accumulated achieved tolerance of w̃ times weights
    long terms = 0;
    real_t alpha_max = 0;
    std::vector<PlaceDiagnostics> places;
};

// Shared state: coefficients and the w̃ evaluator are reused across jobs with equal w.
class VoronoiContext {
public:
    explicit VoronoiContext(const TestFunction& w, long k = 12, real_t dual_tol = 1e-11L);
    long weight() const { return k_; }
    const TestFunction& test_function() const { return w_; }
    const DirichletCoeffs& coeffs(long N);
    // Use externally supplied coefficients instead of τ; coeffs(N) then fails past their end.
    void set_coefficients(DirichletCoeffs c);
    MellinDual& dual() { return *md_; }
    // (w̃(y), w̃(−y)) with error
    std::pair<complex_t, complex_t> dual_pair(real_t y, real_t* err);

private:
    TestFunction w_;
    long k_;
    std::unique_ptr<MellinDual> md_;
    DirichletCoeffs coeffs_;
    bool external_ = false;
    std::map<real_t, std::pair<std::pair<complex_t, complex_t>, real_t>> cache_;
};

complex_t lhs_theta(const VoronoiJob& job, VoronoiContext& ctx);
RhsResult rhs_theta(const VoronoiJob& job, VoronoiContext& ctx, real_t abs_tol);

struct VoronoiReport {
    complex_t lhs, rhs;
    real_t abs_residual = 0, rel_residual = 0;
    long lhs_terms = 0;
    RhsResult rhs_detail;
    // Same RHS with the other Weyl convention (c > 1 only; w̃ values are reused).
    bool has_alternate = false;
    complex_t rhs_alternate;
    real_t rel_residual_alternate = 0;
};
VoronoiReport voronoi_residual(const VoronoiJob& job, VoronoiContext& ctx);

}  // namespace rv
