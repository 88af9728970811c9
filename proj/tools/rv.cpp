// rv: command-line front end. One job per process; reports are written atomically.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rv/arch_local.hpp"
#include "rv/bessel_kernel.hpp"
#include "rv/config.hpp"
#include "rv/gj_kernels.hpp"
#include "rv/hankel.hpp"
#include "rv/padic_local.hpp"
#include "rv/special.hpp"
#include "rv/voronoi_global.hpp"

using namespace rv;
using ojson = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct ThresholdFailed : Error {
    using Error::Error;
};

ojson cx(complex_t z) { return ojson::array({static_cast<double>(z.real()), static_cast<double>(z.imag())}); }

// value with its error estimate and where it came from
ojson tagged(complex_t z, real_t err, const char* provenance) {
    ojson o;
    o["value"] = cx(z);
    o["error"] = static_cast<double>(err);
    o["provenance"] = provenance;
    return o;
}
ojson tagged(real_t v, real_t err, const char* provenance) {
    ojson o;
    o["value"] = static_cast<double>(v);
    o["error"] = static_cast<double>(err);
    o["provenance"] = provenance;
    return o;
}

std::string csv_num(real_t v) { return fmt(v); }

void need_positive(real_t tol, const char* what) {
    if (!(tol > 0)) throw ConfigError(std::string(what) + " must be > 0");
}

RealPlaceParams real_params(const std::string& path) {
    PlaceParams pp = load_params(path);
    if (!std::holds_alternative<RealPlaceParams>(pp)) throw ConfigError("this subcommand needs a real place");
    return std::get<RealPlaceParams>(pp);
}

TestFunction support_bump(const std::string& support) {
    auto [a, b] = parse_interval(support);
    if (!(a > 0 && b > a)) throw BadSupport("support must satisfy 0 < a < b");
    return make_bump(a, b);
}

struct Job {
    std::string name;
    ojson inputs;
    ojson results;
    std::string out;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    void emit_report() {
        ojson r;
        r["subcommand"] = name;
        r["version"] = kVersion;
        r["precision_digits"] = working_precision();
        r["inputs"] = inputs;
        r["results"] = results;
        r["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const std::string body = r.dump(2) + "\n";
        if (out.empty())
            std::cout << body;
        else
            write_atomic(out, body);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Voronoi summation and Hankel transform toolkit"};
    app.require_subcommand(1);
    int threads = 1;
    unsigned seed = 1;
    app.add_option("--threads", threads, "worker pool cap (the numerics run on one thread)")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "seed for randomized selections");

    std::string params, s_str, grid, out, support = "1,40", x_list, s_grid, route = "mellin", zeta = "1/1",
                alpha_list, alpha_idx = "1", variant = "tate", phi = "gaussian", coeff_file, weyl = "det-one";
    long twist = 0, rank = 1, k = 12, q = 2, order = 30, p = 2, N = 0, steps = 81;
    real_t tol = 1e-8L, threshold = 1e-6L, t0 = 14.134725L, window = 2;
    bool lseries = false, kl3 = false;
    std::string tau_p;

    auto* g = app.add_subcommand("gamma", "archimedean gamma factor, one CSV row");
    g->add_option("--params", params)->required();
    g->add_option("--twist", twist);
    g->add_option("--s", s_str)->required();

    auto* kt = app.add_subcommand("kernel-table", "kernel k = b|x|^{1/2} on a grid, CSV + JSON sidecar");
    kt->add_option("--params", params)->required();
    kt->add_option("--grid", grid, "a:b:n over x (sign taken from x)")->required();
    kt->add_option("--tol", tol);
    kt->add_option("--out", out)->required();

    auto* hk = app.add_subcommand("hankel", "dual test function w~");
    hk->add_option("--params", params)->required();
    hk->add_option("--rank", rank)->required();
    hk->add_option("--support", support);
    hk->add_option("--x", x_list)->required();
    hk->add_option("--tol", tol);
    hk->add_option("--route", route)->check(CLI::IsMember({"mellin", "convolution", "both"}));
    hk->add_option("--threshold", threshold, "route agreement threshold for --route both");
    hk->add_option("--out", out)->required();

    auto* fe = app.add_subcommand("fe-check", "local functional equation residuals");
    fe->add_option("--params", params)->required();
    fe->add_option("--rank", rank)->required();
    fe->add_option("--support", support);
    fe->add_option("--s-grid", s_grid)->required();
    fe->add_option("--tol", tol);
    fe->add_option("--threshold", threshold);
    fe->add_option("--out", out)->required();

    auto* pa = app.add_subcommand("padic", "exact p-adic checks");
    pa->add_flag("--check-lseries", lseries);
    pa->add_flag("--kloosterman3", kl3);
    pa->add_option("--q", q);
    pa->add_option("--alpha", alpha_list, "Satake numerators (rationals), or use --tau-p");
    pa->add_option("--tau-p", tau_p, "Delta's data at q from tau(q)");
    pa->add_option("--order", order);
    pa->add_option("--p", p);
    pa->add_option("--zeta", zeta);
    pa->add_option("--alpha-rational", alpha_list, "rational Satake parameters");
    pa->add_option("--index", alpha_idx, "dual index alpha for the Kloosterman integral");
    pa->add_option("--out", out);

    auto* vv = app.add_subcommand("voronoi-verify", "both sides of the Voronoi identity for Delta");
    vv->add_option("--k", k);
    vv->add_option("--zeta", zeta);
    vv->add_option("--support", support);
    vv->add_option("--tol", tol);
    vv->add_option("--N", N, "LHS truncation (default: end of support)");
    vv->add_option("--route", route)->check(CLI::IsMember({"mellin", "convolution"}));
    vv->add_option("--weyl", weyl)->check(CLI::IsMember({"det-one", "swap"}));
    vv->add_option("--coeffs", coeff_file, "CSV n,lambda_re,lambda_im (c = 1 only)");
    vv->add_option("--out", out);

    auto* gj = app.add_subcommand("gj-scan", "kernel pairing defects over an s-grid");
    gj->add_option("--variant", variant)->check(CLI::IsMember({"tate", "cuspidal"}));
    gj->add_option("--s-grid", s_grid)->required();
    gj->add_option("--phi", phi, "gaussian, gaussian:a or bump:a,b");
    gj->add_option("--tol", tol);
    gj->add_option("--out", out)->required();

    auto* cz = app.add_subcommand("clozel-test", "tate pairing along Re s = 1/2 around t0");
    cz->add_option("--t0", t0);
    cz->add_option("--window", window);
    cz->add_option("--steps", steps);
    cz->add_option("--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    Job job;
    job.name = app.get_subcommands().front()->get_name();
    job.out = out;
    job.inputs["threads"] = threads;
    job.inputs["seed"] = seed;

    try {
        if (job.name == "gamma") {
            PlaceParams pp = load_params(params);
            const complex_t s = parse_complex(s_str);
            complex_t v = std::visit([&](const auto& pr) { return gamma_factor(pr, CharTwist{twist}, s); }, pp);
            std::cout << "s_re,s_im,gamma_re,gamma_im\n"
                      << csv_num(s.real()) << ',' << csv_num(s.imag()) << ',' << csv_num(v.real()) << ','
                      << csv_num(v.imag()) << '\n';
            return 0;
        }

        if (job.name == "kernel-table") {
            need_positive(tol, "--tol");
            RealPlaceParams p = real_params(params);
            KernelTable t = kernel_table(p, parse_grid(grid), tol);
            t.params_json = params_to_json(p).dump();
            save_kernel_table(t, out);
            std::cerr << "achieved_tol " << csv_num(t.achieved_tol) << (t.partial ? " (partial)" : "") << '\n';
            return t.partial ? 3 : 0;
        }

        if (job.name == "hankel") {
            need_positive(tol, "--tol");
            RealPlaceParams p = real_params(params);
            if (p.rank() != rank) throw ConfigError("--rank differs from the params rank");
            TestFunction w = support_bump(support);
            std::ostringstream os;
            os << "x,route,re,im,achieved_tol\n";
            bool ok = true;
            for (real_t x : parse_real_list(x_list)) {
                DualFunctionResult m, c;
                if (route != "convolution") {
                    m = hankel_mellin_route(p, static_cast<int>(rank), w, x, tol);
                    os << csv_num(x) << ",mellin," << csv_num(m.value.real()) << ',' << csv_num(m.value.imag()) << ','
                       << csv_num(m.achieved_tol) << '\n';
                }
                if (route != "mellin") {
                    c = hankel_convolution_route(p, static_cast<int>(rank), w, x, tol);
                    os << csv_num(x) << ",convolution," << csv_num(c.value.real()) << ','
                       << csv_num(c.value.imag()) << ',' << csv_num(c.achieved_tol) << '\n';
                }
                if (route == "both") {
                    real_t rel = std::abs(m.value - c.value) / std::max({std::abs(m.value), std::abs(c.value), 1e-30L});
                    if (rel > threshold) ok = false;
                }
            }
            write_atomic(out, os.str());
            if (!ok) throw ThresholdFailed("routes disagree beyond the threshold");
            return 0;
        }

        if (job.name == "fe-check") {
            need_positive(tol, "--tol");
            need_positive(threshold, "--threshold");
            RealPlaceParams p = real_params(params);
            if (p.rank() != rank) throw ConfigError("--rank differs from the params rank");
            auto rows = local_fe_residual(p, static_cast<int>(rank), support_bump(support), parse_s_grid(s_grid), tol);
            std::ostringstream os;
            os << "s_re,s_im,delta,lhs_re,lhs_im,rhs_re,rhs_im,residual\n";
            bool ok = true;
            for (const auto& r : rows) {
                os << csv_num(r.s.real()) << ',' << csv_num(r.s.imag()) << ',' << r.delta << ','
                   << csv_num(r.lhs.real()) << ',' << csv_num(r.lhs.imag()) << ',' << csv_num(r.rhs.real()) << ','
                   << csv_num(r.rhs.imag()) << ',' << csv_num(r.residual) << '\n';
                if (!(r.residual < threshold)) ok = false;
            }
            write_atomic(out, os.str());
            if (!ok) throw ThresholdFailed("functional equation residual above threshold");
            return 0;
        }

        if (job.name == "padic") {
            if (lseries == kl3) throw ConfigError("pick one of --check-lseries and --kloosterman3");
            if (lseries) {
                SatakeParams sp;
                if (!tau_p.empty()) {
                    sp = delta_satake(q, mpz_class(tau_p));
                } else {
                    sp.q = q;
                    std::istringstream is(alpha_list);
                    std::string tok;
                    while (std::getline(is, tok, ',')) sp.alpha.emplace_back(parse_rational(tok));
                }
                validate(sp);
                LSeriesCheck r = local_l_series_check(sp, order);
                std::cout << "ok," << (r.ok ? "true" : "false") << '\n';
                for (std::size_t m = 0; m < r.series.coeffs.size(); ++m)
                    std::cout << "h_" << m << ',' << r.series.coeffs[m].str() << '\n';
                if (!r.ok) throw ThresholdFailed("local L-series identity failed");
                return 0;
            }
            SatakeParams sp;
            sp.q = p;
            std::istringstream is(alpha_list);
            std::string tok;
            while (std::getline(is, tok, ',')) sp.alpha.emplace_back(parse_rational(tok));
            if (sp.rank() != 3) throw ConfigError("--kloosterman3 needs three rational Satake parameters");
            validate(sp);
            KloostermanResult r = kloosterman_gl3(parse_rational(alpha_idx), parse_rational(zeta), sp);
            const complex_t v = r.value.to_complex();
            std::cout << "exact," << r.value.str() << '\n'
                      << "float," << csv_num(v.real()) << ',' << csv_num(v.imag()) << '\n'
                      << "vanishing_shell," << r.vanishing_shell << '\n';
            return 0;
        }

        if (job.name == "voronoi-verify") {
            need_positive(tol, "--tol");
            const auto slash = zeta.find('/');
            mpq_class z = parse_rational(zeta);
            if (slash != std::string::npos && mpz_class(zeta.substr(slash + 1)) != z.get_den())
                throw ConfigError("--zeta a/c needs gcd(a, c) = 1 and c >= 1");
            if (!z.get_den().fits_slong_p() || !z.get_num().fits_slong_p()) throw ConfigError("zeta out of range");
            VoronoiJob vj;
            vj.k = k;
            vj.a = z.get_num().get_si();
            vj.c = z.get_den().get_si();
            vj.w = support_bump(support);
            vj.N = N;
            vj.tol = tol;
            vj.route = route == "mellin" ? Route::mellin : Route::convolution;
            vj.weyl = weyl == "swap" ? WeylConvention::swap : WeylConvention::det_one;
            VoronoiContext ctx(vj.w, k);
            std::string coeff_source = "tau";
            if (!coeff_file.empty()) {
                ctx.set_coefficients(read_coefficients(coeff_file));
                coeff_source = "file";
            }
            auto bad = multiplicativity_failures(ctx.coeffs(static_cast<long>(std::ceil(vj.w.abs_max()))), 50, seed);
            if (!bad.empty() && coeff_source == "tau") throw Error("tau coefficients fail multiplicativity");
            VoronoiReport r = voronoi_residual(vj, ctx);
            job.inputs["k"] = k;
            job.inputs["zeta"] = zeta;
            job.inputs["support"] = support;
            job.inputs["tol"] = static_cast<double>(tol);
            job.inputs["route"] = route;
            job.inputs["weyl"] = weyl;
            job.inputs["coefficients"] = coeff_source;
            auto& R = job.results;
            R["lhs"] = tagged(r.lhs, std::numeric_limits<real_t>::epsilon() * r.lhs_terms, "direct sum");
            R["rhs"] = tagged(r.rhs, r.rhs_detail.tail_estimate + r.rhs_detail.dual_error, "dual sum");
            R["abs_residual"] = static_cast<double>(r.abs_residual);
            R["rel_residual"] = static_cast<double>(r.rel_residual);
            if (r.has_alternate) {
                R["alternate_weyl"]["rhs"] = cx(r.rhs_alternate);
                R["alternate_weyl"]["rel_residual"] = static_cast<double>(r.rel_residual_alternate);
            }
            R["truncation"]["lhs_terms"] = r.lhs_terms;
            R["truncation"]["rhs_terms"] = r.rhs_detail.terms;
            R["truncation"]["alpha_max"] = static_cast<double>(r.rhs_detail.alpha_max);
            R["truncation"]["tail_estimate"] = static_cast<double>(r.rhs_detail.tail_estimate);
            R["truncation"]["dual_error"] = static_cast<double>(r.rhs_detail.dual_error);
            R["multiplicativity_warnings"] = bad.size();
            auto places = ojson::array();
            for (const auto& pl : r.rhs_detail.places) {
                ojson o;
                o["p"] = pl.p;
                o["min_valuation"] = pl.min_valuation;
                o["empty_shells"] = pl.empty_shells;
                places.push_back(o);
            }
            R["places"] = places;
            R["threshold_met"] = r.rel_residual < tol;
            job.emit_report();
            if (!(r.rel_residual < tol)) throw ThresholdFailed("relative residual above --tol");
            return 0;
        }

        if (job.name == "gj-scan") {
            need_positive(tol, "--tol");
            auto ss = parse_s_grid(s_grid);
            GaussianPhi gphi;
            TestFunction bump = make_bump(1, 40);
            if (phi.rfind("gaussian", 0) == 0) {
                if (variant != "tate") throw ConfigError("the cuspidal variant pairs against bump:a,b");
                if (phi.size() > 8) {
                    if (phi[8] != ':') throw ConfigError("--phi gaussian or gaussian:a");
                    gphi.a = parse_real_list(phi.substr(9)).at(0);
                }
            } else if (phi.rfind("bump:", 0) == 0) {
                if (variant != "cuspidal") throw ConfigError("the tate variant pairs against gaussian");
                bump = support_bump(phi.substr(5));
            } else {
                throw ConfigError("--phi gaussian|gaussian:a|bump:a,b");
            }
            std::unique_ptr<VoronoiContext> ctx;
            if (variant == "cuspidal") ctx = std::make_unique<VoronoiContext>(bump, 12);
            auto rows = zero_criterion_pairing(variant == "tate" ? KernelVariant::tate : KernelVariant::cuspidal, ss,
                                               bump, gphi, ctx.get(), tol);
            std::ostringstream os;
            os << "s_re,s_im,defect,reference_abs\n";
            for (const auto& r : rows)
                os << csv_num(r.s.real()) << ',' << csv_num(r.s.imag()) << ',' << csv_num(r.defect) << ','
                   << csv_num(std::abs(r.reference)) << '\n';
            write_atomic(out, os.str());
            return 0;
        }

        if (job.name == "clozel-test") {
            if (steps < 3) throw ConfigError("--steps must be >= 3");
            need_positive(window, "--window");
            std::ostringstream os;
            os << "t,pairing_abs,z_abs\n";
            real_t best = std::numeric_limits<real_t>::infinity(), best_t = t0, edge = 0;
            for (long i = 0; i < steps; ++i) {
                const real_t t = t0 - window / 2 + window * static_cast<real_t>(i) / static_cast<real_t>(steps - 1);
                PairingResult r = tate_pairing(complex_t(0.5L, t), GaussianPhi{});
                const real_t v = std::abs(r.value);
                os << csv_num(t) << ',' << csv_num(v) << ',' << csv_num(std::abs(hardy_z(t))) << '\n';
                if (v < best) {
                    best = v;
                    best_t = t;
                }
                if (i == 0 || i == steps - 1) edge = std::max(edge, v);
            }
            // independent location of the zero
            real_t zero = std::numeric_limits<real_t>::quiet_NaN();
            try {
                zero = hardy_z_zero(best_t - window / (steps - 1), best_t + window / (steps - 1), 1e-9L);
            } catch (const Error&) {
            }
            const real_t at_zero = std::isnan(zero) ? best : std::abs(tate_pairing(complex_t(0.5L, zero), GaussianPhi{}).value);
            const real_t ratio = edge / std::max(at_zero, 1e-300L);
            if (!out.empty()) write_atomic(out, os.str());
            std::cout << "min_t," << csv_num(best_t) << "\nzero_t," << csv_num(zero) << "\npairing_at_zero,"
                      << csv_num(at_zero) << "\nedge_max," << csv_num(edge) << "\nratio," << csv_num(ratio) << '\n';
            if (!(ratio >= 100)) throw ThresholdFailed("no dip of two orders of magnitude in the window");
            return 0;
        }
        throw ConfigError("unknown subcommand " + job.name);
    } catch (const ThresholdFailed& e) {
        std::cerr << "threshold failed: " << e.what() << '\n';
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const BadSupport& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "computation error: " << e.what() << '\n';
        return 3;
    }
}
