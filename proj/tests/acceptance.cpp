// Acceptance checks through the C API. Usage: acceptance <criterion 1..10>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nk/nk_c.h"

namespace {

const double kPi = 3.141592653589793;

struct Failed {
    std::string what;
};

void ok(nk_status s, const char* where) {
    if (s != NK_OK) throw Failed{std::string(where) + ": " + nk_status_name(s) + " (" + nk_last_error() + ")"};
}

struct Params {
    nk_params* p = nullptr;
    Params(double e, double eps = 0.0, int n = 0, double mu = 1.0, double lambda = 1.0) {
        ok(nk_params_new(mu, lambda, e, eps, n, &p), "params");
    }
    ~Params() { nk_params_free(p); }
    Params(const Params&) = delete;
    Params& operator=(const Params&) = delete;
};

struct Trajectory {
    nk_trajectory* t = nullptr;
    ~Trajectory() { nk_trajectory_free(t); }
};

struct Result {
    bool pass = true;
    std::ostringstream detail;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

// 1: orbit on the ellipse and its period
void kepler_orbit(Result& r) {
    Params P(0.5);
    const double e = 0.5;
    double xy[2];
    ok(nk_kepler_ellipse_point(P.p, 0.0, xy), "ellipse point");
    const double start[3] = {xy[0], xy[1], 0};
    Trajectory tr;
    ok(nk_integrate_ode(P.p, start, 2, 3 * 2 * kPi, 1e-3, 1e-3, 1, 1, &tr.t), "ode");
    double worst = 0;
    for (size_t i = 0; i < nk_trajectory_size(tr.t); ++i) {
        double uv[2];
        int has = 0;
        ok(nk_trajectory_uv(tr.t, i, uv, &has), "uv");
        r.require(has == 1, "u,v missing");
        if (has) worst = std::max(worst, std::abs(uv[0] - e));
    }
    double period = 0;
    ok(nk_measured_period(P.p, 1e-3, 3, &period), "period");
    r.detail << " max|u-e|=" << fmt(worst) << " period_err=" << fmt(std::abs(period - 2 * kPi));
    r.require(worst < 1e-8, "|u-e| < 1e-8");
    r.require(std::abs(period - 2 * kPi) < 1e-6, "period within 1e-6");
}

// 2: stability integral equals -2 pi
void stability_integral(Result& r) {
    double worst_cf = 0, worst_fd = 0;
    for (double e : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        Params P(e);
        double s[2];
        ok(nk_stability_integral(P.p, 1e-3, s), "stability");
        worst_cf = std::max(worst_cf, std::abs(s[0] + 2 * kPi));
        worst_fd = std::max(worst_fd, std::abs(s[1] + 2 * kPi));
    }
    r.detail << " closed_form_err=" << fmt(worst_cf) << " fd_err=" << fmt(worst_fd);
    r.require(worst_cf < 1e-8, "closed form within 1e-8");
    r.require(worst_fd < 1e-3, "finite differences within 1e-3");
}

// 3: density peaks on the ellipse at (16/e^2)^(lambda/eps^2)
void density_peak(Result& r) {
    double worst_grad = 0, worst_val = 0;
    struct Case {
        double e, eps, lambda;
    };
    for (Case c : {Case{0.5, 1.0, 1.0}, Case{0.5, 0.5, 1.0}, Case{0.3, 0.7, 1.0}, Case{0.8, 1.0, 1.5}}) {
        Params P(c.e, c.eps, 0, 1.0, c.lambda);
        const double h = 1e-5;
        for (int k = 0; k < 12; ++k) {
            const double v = 0.1 + 2 * kPi * k / 12.0;
            double lp, lm, vp, vm, l0;
            ok(nk_log_density_limit_uv(P.p, c.e + h, v, &lp), "log density");
            ok(nk_log_density_limit_uv(P.p, c.e - h, v, &lm), "log density");
            ok(nk_log_density_limit_uv(P.p, c.e, v + h, &vp), "log density");
            ok(nk_log_density_limit_uv(P.p, c.e, v - h, &vm), "log density");
            ok(nk_log_density_limit_uv(P.p, c.e, v, &l0), "log density");
            // derivative of exp(2R) divided by exp(2R)
            worst_grad = std::max({worst_grad, std::abs(lp - lm) / (2 * h), std::abs(vp - vm) / (2 * h)});
            const double want = std::pow(16 / (c.e * c.e), c.lambda / (c.eps * c.eps));
            worst_val = std::max(worst_val, std::abs(std::exp(l0) - want) / want);
        }
    }
    Params P(0.5, 1.0);
    double l0;
    ok(nk_log_density_limit_uv(P.p, 0.5, 1.0, &l0), "log density");
    r.detail << " scaled_grad=" << fmt(worst_grad) << " value_rel_err=" << fmt(worst_val)
             << " value(e=0.5,eps=1)=" << std::exp(l0);
    r.require(worst_grad < 1e-6, "scaled gradient < 1e-6");
    r.require(worst_val < 1e-12, "on-ellipse value");
}

// 4: two routes to alpha, beta; divergence and speed
void cross_representation(Result& r) {
    Params P(0.5);
    const double e = 0.5, sigma_lo = -4 * e / (1 + e);
    std::mt19937_64 g(2024);
    std::uniform_real_distribution<double> ux(-3, 2), uy(-2.5, 2.5);
    int tested = 0;
    double ab_err = 0, div_err = 0, speed_err = 0;
    while (tested < 1000) {
        const double x = ux(g), y = uy(g);
        if (std::hypot(x, y) < 0.1) continue;
        if (std::abs(y) < 0.05 && x > sigma_lo - 0.05 && x < 0.05) continue;
        double uv[2], ab1[2], ab2[2];
        const double q[3] = {x, y, 0};
        ok(nk_from_cartesian(P.p, x, y, uv), "from_cartesian");
        ok(nk_alpha_beta_uv(P.p, uv[0], uv[1], ab1), "alpha_beta_uv");
        ok(nk_alpha_beta_cartesian(P.p, q, ab2), "alpha_beta_cartesian");
        ab_err = std::max({ab_err, std::abs(ab1[0] - ab2[0]), std::abs(ab1[1] - ab2[1])});

        const double h = 1e-5;
        double bxp[2], bxm[2], byp[2], bym[2], b[2], div, sp;
        ok(nk_drift2(P.p, x + h, y, bxp), "drift");
        ok(nk_drift2(P.p, x - h, y, bxm), "drift");
        ok(nk_drift2(P.p, x, y + h, byp), "drift");
        ok(nk_drift2(P.p, x, y - h, bym), "drift");
        ok(nk_drift2(P.p, x, y, b), "drift");
        ok(nk_divergence(P.p, x, y, &div), "divergence");
        ok(nk_speed_sq(P.p, x, y, &sp), "speed");
        const double fd = (bxp[0] - bxm[0]) / (2 * h) + (byp[1] - bym[1]) / (2 * h);
        div_err = std::max(div_err, std::abs(fd - div) / std::max(1.0, std::abs(div)));
        const double b2 = b[0] * b[0] + b[1] * b[1];
        speed_err = std::max(speed_err, std::abs(sp - b2) / std::max(1.0, b2));
        ++tested;
    }
    r.detail << " points=" << tested << " alpha_beta_err=" << fmt(ab_err) << " div_err=" << fmt(div_err)
             << " speed_err=" << fmt(speed_err);
    r.require(ab_err < 1e-10, "alpha,beta agree to 1e-10");
    r.require(div_err < 1e-5, "divergence vs finite differences 1e-5");
    r.require(speed_err < 1e-10, "speed vs |b|^2 1e-10");
}

// 5: Laguerre ratio limit and the Riccati equation at n = 20
void laguerre_limit(Result& r) {
    double prev = 1e300;
    bool decreasing = true;
    r.detail << " ratio_err:";
    for (int n : {10, 20, 40, 80}) {
        double out[2];
        ok(nk_laguerre_ratio(n, -0.5 * n, 0.0, out), "laguerre ratio");
        const double err = std::hypot(out[0] + 1.0, out[1]);
        r.detail << " n" << n << "=" << fmt(err);
        decreasing = decreasing && err < prev;
        prev = err;
    }
    r.require(decreasing, "ratio error decreasing in n");

    using cd = std::complex<double>;
    const int n = 20;
    Params P(0.5, std::sqrt(1.0 / n), n);
    double energy = 0;
    ok(nk_params_get(P.p, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, &energy), "params");
    const double eps2 = 1.0 / n;
    std::mt19937_64 g(99);
    std::uniform_real_distribution<double> ux(-3, 2), uy(-2, 2), uz(-1, 1);
    const auto field = [&](const double* q) {
        double o[6];
        ok(nk_z_field_exact(P.p, q, o), "z field");
        return std::vector<cd>{{o[0], o[1]}, {o[2], o[3]}, {o[4], o[5]}};
    };
    int tested = 0;
    double worst = 0;
    while (tested < 100) {
        const double q[3] = {ux(g), uy(g), uz(g)};
        const double rr = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2]);
        if (rr < 0.2) continue;
        double nv[2];
        ok(nk_nu(P.p, q, nv), "nu");
        // nodes lie where nu is real in [0, 4]
        const cd v(nv[0], nv[1]);
        const double dnode = v.real() < 0 ? std::abs(v) : v.real() > 4 ? std::abs(v - 4.0) : std::abs(v.imag());
        if (dnode < 0.05) continue;
        const auto Z = field(q);
        const double h = 1e-5;
        cd div = 0;
        for (int k = 0; k < 3; ++k) {
            double a[3] = {q[0], q[1], q[2]}, b[3] = {q[0], q[1], q[2]};
            a[k] += h;
            b[k] -= h;
            div += (field(a)[k] - field(b)[k]) / (2 * h);
        }
        const cd z2 = Z[0] * Z[0] + Z[1] * Z[1] + Z[2] * Z[2];
        const cd res = -cd(0, eps2 / 2) * div + 0.5 * z2 - 1.0 / rr - energy;
        worst = std::max(worst, std::abs(res));
        ++tested;
    }
    r.detail << " riccati_max=" << fmt(worst);
    r.require(worst < 1e-6, "Riccati residual < 1e-6");
}

// 6: the critical eccentricity 1/sqrt(2)
void critical_eccentricity(Result& r) {
    const double ec = 1 / std::sqrt(2.0);
    double te;
    ok(nk_tilde_e(ec, &te), "tilde_e");
    r.detail << " tilde_e(ec)-ec=" << fmt(te - ec);
    r.require(std::abs(te - ec) < 1e-10, "tilde_e(1/sqrt2) = 1/sqrt2");
    int sign_bad = 0;
    for (int k = 0; k < 50; ++k) {
        const double e = 0.01 + 0.98 * k / 49.0;
        if (std::abs(e - ec) < 1e-9) continue;
        ok(nk_tilde_e(e, &te), "tilde_e");
        if ((e < ec) != (te > e)) ++sign_bad;
    }
    r.detail << " sign_violations=" << sign_bad;
    r.require(sign_bad == 0, "tilde_e - e changes sign at 1/sqrt2");
    double worst = 0;
    int cross_bad = 0;
    for (int which = 0; which < 3; ++which) {
        double ecc;
        ok(nk_curve_crossing_eccentricity(which, &ecc), "crossing");
        worst = std::max(worst, std::abs(ecc - ec));
        for (double e : {0.3, 0.5, 0.65, 0.75, 0.85, 0.95}) {
            Params P(e);
            double umin;
            ok(nk_symmetry_curve_min(P.p, which, &umin), "curve min");
            if ((umin < e) != (e > ec)) ++cross_bad;
        }
    }
    r.detail << " crossing_err=" << fmt(worst) << " crossing_violations=" << cross_bad;
    r.require(worst < 1e-6, "curves meet u=e at 1/sqrt2");
    r.require(cross_bad == 0, "curves cross u=e iff e > 1/sqrt2");
}

// 7: Lyapunov certificate on the annulus grid
void lyapunov(Result& r) {
    Params P(0.5);
    double c[6];
    ok(nk_lyapunov_certificate(P.p, 0.1, 0.1, 100, 100, c), "certificate");
    r.detail << " min_V_off=" << fmt(c[0]) << " max_Vdot_off=" << fmt(c[1]) << " max|V|_on=" << fmt(c[2])
             << " max|Vdot|_on=" << fmt(c[3]) << " off_points=" << c[4] << " excluded=" << c[5];
    r.require(c[0] > 0, "V > 0 off the ellipse");
    r.require(c[1] < 0, "grad V . b < 0 off the ellipse");
    r.require(c[2] < 1e-8 && c[3] < 1e-8, "both vanish on u=e");
}

// 8: pathwise coupling bound
void coupling(Result& r) {
    Params P(0.5);
    nk_sim_config cfg;
    nk_sim_config_default(&cfg);
    cfg.t_max = 20.0;
    cfg.ensemble_size = 50;
    const double eps[3] = {0.2, 0.1, 0.05};
    double out[15];
    int holds[3];
    ok(nk_coupling_convergence(P.p, 2.0, 0.0, eps, 3, &cfg, 10 * cfg.dt, out, holds), "coupling");
    for (int i = 0; i < 3; ++i) {
        r.detail << " eps=" << out[5 * i] << ":retained=" << out[5 * i + 1] << ",max_ratio=" << out[5 * i + 3]
                 << ",mean_sup=" << fmt(out[5 * i + 4]);
        r.require(holds[i] == 1 && out[5 * i + 1] > 0, "bound on every retained path at eps=" + fmt(eps[i]));
    }
}

// 9: deterministic convergence to the ellipse from a ring of radius 2a
void ring_convergence(Result& r) {
    Params P(0.5);
    double a = 0;
    ok(nk_params_get(P.p, nullptr, nullptr, nullptr, nullptr, nullptr, &a, nullptr), "params");
    double latest = 0;
    int reached = 0;
    for (int k = 0; k < 8; ++k) {
        const double th = 2 * kPi * k / 8;
        const double start[3] = {2 * a * std::cos(th), 2 * a * std::sin(th), 0};
        Trajectory tr;
        ok(nk_integrate_ode(P.p, start, 2, 100.0, 1e-3, 1e-3, 10, 0, &tr.t), "ode");
        double hit = -1;
        for (size_t i = 0; i < nk_trajectory_size(tr.t); ++i) {
            double t, q[3], d, kr;
            ok(nk_trajectory_sample(tr.t, i, &t, q), "sample");
            ok(nk_distance_to_ellipse(P.p, q[0], q[1], &d), "distance");
            if (d >= 1e-3) continue;
            ok(nk_kepler_residual(P.p, q[0], q[1], &kr), "kepler residual");
            if (std::abs(kr) < 1e-3) {
                hit = t;
                break;
            }
        }
        if (hit >= 0 && hit < 100) {
            ++reached;
            latest = std::max(latest, hit);
        } else {
            r.detail << " start" << k << "=not_reached";
        }
    }
    r.detail << " reached=" << reached << "/8 latest_t=" << latest;
    r.require(reached == 8, "all ring starts converge before t=100");
}

// 10: z-instability at e=0.9 and its absence at e=0.5
void z_blip(Result& r) {
    const auto run = [&](double e, int& every, int& decreasing, int& maxima_total) {
        Params P(e);
        double xy[2];
        ok(nk_to_cartesian(P.p, e, kPi / 2, xy), "start");
        const double start[3] = {xy[0], xy[1], 0.05};
        nk_sim_config cfg;
        nk_sim_config_default(&cfg);
        cfg.dimension = 3;
        cfg.record_every = 10;
        nk_blip* b = nullptr;
        ok(nk_z_blip(P.p, start, &cfg, 4, &b), "blip");
        double fz, late;
        int maxima[4];
        double peaks[4];
        size_t count = 0;
        const nk_status s1 = nk_blip_summary(b, &every, &decreasing, &fz, &late);
        const nk_status s2 = nk_blip_periods(b, maxima, peaks, 4, &count);
        nk_blip_free(b);
        ok(s1, "blip summary");
        ok(s2, "blip periods");
        maxima_total = 0;
        r.detail << " e=" << e << ":maxima=";
        for (size_t i = 0; i < std::min<size_t>(count, 4); ++i) {
            maxima_total += maxima[i];
            r.detail << maxima[i] << (i + 1 < count ? "," : "");
        }
        r.detail << " every=" << every << " decreasing=" << decreasing;
    };
    int every, decreasing, total;
    run(0.9, every, decreasing, total);
    r.require(every == 1, "a |z| maximum in every period at e=0.9");
    r.require(decreasing == 1, "period peaks decrease at e=0.9");
    run(0.5, every, decreasing, total);
    r.require(every == 0, "no period-synchronized blip at e=0.5");
}

struct Criterion {
    const char* name;
    double limit_s;
    std::function<void(Result&)> body;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all = {
        {"kepler orbit and period", 10, kepler_orbit},
        {"stability integral", 5, stability_integral},
        {"invariant density peak", 1, density_peak},
        {"cross-representation consistency", 10, cross_representation},
        {"laguerre limit and riccati residual", 10, laguerre_limit},
        {"critical eccentricity", 5, critical_eccentricity},
        {"lyapunov certificate", 30, lyapunov},
        {"pathwise coupling bound", 60, coupling},
        {"convergence to the ellipse", 60, ring_convergence},
        {"z-instability", 60, z_blip},
    };
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
    if (which.empty())
        for (int i = 1; i <= static_cast<int>(all.size()); ++i) which.push_back(i);

    int failures = 0;
    for (int k : which) {
        if (k < 1 || k > static_cast<int>(all.size())) {
            std::fprintf(stderr, "unknown criterion %d\n", k);
            return 2;
        }
        const Criterion& c = all[k - 1];
        Result r;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(r);
        } catch (const Failed& f) {
            r.pass = false;
            r.detail << " [error: " << f.what << "]";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.require(secs < c.limit_s, "runtime");
        std::printf("criterion %d: %s %s:%s runtime=%.2fs limit=%.0fs\n", k, r.pass ? "PASS" : "FAIL", c.name,
                    r.detail.str().c_str(), secs, c.limit_s);
        if (!r.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
