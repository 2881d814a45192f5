#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "nk/nk_c.h"

namespace {

const double kPi = 3.141592653589793;

struct Params {
    nk_params* p = nullptr;
    Params(double e, double eps = 0.0, int n = 0) { REQUIRE(nk_params_new(1, 1, e, eps, n, &p) == NK_OK); }
    ~Params() { nk_params_free(p); }
};

}  // namespace

TEST_CASE("status codes and last error") {
    nk_params* p = nullptr;
    CHECK(nk_params_new(1, 1, 1.5, 0, 0, &p) == NK_ERR_DOMAIN);
    CHECK(p == nullptr);
    CHECK(std::string(nk_last_error()).find("e must satisfy") != std::string::npos);
    CHECK(nk_params_new(1, 1, 0.5, 0.3, 20, &p) == NK_ERR_INCONSISTENT);
    CHECK(nk_params_new(1, 1, 0.5, 0, 0, nullptr) == NK_ERR_NULL);
    REQUIRE(nk_params_new(1, 1, 0.5, 0, 0, &p) == NK_OK);
    CHECK(std::string(nk_last_error()).empty());
    double out[2];
    CHECK(nk_from_cartesian(p, 0, 0, out) == NK_ERR_DOMAIN);
    CHECK(nk_alpha_beta_uv(p, 1.0, 0.0, out) == NK_ERR_SINGULAR);
    CHECK(nk_from_cartesian(nullptr, 1, 1, out) == NK_ERR_NULL);
    CHECK(nk_from_cartesian(p, 1, 1, nullptr) == NK_ERR_NULL);
    nk_params_free(p);
    nk_params_free(nullptr);
    CHECK(std::string(nk_status_name(NK_ERR_POLE)) == "node proximity");
    CHECK(std::strlen(nk_version()) > 0);
}

TEST_CASE("parameter accessors") {
    nk_params* p = nullptr;
    REQUIRE(nk_params_new(1, 2, 0.5, std::sqrt(2.0 / 8.0), 8, &p) == NK_OK);
    double mu, lambda, e, eps, a, en;
    int n;
    REQUIRE(nk_params_get(p, &mu, &lambda, &e, &eps, &n, &a, &en) == NK_OK);
    CHECK(a == 4.0);
    CHECK(en == -0.125);
    CHECK(n == 8);
    nk_params* q = nullptr;
    REQUIRE(nk_params_with_epsilon(p, 0.3, &q) == NK_OK);
    REQUIRE(nk_params_get(q, nullptr, nullptr, nullptr, &eps, &n, nullptr, nullptr) == NK_OK);
    CHECK(eps == 0.3);
    CHECK(n == 0);
    nk_params_free(q);
    nk_params_free(p);
}

TEST_CASE("geometry and fields through the C surface") {
    Params P(0.5);
    double xy[2], uv[2], ab[2], b[2], six[6];
    REQUIRE(nk_kepler_ellipse_point(P.p, kPi / 2, xy) == NK_OK);
    CHECK(xy[1] == doctest::Approx(0.75));
    REQUIRE(nk_to_cartesian(P.p, 0.5, kPi / 2, xy) == NK_OK);
    CHECK(xy[0] == doctest::Approx(-0.5));
    REQUIRE(nk_from_cartesian(P.p, xy[0], xy[1], uv) == NK_OK);
    CHECK(uv[0] == doctest::Approx(0.5));
    CHECK(uv[1] == doctest::Approx(kPi / 2));
    REQUIRE(nk_alpha_beta_uv(P.p, 0.5, kPi / 2, ab) == NK_OK);
    CHECK(ab[0] == doctest::Approx(0.6));
    CHECK(ab[1] == doctest::Approx(-0.8));
    REQUIRE(nk_drift2(P.p, 0.5, 0, b) == NK_OK);
    CHECK(b[1] == doctest::Approx(std::sqrt(3.0)));
    CHECK(nk_drift2(P.p, -0.5, 0, b) == NK_ERR_DOMAIN);
    REQUIRE(nk_ellipse_family(P.p, 1.0, six) == NK_OK);
    CHECK(six[0] == doctest::Approx(2.0 / 3.0));
    CHECK(six[5] == 1.0);
    double seg[4];
    REQUIRE(nk_singular_segment(P.p, seg) == NK_OK);
    CHECK(seg[0] == doctest::Approx(-4.0 / 3.0));
    double v;
    REQUIRE(nk_divergence(P.p, 0.5, 0, &v) == NK_OK);
    CHECK(v == doctest::Approx(-4.0 / 3.0));
    REQUIRE(nk_speed_sq(P.p, -4.0 / 2.25, 0, &v) == NK_OK);
    CHECK(v == doctest::Approx(0.25));
    REQUIRE(nk_tilde_e(1 / std::sqrt(2.0), &v) == NK_OK);
    CHECK(v == doctest::Approx(1 / std::sqrt(2.0)));
    double s[2];
    REQUIRE(nk_stability_integral(P.p, 1e-3, s) == NK_OK);
    CHECK(s[0] == doctest::Approx(-2 * kPi).epsilon(1e-10));
    int in = 0;
    const double q3[3] = {-0.5, 0, 0};
    REQUIRE(nk_sigma3_contains(P.p, q3, &in) == NK_OK);
    CHECK(in == 1);
    CHECK(nk_f_ratio(P.p, 1.0, &v) == NK_ERR_DOMAIN);
}

TEST_CASE("finite-n state through the C surface") {
    Params P(0.5, std::sqrt(1.0 / 3.0), 3);
    size_t count = 0;
    REQUIRE(nk_nodal_roots(P.p, nullptr, 0, &count) == NK_OK);
    REQUIRE(count == 2);
    std::vector<double> roots(count);
    REQUIRE(nk_nodal_roots(P.p, roots.data(), roots.size(), &count) == NK_OK);
    CHECK(roots[0] == doctest::Approx(2 - std::sqrt(2.0)));
    double r[2];
    REQUIRE(nk_laguerre_ratio(2, 2.0, 0.0, r) == NK_OK);
    CHECK(r[0] == doctest::Approx(1.0));
    CHECK(nk_laguerre_ratio(3, 2 + std::sqrt(2.0), 0.0, r) == NK_ERR_POLE);
    Params none(0.5);
    CHECK(nk_nodal_roots(none.p, nullptr, 0, &count) == NK_ERR_DOMAIN);
}

TEST_CASE("trajectories and events") {
    Params P(0.5);
    nk_trajectory* t = nullptr;
    const double start[3] = {0.5, 0, 0};
    REQUIRE(nk_integrate_ode(P.p, start, 2, 2 * kPi, 1e-3, 1e-3, 1, 1, &t) == NK_OK);
    const size_t n = nk_trajectory_size(t);
    CHECK(n == 6285);
    CHECK(nk_trajectory_dimension(t) == 2);
    double time, q[3], uv[2];
    int has = 0;
    REQUIRE(nk_trajectory_sample(t, n - 1, &time, q) == NK_OK);
    CHECK(time == doctest::Approx(2 * kPi));
    CHECK(q[0] == doctest::Approx(0.5).epsilon(1e-8));
    REQUIRE(nk_trajectory_uv(t, n / 2, uv, &has) == NK_OK);
    CHECK(has == 1);
    CHECK(uv[0] == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(nk_trajectory_sample(t, n, &time, q) == NK_ERR_DOMAIN);
    REQUIRE(nk_trajectory_event_count(t) == 1);
    const char* kind = nullptr;
    REQUIRE(nk_trajectory_event(t, 0, &time, &kind) == NK_OK);
    CHECK(std::string(kind) == "horizon");
    nk_trajectory_free(t);

    const double bad[3] = {0.5, 0, 0.1};
    CHECK(nk_integrate_ode(P.p, bad, 2, 1.0, 1e-3, 1e-3, 1, 0, &t) == NK_ERR_DOMAIN);
    CHECK(nk_integrate_ode(P.p, start, 2, 1.0, 0.0, 1e-3, 1, 0, &t) == NK_ERR_DOMAIN);
}

TEST_CASE("stochastic runs") {
    Params P(0.5, 0.1);
    nk_sim_config c;
    nk_sim_config_default(&c);
    CHECK(c.dt == 1e-3);
    CHECK(c.seed == 42);
    c.t_max = 1.0;
    const double start[3] = {2, 0, 0};
    nk_trajectory *a = nullptr, *b = nullptr;
    REQUIRE(nk_simulate_sde(P.p, start, &c, 0, &a) == NK_OK);
    REQUIRE(nk_simulate_sde(P.p, start, &c, 0, &b) == NK_OK);
    double qa[3], qb[3];
    nk_trajectory_sample(a, nk_trajectory_size(a) - 1, nullptr, qa);
    nk_trajectory_sample(b, nk_trajectory_size(b) - 1, nullptr, qb);
    CHECK(qa[0] == qb[0]);
    CHECK(qa[1] == qb[1]);
    nk_trajectory_free(a);
    nk_trajectory_free(b);

    c.ensemble_size = 8;
    const double hist[4] = {-3, 2, -2.5, 2.5};
    nk_ensemble* e = nullptr;
    REQUIRE(nk_simulate_ensemble(P.p, start, 1, &c, hist, 10, 10, &e) == NK_OK);
    CHECK(nk_ensemble_size(e) == 8);
    std::vector<long> counts(100);
    REQUIRE(nk_ensemble_histogram(e, counts.data(), counts.size()) == NK_OK);
    long tot = 0;
    for (long k : counts) tot += k;
    CHECK(tot == 8 - static_cast<long>(std::lround(nk_ensemble_hit_fraction(e) * 8)));
    CHECK(nk_ensemble_histogram(e, counts.data(), 50) == NK_ERR_DOMAIN);
    int hit = 0;
    double fin[3];
    CHECK(nk_ensemble_final(e, 7, fin, &hit) == NK_OK);
    CHECK(nk_ensemble_final(e, 8, fin, &hit) == NK_ERR_DOMAIN);
    nk_ensemble_free(e);

    double h[3];
    int surv = 0, total = 0;
    REQUIRE(nk_hitting_probability(P.p, start, &c, 0.0, h, &surv, &total) == NK_OK);
    CHECK(h[0] == 1.0);
    c.dt = -1;
    CHECK(nk_simulate_sde(P.p, start, &c, 0, &a) == NK_ERR_CONFIG);
}

TEST_CASE("coupling and blip reports") {
    Params P(0.5, 0.1);
    nk_sim_config c;
    nk_sim_config_default(&c);
    c.t_max = 2.0;
    c.ensemble_size = 4;
    const double eps[2] = {0.1, 0.0};
    double out[10];
    int holds[2];
    REQUIRE(nk_coupling_convergence(P.p, 2, 0, eps, 2, &c, 0.01, out, holds) == NK_OK);
    CHECK(out[0] == 0.1);
    CHECK(out[1] + out[2] == 4);
    CHECK(out[9] == 0.0);
    CHECK(holds[1] == 1);

    Params Q(0.9);
    nk_blip* b = nullptr;
    const double start[3] = {-0.9, std::sqrt(1 - 0.81), 0.05};
    c.record_every = 10;
    REQUIRE(nk_z_blip(Q.p, start, &c, 3, &b) == NK_OK);
    int maxima[3];
    double peaks[3];
    size_t count = 0;
    REQUIRE(nk_blip_periods(b, maxima, peaks, 3, &count) == NK_OK);
    CHECK(count == 3);
    int every = 0, decr = 0;
    double fz, late;
    REQUIRE(nk_blip_summary(b, &every, &decr, &fz, &late) == NK_OK);
    CHECK(every == 1);
    CHECK(decr == 1);
    double bz, s;
    REQUIRE(nk_blip_trace(b, 0, &bz, &s) == NK_OK);
    CHECK(bz < 0);  // pulled toward the plane from z > 0
    CHECK(nk_trajectory_size(nk_blip_trajectory(b)) > 0);
    nk_blip_free(b);
}
