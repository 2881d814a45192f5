#include "nk/nk_c.h"

#include <algorithm>
#include <array>
#include <memory>
#include <string>

#include "nk/coords.hpp"
#include "nk/core.hpp"
#include "nk/dynamics.hpp"
#include "nk/errors.hpp"
#include "nk/exact_state.hpp"
#include "nk/limit_state.hpp"
#include "nk/sim.hpp"

struct nk_params {
    nk::PhysParams p;
};

struct nk_trajectory {
    nk::Trajectory t;
};

struct nk_ensemble {
    nk::EnsembleSummary s;
};

struct nk_blip {
    nk::BlipReport r;
    nk_trajectory traj;
};

namespace {

thread_local std::string g_last_error;

template <class F>
nk_status guard(F&& f) {
    try {
        f();
        g_last_error.clear();
        return NK_OK;
    } catch (const nk::PoleError& e) {
        g_last_error = e.what();
        return NK_ERR_POLE;
    } catch (const nk::NoConvergenceError& e) {
        g_last_error = std::string(e.what()) + " (best residual " + std::to_string(e.best_residual()) + ")";
        return NK_ERR_NO_CONVERGENCE;
    } catch (const nk::InconsistencyError& e) {
        g_last_error = e.what();
        return NK_ERR_INCONSISTENT;
    } catch (const nk::SingularityError& e) {
        g_last_error = e.what();
        return NK_ERR_SINGULAR;
    } catch (const nk::ConfigError& e) {
        g_last_error = e.what();
        return NK_ERR_CONFIG;
    } catch (const nk::DomainError& e) {
        g_last_error = e.what();
        return NK_ERR_DOMAIN;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return NK_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return NK_ERR_INTERNAL;
    }
}

// guard() plus a null-pointer check on the listed arguments.
template <class F, class... Ptr>
nk_status call(F&& f, const Ptr*... ptrs) {
    if (((ptrs == nullptr) || ...)) {
        g_last_error = "null argument";
        return NK_ERR_NULL;
    }
    return guard(std::forward<F>(f));
}

nk::Vec3 v3(const double q[3]) { return {q[0], q[1], q[2]}; }

void put(double* out, nk::Vec3 v) {
    out[0] = v.x;
    out[1] = v.y;
    out[2] = v.z;
}

void put(double* out, const nk::CVec3& z) {
    for (int i = 0; i < 3; ++i) {
        out[2 * i] = z[i].real();
        out[2 * i + 1] = z[i].imag();
    }
}

nk::SimConfig to_config(const nk_sim_config* c) {
    nk::SimConfig s;
    s.dt = c->dt;
    s.t_max = c->t_max;
    s.delta = c->delta;
    s.seed = c->seed;
    s.dimension = c->dimension;
    s.ensemble_size = c->ensemble_size;
    s.record_every = c->record_every;
    s.record_uv = c->record_uv != 0;
    s.record_noise = c->record_noise != 0;
    return s;
}

}  // namespace

extern "C" {

NK_API const char* nk_last_error(void) { return g_last_error.c_str(); }

NK_API const char* nk_status_name(nk_status s) {
    switch (s) {
        case NK_OK: return "ok";
        case NK_ERR_NULL: return "null argument";
        case NK_ERR_DOMAIN: return "domain error";
        case NK_ERR_INCONSISTENT: return "inconsistent parameters";
        case NK_ERR_SINGULAR: return "singularity";
        case NK_ERR_NO_CONVERGENCE: return "no convergence";
        case NK_ERR_POLE: return "node proximity";
        case NK_ERR_CONFIG: return "configuration error";
        case NK_ERR_INTERNAL: return "internal error";
    }
    return "unknown";
}

NK_API const char* nk_version(void) { return "1.0.0"; }

NK_API nk_status nk_params_new(double mu, double lambda, double e, double epsilon, int n, nk_params** out) {
    return call(
        [&] {
            std::optional<int> nn;
            if (n != 0) nn = n;
            auto h = std::make_unique<nk_params>();
            h->p = nk::params_new(mu, lambda, e, epsilon, nn);
            *out = h.release();
        },
        out);
}

NK_API nk_status nk_params_with_epsilon(const nk_params* p, double epsilon, nk_params** out) {
    return call(
        [&] {
            auto h = std::make_unique<nk_params>();
            h->p = nk::with_epsilon(p->p, epsilon);
            *out = h.release();
        },
        p, out);
}

NK_API void nk_params_free(nk_params* p) { delete p; }

NK_API nk_status nk_params_get(const nk_params* p, double* mu, double* lambda, double* e, double* epsilon, int* n,
                               double* a, double* energy) {
    return call(
        [&] {
            if (mu) *mu = p->p.mu;
            if (lambda) *lambda = p->p.lambda;
            if (e) *e = p->p.e;
            if (epsilon) *epsilon = p->p.epsilon;
            if (n) *n = p->p.n.value_or(0);
            if (a) *a = p->p.a;
            if (energy) *energy = p->p.energy;
        },
        p);
}

NK_API nk_status nk_kepler_ellipse_point(const nk_params* p, double theta, double out[2]) {
    return call(
        [&] {
            const auto q = nk::kepler_ellipse_point(p->p, theta);
            out[0] = q.x;
            out[1] = q.y;
        },
        p, out);
}

NK_API nk_status nk_distance_to_ellipse(const nk_params* p, double x, double y, double* out) {
    return call([&] { *out = nk::distance_to_kepler_ellipse(p->p, {x, y}); }, p, out);
}

NK_API nk_status nk_ellipse_family(const nk_params* p, double c, double out[6]) {
    return call(
        [&] {
            const auto s = nk::ellipse_family(p->p, c);
            out[0] = s.semi_major;
            out[1] = s.eccentricity;
            out[2] = s.focus2.x;
            out[3] = s.focus2.y;
            out[4] = s.center.x;
            out[5] = s.degenerate ? 1.0 : 0.0;
        },
        p, out);
}

NK_API nk_status nk_singular_segment(const nk_params* p, double out[4]) {
    return call(
        [&] {
            const auto s = nk::singular_segment(p->p);
            out[0] = s.x_min_end;
            out[1] = s.x_max_end;
            out[2] = s.attractive_lo;
            out[3] = s.attractive_hi;
        },
        p, out);
}

NK_API nk_status nk_to_cartesian(const nk_params* p, double u, double v, double out[2]) {
    return call(
        [&] {
            const auto q = nk::to_cartesian(p->p, {u, v});
            out[0] = q.x;
            out[1] = q.y;
        },
        p, out);
}

NK_API nk_status nk_from_cartesian(const nk_params* p, double x, double y, double out[2]) {
    return call(
        [&] {
            const auto kc = nk::from_cartesian(p->p, {x, y});
            out[0] = kc.u;
            out[1] = kc.v;
        },
        p, out);
}

NK_API nk_status nk_alpha_beta_uv(const nk_params* p, double u, double v, double out[2]) {
    return call(
        [&] {
            const auto ab = nk::alpha_beta_uv(p->p, {u, v});
            out[0] = ab.alpha;
            out[1] = ab.beta;
        },
        p, out);
}

NK_API nk_status nk_jacobian(const nk_params* p, double u, double v, double out[4]) {
    return call(
        [&] {
            const auto J = nk::jacobian(p->p, {u, v});
            out[0] = J.a00;
            out[1] = J.a01;
            out[2] = J.a10;
            out[3] = J.a11;
        },
        p, out);
}

NK_API nk_status nk_nu(const nk_params* p, const double q[3], double out[2]) {
    return call(
        [&] {
            const auto z = nk::nu(p->p, v3(q));
            out[0] = z.real();
            out[1] = z.imag();
        },
        p, q, out);
}

NK_API nk_status nk_laguerre_ratio(int n, double re, double im, double out[2]) {
    return call(
        [&] {
            const auto z = nk::laguerre_ratio(n, {re, im});
            out[0] = z.real();
            out[1] = z.imag();
        },
        out);
}

NK_API nk_status nk_z_field_exact(const nk_params* p, const double q[3], double out[6]) {
    return call([&] { put(out, nk::z_field_exact(p->p, v3(q))); }, p, q, out);
}

NK_API nk_status nk_drift_exact(const nk_params* p, const double q[3], double out[3]) {
    return call([&] { put(out, nk::drift_exact(p->p, v3(q))); }, p, q, out);
}

NK_API nk_status nk_nodal_roots(const nk_params* p, double* roots, size_t cap, size_t* count) {
    return call(
        [&] {
            const auto set = nk::nodal_curves(p->p);
            *count = set.roots.size();
            for (size_t i = 0; i < set.roots.size() && i < cap && roots; ++i) roots[i] = set.roots[i];
        },
        p, count);
}

NK_API nk_status nk_log_density_exact(const nk_params* p, const double q[3], double* out) {
    return call([&] { *out = nk::log_invariant_density_exact(p->p, v3(q)); }, p, q, out);
}

NK_API nk_status nk_density_exact(const nk_params* p, const double q[3], double* out) {
    return call([&] { *out = nk::invariant_density_exact(p->p, v3(q)); }, p, q, out);
}

NK_API nk_status nk_z_field_limit(const nk_params* p, const double q[3], double out[6]) {
    return call([&] { put(out, nk::z_field_limit(p->p, v3(q))); }, p, q, out);
}

NK_API nk_status nk_alpha_beta_cartesian(const nk_params* p, const double q[3], double out[2]) {
    return call(
        [&] {
            const auto ab = nk::alpha_beta_cartesian(p->p, v3(q));
            out[0] = ab.alpha;
            out[1] = ab.beta;
        },
        p, q, out);
}

NK_API nk_status nk_drift3(const nk_params* p, const double q[3], double out[3]) {
    return call([&] { put(out, nk::drift3(p->p, v3(q))); }, p, q, out);
}

NK_API nk_status nk_drift2(const nk_params* p, double x, double y, double out[2]) {
    return call(
        [&] {
            const auto b = nk::drift2(p->p, {x, y});
            out[0] = b.x;
            out[1] = b.y;
        },
        p, out);
}

NK_API nk_status nk_rs_functions(const nk_params* p, double x, double y, double out[2]) {
    return call(
        [&] {
            const auto rs = nk::rs_functions(p->p, {x, y});
            out[0] = rs.r_val;
            out[1] = rs.s_val;
        },
        p, out);
}

NK_API nk_status nk_log_density_limit_uv(const nk_params* p, double u, double v, double* out) {
    return call([&] { *out = nk::log_invariant_density_uv(p->p, {u, v}); }, p, out);
}

NK_API nk_status nk_density_limit(const nk_params* p, double x, double y, double* out) {
    return call([&] { *out = nk::invariant_density_limit(p->p, nk::Vec2{x, y}); }, p, out);
}

NK_API nk_status nk_log_density_normalizer(const nk_params* p, int cells_per_side, double* out) {
    return call([&] { *out = nk::log_invariant_density_normalizer(p->p, cells_per_side); }, p, out);
}

NK_API nk_status nk_divergence(const nk_params* p, double x, double y, double* out) {
    return call([&] { *out = nk::divergence(p->p, {x, y}); }, p, out);
}

NK_API nk_status nk_speed_sq(const nk_params* p, double x, double y, double* out) {
    return call([&] { *out = nk::speed_sq(p->p, {x, y}); }, p, out);
}

NK_API nk_status nk_sigma3_contains(const nk_params* p, const double q[3], int* out) {
    return call([&] { *out = nk::singular_region3(p->p).contains(v3(q)) ? 1 : 0; }, p, q, out);
}

NK_API nk_status nk_sigma3_boundary(const nk_params* p, double z_max, int count, double* out) {
    return call(
        [&] {
            if (count < 1) throw nk::DomainError("count must be >= 1");
            const auto pts = nk::singular_region3(p->p).boundary(z_max, count);
            for (int i = 0; i < count; ++i) {
                out[4 * i] = pts[i].x;
                out[4 * i + 1] = pts[i].y;
                out[4 * i + 2] = pts[count + i].x;
                out[4 * i + 3] = pts[count + i].y;
            }
        },
        p, out);
}

NK_API nk_status nk_drift_uv(const nk_params* p, double u, double v, double epsilon, double out[5]) {
    return call(
        [&] {
            const auto d = nk::drift_uv(p->p, {u, v}, epsilon);
            out[0] = d.b_u;
            out[1] = d.b_v;
            out[2] = d.i_u;
            out[3] = d.i_v;
            out[4] = d.h;
        },
        p, out);
}

NK_API nk_status nk_period(const nk_params* p, double* out) {
    return call([&] { *out = nk::period(p->p); }, p, out);
}

NK_API nk_status nk_period_quadrature(const nk_params* p, double* out) {
    return call([&] { *out = nk::period_quadrature(p->p); }, p, out);
}

NK_API nk_status nk_measured_period(const nk_params* p, double dt, int periods, double* out) {
    return call([&] { *out = nk::measured_period(p->p, dt, periods); }, p, out);
}

NK_API nk_status nk_kepler_residual(const nk_params* p, double x, double y, double* out) {
    return call([&] { *out = nk::kepler_residual(p->p, {x, y}); }, p, out);
}

NK_API nk_status nk_stability_integral(const nk_params* p, double dt, double out[2]) {
    return call(
        [&] {
            const auto s = nk::stability_integral(p->p, dt);
            out[0] = s.closed_form;
            out[1] = s.finite_difference;
        },
        p, out);
}

NK_API nk_status nk_f_curve(double e1, double e2, double v, double* out) {
    return call([&] { *out = nk::f_curve(e1, e2, v); }, out);
}

NK_API nk_status nk_f_ratio(const nk_params* p, double v, double* out) {
    return call([&] { *out = nk::f_ratio(p->p, v); }, p, out);
}

NK_API nk_status nk_tilde_e(double e, double* out) {
    return call([&] { *out = nk::tilde_e(e); }, out);
}

NK_API nk_status nk_tilde_e_numeric(double e, double* out) {
    return call([&] { *out = nk::tilde_e_numeric(e); }, out);
}

NK_API nk_status nk_critical_eccentricity(double* out) {
    return call([&] { *out = nk::critical_eccentricity(); }, out);
}

NK_API nk_status nk_lyapunov(const nk_params* p, double x, double y, double delta1, double delta2, double out[2]) {
    return call(
        [&] {
            const auto L = nk::lyapunov(p->p, {x, y}, delta1, delta2);
            out[0] = L.V;
            out[1] = L.Vdot;
        },
        p, out);
}

NK_API nk_status nk_lyapunov_certificate(const nk_params* p, double delta1, double delta2, int nu, int nv,
                                         double out[6]) {
    return call(
        [&] {
            const auto c = nk::lyapunov_certificate(p->p, delta1, delta2, nu, nv);
            out[0] = c.min_V_off;
            out[1] = c.max_Vdot_off;
            out[2] = c.max_abs_V_on;
            out[3] = c.max_abs_Vdot_on;
            out[4] = c.off_points;
            out[5] = c.excluded_points;
        },
        p, out);
}

NK_API nk_status nk_classify_point(const nk_params* p, double x, double y, int* region, int* b_u_sign) {
    return call(
        [&] {
            const auto c = nk::classify_point(p->p, {x, y});
            *region = static_cast<int>(c.region);
            if (b_u_sign) *b_u_sign = c.b_u_sign;
        },
        p, region);
}

NK_API const char* nk_region_name(int region) {
    if (region < 0 || region > static_cast<int>(nk::Region::other)) return "unknown";
    return nk::region_name(static_cast<nk::Region>(region));
}

NK_API const char* nk_symmetry_curve_name(int which) {
    if (which < 0 || which > 2) return "unknown";
    nk::SymmetryCurve c;
    c.which = which;
    return c.name();
}

namespace {

const nk::SymmetryCurve& curve_of(const nk::PhysParams& p, int which, std::array<nk::SymmetryCurve, 3>& store) {
    if (which < 0 || which > 2) throw nk::DomainError("curve index must be 0, 1 or 2");
    store = nk::symmetry_curves(p);
    return store[which];
}

}  // namespace

NK_API nk_status nk_symmetry_curve_sample(const nk_params* p, int which, int count, double* u, double* v,
                                          size_t* written) {
    return call(
        [&] {
            std::array<nk::SymmetryCurve, 3> store;
            const auto pts = curve_of(p->p, which, store).sample(count);
            for (size_t i = 0; i < pts.size(); ++i) {
                u[i] = pts[i].u;
                v[i] = pts[i].v;
            }
            *written = pts.size();
        },
        p, u, v, written);
}

NK_API nk_status nk_symmetry_curve_min(const nk_params* p, int which, double* out) {
    return call(
        [&] {
            std::array<nk::SymmetryCurve, 3> store;
            *out = curve_of(p->p, which, store).min_u();
        },
        p, out);
}

NK_API nk_status nk_symmetry_residual(const nk_params* p, int which, double v, double* out) {
    return call(
        [&] {
            std::array<nk::SymmetryCurve, 3> store;
            *out = nk::symmetry_residual(p->p, curve_of(p->p, which, store), v);
        },
        p, out);
}

NK_API nk_status nk_curve_crossing_eccentricity(int which, double* out) {
    return call([&] { *out = nk::curve_crossing_eccentricity(which); }, out);
}

NK_API void nk_sim_config_default(nk_sim_config* cfg) {
    if (!cfg) return;
    const nk::SimConfig d;
    cfg->dt = d.dt;
    cfg->t_max = d.t_max;
    cfg->delta = d.delta;
    cfg->seed = d.seed;
    cfg->dimension = d.dimension;
    cfg->ensemble_size = d.ensemble_size;
    cfg->record_every = d.record_every;
    cfg->record_uv = 0;
    cfg->record_noise = 0;
}

NK_API nk_status nk_integrate_ode(const nk_params* p, const double start[3], int dimension, double t_end, double dt,
                                  double delta, int record_every, int record_uv, nk_trajectory** out) {
    return call(
        [&] {
            nk::OdeOptions opt;
            opt.dt = dt;
            opt.delta = delta;
            opt.record_every = record_every;
            opt.record_uv = record_uv != 0;
            auto h = std::make_unique<nk_trajectory>();
            if (dimension == 2) {
                if (start[2] != 0.0) throw nk::DomainError("planar flow needs z = 0");
                h->t = nk::integrate_ode(p->p, {start[0], start[1]}, t_end, opt);
            } else if (dimension == 3) {
                h->t = nk::integrate_ode3(p->p, v3(start), t_end, opt);
            } else {
                throw nk::DomainError("dimension must be 2 or 3");
            }
            *out = h.release();
        },
        p, start, out);
}

NK_API nk_status nk_simulate_sde(const nk_params* p, const double start[3], const nk_sim_config* cfg,
                                 uint64_t path_index, nk_trajectory** out) {
    return call(
        [&] {
            auto h = std::make_unique<nk_trajectory>();
            h->t = nk::simulate_sde(p->p, v3(start), to_config(cfg), path_index);
            *out = h.release();
        },
        p, start, cfg, out);
}

NK_API void nk_trajectory_free(nk_trajectory* t) { delete t; }

NK_API size_t nk_trajectory_size(const nk_trajectory* t) { return t ? t->t.times.size() : 0; }

NK_API int nk_trajectory_dimension(const nk_trajectory* t) { return t ? t->t.dimension : 0; }

NK_API nk_status nk_trajectory_sample(const nk_trajectory* t, size_t i, double* time, double state[3]) {
    return call(
        [&] {
            if (i >= t->t.times.size()) throw nk::DomainError("sample index out of range");
            if (time) *time = t->t.times[i];
            if (state) put(state, t->t.states[i]);
        },
        t);
}

NK_API nk_status nk_trajectory_uv(const nk_trajectory* t, size_t i, double uv[2], int* has) {
    return call(
        [&] {
            if (i >= t->t.times.size()) throw nk::DomainError("sample index out of range");
            *has = 0;
            if (i < t->t.uv.size() && t->t.uv[i]) {
                uv[0] = t->t.uv[i]->u;
                uv[1] = t->t.uv[i]->v;
                *has = 1;
            }
        },
        t, uv, has);
}

NK_API nk_status nk_trajectory_noise(const nk_trajectory* t, size_t i, double out[3], int* has) {
    return call(
        [&] {
            if (i >= t->t.times.size()) throw nk::DomainError("sample index out of range");
            *has = 0;
            if (i < t->t.noise.size()) {
                put(out, t->t.noise[i]);
                *has = 1;
            }
        },
        t, out, has);
}

NK_API size_t nk_trajectory_event_count(const nk_trajectory* t) { return t ? t->t.events.size() : 0; }

NK_API nk_status nk_trajectory_event(const nk_trajectory* t, size_t i, double* time, const char** kind) {
    return call(
        [&] {
            if (i >= t->t.events.size()) throw nk::DomainError("event index out of range");
            if (time) *time = t->t.events[i].t;
            if (kind) *kind = nk::event_name(t->t.events[i].kind);
        },
        t);
}

NK_API nk_status nk_simulate_ensemble(const nk_params* p, const double* starts, size_t n_starts,
                                      const nk_sim_config* cfg, const double hist[4], int nx, int ny,
                                      nk_ensemble** out) {
    return call(
        [&] {
            if (n_starts == 0) throw nk::ConfigError("at least one start point is required");
            if (nx < 1 || ny < 1) throw nk::ConfigError("histogram needs nx, ny >= 1");
            nk::Histogram grid;
            grid.xmin = hist[0];
            grid.xmax = hist[1];
            grid.ymin = hist[2];
            grid.ymax = hist[3];
            grid.nx = nx;
            grid.ny = ny;
            auto start = [&](int i) { return v3(starts + 3 * (static_cast<size_t>(i) % n_starts)); };
            auto h = std::make_unique<nk_ensemble>();
            h->s = nk::simulate_ensemble(p->p, start, to_config(cfg), grid);
            *out = h.release();
        },
        p, starts, cfg, hist, out);
}

NK_API void nk_ensemble_free(nk_ensemble* e) { delete e; }

NK_API size_t nk_ensemble_size(const nk_ensemble* e) { return e ? e->s.finals.size() : 0; }

NK_API double nk_ensemble_hit_fraction(const nk_ensemble* e) { return e ? e->s.hit_fraction : 0.0; }

NK_API nk_status nk_ensemble_final(const nk_ensemble* e, size_t i, double out[3], int* hit) {
    return call(
        [&] {
            if (i >= e->s.finals.size()) throw nk::DomainError("path index out of range");
            put(out, e->s.finals[i]);
            if (hit) *hit = e->s.hit[i] ? 1 : 0;
        },
        e, out);
}

NK_API nk_status nk_ensemble_histogram(const nk_ensemble* e, long* counts, size_t cap) {
    return call(
        [&] {
            const auto& c = e->s.histogram.counts;
            if (cap < c.size()) throw nk::DomainError("histogram buffer too small");
            std::copy(c.begin(), c.end(), counts);
        },
        e, counts);
}

NK_API nk_status nk_hitting_probability(const nk_params* p, const double start[3], const nk_sim_config* cfg, double t,
                                        double out[3], int* survived, int* total) {
    return call(
        [&] {
            const auto h = nk::hitting_probability(p->p, v3(start), to_config(cfg), t);
            out[0] = h.estimate;
            out[1] = h.lo;
            out[2] = h.hi;
            if (survived) *survived = h.survived;
            if (total) *total = h.total;
        },
        p, start, cfg, out);
}

NK_API nk_status nk_coupling_convergence(const nk_params* p, double x, double y, const double* eps, size_t n_eps,
                                         const nk_sim_config* cfg, double slack, double* out, int* holds) {
    return call(
        [&] {
            const std::vector<double> list(eps, eps + n_eps);
            const auto rows = nk::coupling_convergence(p->p, {x, y}, list, to_config(cfg), slack);
            for (size_t i = 0; i < rows.size(); ++i) {
                out[5 * i] = rows[i].epsilon;
                out[5 * i + 1] = rows[i].retained;
                out[5 * i + 2] = rows[i].excluded;
                out[5 * i + 3] = rows[i].max_ratio;
                out[5 * i + 4] = rows[i].mean_sup_dist;
                if (holds) holds[i] = rows[i].bound_holds ? 1 : 0;
            }
        },
        p, eps, cfg, out);
}

NK_API nk_status nk_z_blip(const nk_params* p, const double start[3], const nk_sim_config* cfg, int periods,
                           nk_blip** out) {
    return call(
        [&] {
            auto h = std::make_unique<nk_blip>();
            h->r = nk::z_blip_experiment(p->p, v3(start), to_config(cfg), periods);
            h->traj.t = h->r.trajectory;
            *out = h.release();
        },
        p, start, cfg, out);
}

NK_API void nk_blip_free(nk_blip* b) { delete b; }

NK_API const nk_trajectory* nk_blip_trajectory(const nk_blip* b) { return b ? &b->traj : nullptr; }

NK_API nk_status nk_blip_periods(const nk_blip* b, int* maxima, double* peaks, size_t cap, size_t* count) {
    return call(
        [&] {
            const size_t n = b->r.maxima_per_period.size();
            *count = n;
            for (size_t i = 0; i < n && i < cap; ++i) {
                if (maxima) maxima[i] = b->r.maxima_per_period[i];
                if (peaks) peaks[i] = b->r.period_peaks[i];
            }
        },
        b, count);
}

NK_API nk_status nk_blip_summary(const nk_blip* b, int* blip_every_period, int* peaks_decreasing, double* final_abs_z,
                                 double* min_abs_z_late) {
    return call(
        [&] {
            if (blip_every_period) *blip_every_period = b->r.blip_every_period ? 1 : 0;
            if (peaks_decreasing) *peaks_decreasing = b->r.peaks_decreasing ? 1 : 0;
            if (final_abs_z) *final_abs_z = b->r.final_abs_z;
            if (min_abs_z_late) *min_abs_z_late = b->r.min_abs_z_late;
        },
        b);
}

NK_API nk_status nk_blip_trace(const nk_blip* b, size_t i, double* bz, double* alpha_beta_plus1) {
    return call(
        [&] {
            if (i >= b->r.bz.size()) throw nk::DomainError("sample index out of range");
            if (bz) *bz = b->r.bz[i];
            if (alpha_beta_plus1) *alpha_beta_plus1 = b->r.alpha_beta_plus1[i];
        },
        b);
}

}  // extern "C"
