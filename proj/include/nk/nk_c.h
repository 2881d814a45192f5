#ifndef NK_C_H
#define NK_C_H

#include <stddef.h>
#include <stdint.h>

#if defined(NK_BUILDING_LIBRARY)
#define NK_API __attribute__((visibility("default")))
#else
#define NK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nk_status {
    NK_OK = 0,
    NK_ERR_NULL = 1,
    NK_ERR_DOMAIN = 2,
    NK_ERR_INCONSISTENT = 3,
    NK_ERR_SINGULAR = 4,
    NK_ERR_NO_CONVERGENCE = 5,
    NK_ERR_POLE = 6,
    NK_ERR_CONFIG = 7,
    NK_ERR_INTERNAL = 8
} nk_status;

typedef struct nk_params nk_params;
typedef struct nk_trajectory nk_trajectory;
typedef struct nk_ensemble nk_ensemble;
typedef struct nk_blip nk_blip;

/* Message of the last failing call on this thread ("" if none). */
NK_API const char* nk_last_error(void);
NK_API const char* nk_status_name(nk_status s);
NK_API const char* nk_version(void);

/* ---- parameters ---- */
/* n = 0 means "no quantum number". */
NK_API nk_status nk_params_new(double mu, double lambda, double e, double epsilon, int n, nk_params** out);
NK_API nk_status nk_params_with_epsilon(const nk_params* p, double epsilon, nk_params** out);
NK_API void nk_params_free(nk_params* p);
NK_API nk_status nk_params_get(const nk_params* p, double* mu, double* lambda, double* e, double* epsilon, int* n,
                               double* a, double* energy);

/* ---- geometry ---- */
NK_API nk_status nk_kepler_ellipse_point(const nk_params* p, double theta, double out[2]);
NK_API nk_status nk_distance_to_ellipse(const nk_params* p, double x, double y, double* out);
/* out: semi_major, eccentricity, focus2_x, focus2_y, center_x, degenerate (0/1) */
NK_API nk_status nk_ellipse_family(const nk_params* p, double c, double out[6]);
/* out: x_min_end, x_max_end, attractive_lo, attractive_hi */
NK_API nk_status nk_singular_segment(const nk_params* p, double out[4]);

/* ---- Keplerian elliptic coordinates ---- */
NK_API nk_status nk_to_cartesian(const nk_params* p, double u, double v, double out[2]);
NK_API nk_status nk_from_cartesian(const nk_params* p, double x, double y, double out[2]);
NK_API nk_status nk_alpha_beta_uv(const nk_params* p, double u, double v, double out[2]);
/* row-major dx/du, dx/dv, dy/du, dy/dv */
NK_API nk_status nk_jacobian(const nk_params* p, double u, double v, double out[4]);

/* ---- finite-n state ---- */
NK_API nk_status nk_nu(const nk_params* p, const double q[3], double out[2]);
NK_API nk_status nk_laguerre_ratio(int n, double re, double im, double out[2]);
/* interleaved re, im per component */
NK_API nk_status nk_z_field_exact(const nk_params* p, const double q[3], double out[6]);
NK_API nk_status nk_drift_exact(const nk_params* p, const double q[3], double out[3]);
/* Writes min(cap, n-1) roots; *count receives n-1. */
NK_API nk_status nk_nodal_roots(const nk_params* p, double* roots, size_t cap, size_t* count);
NK_API nk_status nk_log_density_exact(const nk_params* p, const double q[3], double* out);
NK_API nk_status nk_density_exact(const nk_params* p, const double q[3], double* out);

/* ---- limiting state ---- */
NK_API nk_status nk_z_field_limit(const nk_params* p, const double q[3], double out[6]);
NK_API nk_status nk_alpha_beta_cartesian(const nk_params* p, const double q[3], double out[2]);
NK_API nk_status nk_drift3(const nk_params* p, const double q[3], double out[3]);
NK_API nk_status nk_drift2(const nk_params* p, double x, double y, double out[2]);
/* out: eps^2 R, eps^2 S */
NK_API nk_status nk_rs_functions(const nk_params* p, double x, double y, double out[2]);
NK_API nk_status nk_log_density_limit_uv(const nk_params* p, double u, double v, double* out);
NK_API nk_status nk_density_limit(const nk_params* p, double x, double y, double* out);
NK_API nk_status nk_log_density_normalizer(const nk_params* p, int cells_per_side, double* out);
NK_API nk_status nk_divergence(const nk_params* p, double x, double y, double* out);
NK_API nk_status nk_speed_sq(const nk_params* p, double x, double y, double* out);
NK_API nk_status nk_sigma3_contains(const nk_params* p, const double q[3], int* out);
/* out has 4*count entries: x_lo(z), z, x_hi(z), z */
NK_API nk_status nk_sigma3_boundary(const nk_params* p, double z_max, int count, double* out);

/* ---- deterministic dynamics ---- */
/* out: b_u, b_v, i_u, i_v, h */
NK_API nk_status nk_drift_uv(const nk_params* p, double u, double v, double epsilon, double out[5]);
NK_API nk_status nk_period(const nk_params* p, double* out);
NK_API nk_status nk_period_quadrature(const nk_params* p, double* out);
NK_API nk_status nk_measured_period(const nk_params* p, double dt, int periods, double* out);
NK_API nk_status nk_kepler_residual(const nk_params* p, double x, double y, double* out);
/* out: closed form, finite-difference route */
NK_API nk_status nk_stability_integral(const nk_params* p, double dt, double out[2]);
NK_API nk_status nk_f_curve(double e1, double e2, double v, double* out);
NK_API nk_status nk_f_ratio(const nk_params* p, double v, double* out);
NK_API nk_status nk_tilde_e(double e, double* out);
NK_API nk_status nk_tilde_e_numeric(double e, double* out);
NK_API nk_status nk_critical_eccentricity(double* out);
/* out: V, Vdot */
NK_API nk_status nk_lyapunov(const nk_params* p, double x, double y, double delta1, double delta2, double out[2]);
/* out: min V off, max Vdot off, max |V| on, max |Vdot| on, off points, excluded points */
NK_API nk_status nk_lyapunov_certificate(const nk_params* p, double delta1, double delta2, int nu, int nv,
                                         double out[6]);
NK_API nk_status nk_classify_point(const nk_params* p, double x, double y, int* region, int* b_u_sign);
NK_API const char* nk_region_name(int region);
NK_API const char* nk_symmetry_curve_name(int which);
/* Samples curve `which` (0,1,2) at `count` interior v; *written receives the number of points kept. */
NK_API nk_status nk_symmetry_curve_sample(const nk_params* p, int which, int count, double* u, double* v,
                                          size_t* written);
NK_API nk_status nk_symmetry_curve_min(const nk_params* p, int which, double* out);
NK_API nk_status nk_symmetry_residual(const nk_params* p, int which, double v, double* out);
NK_API nk_status nk_curve_crossing_eccentricity(int which, double* out);

/* ---- paths ---- */
typedef struct nk_sim_config {
    double dt;
    double t_max;
    double delta;
    uint64_t seed;
    int dimension;
    int ensemble_size;
    int record_every;
    int record_uv;
    int record_noise;
} nk_sim_config;

NK_API void nk_sim_config_default(nk_sim_config* cfg);

/* RK4 flow; dimension 2 requires start[2] == 0. */
NK_API nk_status nk_integrate_ode(const nk_params* p, const double start[3], int dimension, double t_end, double dt,
                                  double delta, int record_every, int record_uv, nk_trajectory** out);
NK_API nk_status nk_simulate_sde(const nk_params* p, const double start[3], const nk_sim_config* cfg,
                                 uint64_t path_index, nk_trajectory** out);
NK_API void nk_trajectory_free(nk_trajectory* t);
NK_API size_t nk_trajectory_size(const nk_trajectory* t);
NK_API int nk_trajectory_dimension(const nk_trajectory* t);
NK_API nk_status nk_trajectory_sample(const nk_trajectory* t, size_t i, double* time, double state[3]);
/* *has = 0 when (u,v) was not recorded or inversion failed. */
NK_API nk_status nk_trajectory_uv(const nk_trajectory* t, size_t i, double uv[2], int* has);
NK_API nk_status nk_trajectory_noise(const nk_trajectory* t, size_t i, double out[3], int* has);
NK_API size_t nk_trajectory_event_count(const nk_trajectory* t);
NK_API nk_status nk_trajectory_event(const nk_trajectory* t, size_t i, double* time, const char** kind);

/* Path i starts at starts[3*(i % n_starts)]. hist: xmin, xmax, ymin, ymax. */
NK_API nk_status nk_simulate_ensemble(const nk_params* p, const double* starts, size_t n_starts,
                                      const nk_sim_config* cfg, const double hist[4], int nx, int ny,
                                      nk_ensemble** out);
NK_API void nk_ensemble_free(nk_ensemble* e);
NK_API size_t nk_ensemble_size(const nk_ensemble* e);
NK_API double nk_ensemble_hit_fraction(const nk_ensemble* e);
NK_API nk_status nk_ensemble_final(const nk_ensemble* e, size_t i, double out[3], int* hit);
/* Row-major ny*nx counts. */
NK_API nk_status nk_ensemble_histogram(const nk_ensemble* e, long* counts, size_t cap);

/* out: estimate of P(tau > t), Wilson lower, Wilson upper */
NK_API nk_status nk_hitting_probability(const nk_params* p, const double start[3], const nk_sim_config* cfg, double t,
                                        double out[3], int* survived, int* total);

/* Per epsilon, 5 values: epsilon, retained, excluded, max ratio, mean sup distance; holds[i] = bound on every path. */
NK_API nk_status nk_coupling_convergence(const nk_params* p, double x, double y, const double* eps, size_t n_eps,
                                         const nk_sim_config* cfg, double slack, double* out, int* holds);

NK_API nk_status nk_z_blip(const nk_params* p, const double start[3], const nk_sim_config* cfg, int periods,
                           nk_blip** out);
NK_API void nk_blip_free(nk_blip* b);
NK_API const nk_trajectory* nk_blip_trajectory(const nk_blip* b);
/* Fills up to cap periods; *count receives the number of periods. */
NK_API nk_status nk_blip_periods(const nk_blip* b, int* maxima, double* peaks, size_t cap, size_t* count);
NK_API nk_status nk_blip_summary(const nk_blip* b, int* blip_every_period, int* peaks_decreasing, double* final_abs_z,
                                 double* min_abs_z_late);
/* b_z and alpha+beta+1 at trajectory sample i. */
NK_API nk_status nk_blip_trace(const nk_blip* b, size_t i, double* bz, double* alpha_beta_plus1);

#ifdef __cplusplus
}
#endif

#endif /* NK_C_H */
