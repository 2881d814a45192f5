#pragma once

#include <array>
#include <string>
#include <vector>

#include "nk/coords.hpp"
#include "nk/core.hpp"
#include "nk/trajectory.hpp"

namespace nk {

struct UVDrift {
    double b_u = 0.0;    // du/dt
    double b_v = 0.0;    // dv/dt
    double raw_u = 0.0;  // bracket before the factor h
    double raw_v = 0.0;
    double i_u = 0.0;    // second-order correction terms (multiply by eps^2)
    double i_v = 0.0;
    double h = 0.0;
    Vec2 N;              // grad u = -h N
    Vec2 M;              // grad v = -h M
};

UVDrift drift_uv(const PhysParams& p, KeplerCoord kc, double epsilon);

struct OdeOptions {
    double dt = 1e-3;
    double delta = 1e-3;  // stop when u > 1 - delta
    int record_every = 1;
    bool record_uv = false;
};

Trajectory integrate_ode(const PhysParams& p, Vec2 start, double t_end, const OdeOptions& opt = {});
Trajectory integrate_ode3(const PhysParams& p, Vec3 start, double t_end, const OdeOptions& opt = {});

Vec2 rk4_step(const PhysParams& p, Vec2 x, double dt);
Vec3 rk4_step(const PhysParams& p, Vec3 x, double dt);

double period(const PhysParams& p);
double period_quadrature(const PhysParams& p);  // integral of dv / (dv/dt) on u = e

// Period from successive upward crossings of y = 0 on x > 0 of an RK4 orbit started at perihelion.
double measured_period(const PhysParams& p, double dt, int periods = 3);

// v-rate times (1 - e cos v) sqrt(a^3/mu), minus 1.
double kepler_residual(const PhysParams& p, Vec2 q);

struct StabilityIntegral {
    double closed_form = 0.0;
    double finite_difference = 0.0;
};

StabilityIntegral stability_integral(const PhysParams& p, double dt = 1e-3);

double f_curve(double e1, double e2, double v);
double f_ratio(const PhysParams& p, double v);  // v in (pi/2, pi)
double tilde_e(double e);
double tilde_e_numeric(double e);  // minimum of f_ratio over (pi/2, pi)
double critical_eccentricity();    // root of tilde_e(e) = e on (0, 1)

struct LyapunovValue {
    double V = 0.0;
    double Vdot = 0.0;
    Vec2 grad;  // cartesian gradient of V
};

LyapunovValue lyapunov_uv(const PhysParams& p, KeplerCoord kc);
// DomainError outside the annulus int(E_{-e+delta1}) minus int(E_{1-delta2}).
LyapunovValue lyapunov(const PhysParams& p, Vec2 q, double delta1 = 0.1, double delta2 = 0.1);

struct LyapunovCert {
    double delta1 = 0.1;
    double delta2 = 0.1;
    int nu = 100;
    int nv = 100;
    double min_V_off = 0.0;
    double max_Vdot_off = 0.0;
    double max_abs_V_on = 0.0;
    double max_abs_Vdot_on = 0.0;
    int off_points = 0;
    int excluded_points = 0;

    bool holds(double on_tol = 1e-8) const;
};

LyapunovCert lyapunov_certificate(const PhysParams& p, double delta1 = 0.1, double delta2 = 0.1,
                                  int nu = 100, int nv = 100);

enum class Region { converges_to_ellipse, bounded_to_annulus, interior_unproven, near_sigma_attractive, other };

const char* region_name(Region r);

struct Classification {
    Region region = Region::other;
    int b_u_sign = 0;
    KeplerCoord kc;
};

Classification classify_point(const PhysParams& p, Vec2 q);

// 0: b_u = 0, 1: div b = 0, 2: alpha + beta + 1 = 0.
struct SymmetryCurve {
    int which = 0;
    double e = 0.5;
    double v_lo = 0.0;
    double v_hi = 0.0;

    const char* name() const;
    double u_at(double v) const;
    double min_u() const;  // numeric minimum over the open interval
    bool crosses_ellipse() const;
    std::vector<KeplerCoord> sample(int count) const;  // interior points with -e < u < 1
};

std::array<SymmetryCurve, 3> symmetry_curves(const PhysParams& p);

// The quantity that vanishes on the curve, evaluated at (u_at(v), v).
double symmetry_residual(const PhysParams& p, const SymmetryCurve& c, double v);

// Eccentricity at which the curve's minimum meets u = e.
double curve_crossing_eccentricity(int which);

}  // namespace nk
