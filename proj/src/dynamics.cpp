#include "nk/dynamics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "nk/errors.hpp"
#include "nk/limit_state.hpp"
#include "stepper.hpp"

namespace nk {

namespace {

constexpr double kPi = std::numbers::pi;

double toms_root(const std::function<double(double)>& f, double lo, double hi) {
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (r.first + r.second);
}

double minimize(const std::function<double(double)>& f, double lo, double hi, double* arg = nullptr) {
    const auto r = boost::math::tools::brent_find_minima(f, lo, hi, 52);
    if (arg) *arg = r.first;
    return r.second;
}

PhysParams with_e(double e) { return params_new(1.0, 1.0, e, 0.0); }

// Cubic Hermite root of y on [t0, t0 + h] given endpoint values and slopes.
double hermite_crossing(double t0, double h, double y0, double y1, double d0, double d1) {
    auto H = [&](double s) {
        const double s2 = s * s, s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0 + (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * h * d1;
    };
    if (H(0.0) == 0.0) return t0;
    return t0 + h * toms_root(H, 0.0, 1.0);
}

}  // namespace

UVDrift drift_uv(const PhysParams& p, KeplerCoord kc, double epsilon) {
    const double u = kc.u, e = p.e, a = p.a;
    if (!(u > -e) || !(u < 1.0)) throw DomainError("drift_uv requires -e < u < 1");
    const double c = std::cos(kc.v), s = std::sin(kc.v);
    const double su = std::sqrt(1.0 - u * u), se = p.sqrt1me2();
    const double d1 = 1.0 - u * c;
    const double d2 = e * u + (e + u) * c + 1.0;
    if (std::abs(d1) < 1e-14 || std::abs(d2) < 1e-14) throw SingularityError("drift_uv: singular denominator");
    UVDrift r;
    r.h = (e + u) / (2.0 * a * e * d1 * d2);
    const double epu = e + u;
    r.i_u = -epu * epu / (4.0 * a * e * d2 * d2) *
            (epu * epu * ((2.0 * u * u - 1.0) * c * c + 1.0) + 2.0 * u * (epu * epu - (1.0 - u * u) * (1.0 + e * u)) * c -
             (1.0 - u * u) * (1.0 - e * e));
    r.i_v = epu * s / (4.0 * a * d2 * d2) * (2.0 * epu * epu - (1.0 + e * u) * (1.0 + e * u) + epu * (e * u + 1.0) * c);
    const double k = p.mu / (2.0 * e * p.lambda);
    const double eps2 = epsilon * epsilon;
    r.raw_u = eps2 * r.i_u - k * epu * su * (se * (u + c - s) - su * (e + c - s));
    r.raw_v = eps2 * r.i_v - k * (se * su * (e + c + s) - u * (1.0 + e * e) - 2.0 * e - (e * e + 2.0 * u * e + 1.0) * c -
                                  (1.0 - e * e) * s);
    r.b_u = r.h * r.raw_u;
    r.b_v = r.h * r.raw_v;
    r.N = {epu * (1.0 - u * u) * c, epu * su * s};
    r.M = {(1.0 + e * u) * s, -su * (e + c)};
    return r;
}

Vec2 rk4_step(const PhysParams& p, Vec2 x, double dt) {
    const Vec2 k1 = drift2(p, x);
    const Vec2 k2 = drift2(p, x + 0.5 * dt * k1);
    const Vec2 k3 = drift2(p, x + 0.5 * dt * k2);
    const Vec2 k4 = drift2(p, x + dt * k3);
    return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Vec3 rk4_step(const PhysParams& p, Vec3 x, double dt) {
    const Vec3 k1 = drift3(p, x);
    const Vec3 k2 = drift3(p, x + 0.5 * dt * k1);
    const Vec3 k3 = drift3(p, x + 0.5 * dt * k2);
    const Vec3 k4 = drift3(p, x + dt * k3);
    return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

namespace {

void check_ode_options(const OdeOptions& opt, double t_end) {
    if (!(opt.dt > 0.0)) throw DomainError("step size dt must be > 0");
    if (!(t_end >= 0.0)) throw DomainError("t_end must be >= 0");
    if (opt.record_every < 1) throw DomainError("record_every must be >= 1");
}

}  // namespace

Trajectory integrate_ode(const PhysParams& p, Vec2 start, double t_end, const OdeOptions& opt) {
    check_ode_options(opt, t_end);
    (void)alpha_beta_cartesian(p, start);  // rejects the singular segment and origin
    auto stepper = [&](Vec3 x, long, double h, Vec3&) {
        try {
            return lift(rk4_step(p, planar(x), h));
        } catch (const DomainError&) {
            return Vec3{std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0};
        }
    };
    auto check = [&](Vec3 prev, Vec3 cur) -> std::optional<EventKind> {
        if (detail::near_origin(p, cur)) return EventKind::origin_approach;
        if (detail::planar_buffer_hit(p, opt.delta, prev, cur)) return EventKind::sigma_hit;
        return std::nullopt;
    };
    return detail::run_fixed_steps(p, 2, lift(start), t_end, opt.dt, opt.record_every, opt.record_uv, false, stepper,
                                   check);
}

Trajectory integrate_ode3(const PhysParams& p, Vec3 start, double t_end, const OdeOptions& opt) {
    check_ode_options(opt, t_end);
    (void)alpha_beta_cartesian(p, start);
    const SingularRegion3 sig = singular_region3(p);
    auto stepper = [&](Vec3 x, long, double h, Vec3&) {
        try {
            return rk4_step(p, x, h);
        } catch (const DomainError&) {
            return Vec3{std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0};
        }
    };
    auto check = [&](Vec3 prev, Vec3 cur) -> std::optional<EventKind> {
        if (detail::near_origin(p, cur)) return EventKind::origin_approach;
        if (detail::spatial_buffer_hit(sig, opt.delta, prev, cur)) return EventKind::sigma_hit;
        return std::nullopt;
    };
    return detail::run_fixed_steps(p, 3, start, t_end, opt.dt, opt.record_every, opt.record_uv, false, stepper, check);
}

double period(const PhysParams& p) { return 2.0 * kPi * std::sqrt(p.a * p.a * p.a / p.mu); }

double period_quadrature(const PhysParams& p) {
    auto f = [&](double v) { return 1.0 / drift_uv(p, {p.e, v}, 0.0).b_v; };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, 2.0 * kPi, 15, 1e-14);
}

double measured_period(const PhysParams& p, double dt, int periods) {
    if (periods < 1) throw DomainError("measured_period: periods must be >= 1");
    OdeOptions opt;
    opt.dt = dt;
    const Vec2 start{p.a * (1.0 - p.e), 0.0};
    const Trajectory tr = integrate_ode(p, start, (periods + 0.25) * period(p), opt);
    std::vector<double> crossings;
    for (size_t i = 0; i + 1 < tr.states.size(); ++i) {
        const Vec3 &s0 = tr.states[i], &s1 = tr.states[i + 1];
        if (s0.y < 0.0 && s1.y >= 0.0 && s1.x > 0.0) {
            const double h = tr.times[i + 1] - tr.times[i];
            const double d0 = drift2(p, planar(s0)).y, d1 = drift2(p, planar(s1)).y;
            crossings.push_back(hermite_crossing(tr.times[i], h, s0.y, s1.y, d0, d1));
        }
    }
    if (crossings.empty()) throw NoConvergenceError("measured_period: no crossings detected", 0.0);
    return crossings.back() / static_cast<double>(crossings.size());
}

double kepler_residual(const PhysParams& p, Vec2 q) {
    const KeplerCoord kc = from_cartesian(p, q);
    const UVDrift d = drift_uv(p, kc, 0.0);
    return d.b_v * (1.0 - p.e * std::cos(kc.v)) * std::sqrt(p.a * p.a * p.a / p.mu) - 1.0;
}

StabilityIntegral stability_integral(const PhysParams& p, double dt) {
    StabilityIntegral out;
    const double e = p.e;
    auto integrand = [e](double v) {
        return -(e * std::cos(v) + e * std::sin(v) + 1.0) / (e * e + 2.0 * e * std::cos(v) + 1.0);
    };
    out.closed_form = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, 2.0 * kPi, 15, 1e-14);

    // Trace of a central-difference Jacobian of the drift, integrated in time along one orbit.
    auto trace = [&](Vec2 x) {
        const double h = 1e-6 * p.a;
        return (drift2(p, {x.x + h, x.y}).x - drift2(p, {x.x - h, x.y}).x + drift2(p, {x.x, x.y + h}).y -
                drift2(p, {x.x, x.y - h}).y) /
               (2.0 * h);
    };
    const double T = period(p);
    const long steps = static_cast<long>(std::ceil(T / dt - 1e-9));
    Vec2 x{p.a * (1.0 - e), 0.0};
    double acc = 0.0, f0 = trace(x);
    for (long k = 0; k < steps; ++k) {
        const double h = (k + 1 == steps) ? T - k * dt : dt;
        const Vec2 xm = rk4_step(p, x, 0.5 * h);
        const Vec2 x1 = rk4_step(p, xm, 0.5 * h);
        const double fm = trace(xm), f1 = trace(x1);
        acc += h / 6.0 * (f0 + 4.0 * fm + f1);
        x = x1;
        f0 = f1;
    }
    out.finite_difference = acc;
    return out;
}

double f_curve(double e1, double e2, double v) {
    return e1 * (1.0 - std::cos(v) * std::sin(v)) + e2 * (std::cos(v) - std::sin(v));
}

double f_ratio(const PhysParams& p, double v) {
    if (!(v > kPi / 2) || !(v < kPi)) throw DomainError("f_ratio requires v in (pi/2, pi)");
    return f_curve(p.e, 1.0, v) / f_curve(-1.0, -p.e, v);
}

double tilde_e(double e) {
    if (!(e > 0.0) || !(e < 1.0)) throw DomainError("tilde_e requires 0 < e < 1");
    const double r2 = std::numbers::sqrt2;
    return (-2.0 * r2 + 3.0 * e) / (-3.0 + 2.0 * r2 * e);
}

double tilde_e_numeric(double e) {
    const PhysParams p = with_e(e);
    return minimize([&](double v) { return f_ratio(p, v); }, kPi / 2 + 1e-12, kPi - 1e-12);
}

double critical_eccentricity() {
    return toms_root([](double e) { return tilde_e(e) - e; }, 0.5, 0.9);
}

LyapunovValue lyapunov_uv(const PhysParams& p, KeplerCoord kc) {
    PhysParams q1 = p;
    q1.epsilon = 1.0;
    q1.n.reset();
    const double peak = std::pow(16.0 / (p.e * p.e), p.lambda);
    const double rho = std::exp(log_invariant_density_uv(q1, kc));
    const Vec2 gl = log_invariant_density_grad_uv(q1, kc);
    const Mat2 J = jacobian(p, kc);
    LyapunovValue out;
    out.V = peak - rho;
    out.grad = J.solve_transpose(-rho * gl);
    out.Vdot = dot(out.grad, drift2(p, to_cartesian(p, kc)));
    return out;
}

LyapunovValue lyapunov(const PhysParams& p, Vec2 q, double delta1, double delta2) {
    const KeplerCoord kc = from_cartesian(p, q);
    const double slack = 1e-12;  // inversion roundoff on the boundary curves
    if (!(kc.u > -p.e + delta1 - slack) || !(kc.u <= 1.0 - delta2 + slack))
        throw DomainError("lyapunov: point outside the annulus between E_{-e+delta1} and E_{1-delta2}");
    return lyapunov_uv(p, kc);
}

bool LyapunovCert::holds(double on_tol) const {
    return min_V_off > 0.0 && max_Vdot_off < 0.0 && max_abs_V_on < on_tol && max_abs_Vdot_on < on_tol;
}

LyapunovCert lyapunov_certificate(const PhysParams& p, double delta1, double delta2, int nu, int nv) {
    if (nu < 2 || nv < 1) throw DomainError("lyapunov_certificate: grid too small");
    if (!(delta1 > 0.0) || !(delta2 > 0.0) || !(-p.e + delta1 < 1.0 - delta2))
        throw DomainError("lyapunov_certificate: empty annulus");
    LyapunovCert c;
    c.delta1 = delta1;
    c.delta2 = delta2;
    c.nu = nu;
    c.nv = nv;
    c.min_V_off = std::numeric_limits<double>::infinity();
    c.max_Vdot_off = -std::numeric_limits<double>::infinity();
    const double u0 = -p.e + delta1, u1 = 1.0 - delta2;
    for (int i = 0; i < nu; ++i) {
        const double u = u0 + (u1 - u0) * i / (nu - 1);
        for (int j = 0; j < nv; ++j) {
            const double v = 2.0 * kPi * j / nv;
            if (std::abs(u - p.e) < 1e-12) continue;
            LyapunovValue L;
            try {
                L = lyapunov_uv(p, {u, v});
            } catch (const Error&) {
                ++c.excluded_points;
                continue;
            }
            ++c.off_points;
            c.min_V_off = std::min(c.min_V_off, L.V);
            c.max_Vdot_off = std::max(c.max_Vdot_off, L.Vdot);
        }
    }
    for (int j = 0; j < nv; ++j) {
        const LyapunovValue L = lyapunov_uv(p, {p.e, 2.0 * kPi * j / nv});
        c.max_abs_V_on = std::max(c.max_abs_V_on, std::abs(L.V));
        c.max_abs_Vdot_on = std::max(c.max_abs_Vdot_on, std::abs(L.Vdot));
    }
    return c;
}

const char* region_name(Region r) {
    switch (r) {
        case Region::converges_to_ellipse: return "converges_to_ellipse";
        case Region::bounded_to_annulus: return "bounded_to_annulus";
        case Region::interior_unproven: return "interior_unproven";
        case Region::near_sigma_attractive: return "near_sigma_attractive";
        case Region::other: return "other";
    }
    return "other";
}

Classification classify_point(const PhysParams& p, Vec2 q) {
    Classification c;
    c.kc = from_cartesian(p, q);
    const double u = c.kc.u, v = c.kc.v;
    const double bu = drift_uv(p, c.kc, 0.0).b_u;
    c.b_u_sign = (bu > 0.0) - (bu < 0.0);
    const double crit = 1.0 / std::numbers::sqrt2;
    if (v > kPi / 2 && v < kPi && u > std::max(f_ratio(p, v), p.e)) c.region = Region::near_sigma_attractive;
    else if (p.e < crit && u < tilde_e(p.e)) c.region = Region::converges_to_ellipse;
    else if (p.e > crit && u < p.e) c.region = Region::bounded_to_annulus;
    else if (u > p.e) c.region = Region::interior_unproven;
    else c.region = Region::other;
    return c;
}

const char* SymmetryCurve::name() const {
    switch (which) {
        case 0: return "drift_u_zero";
        case 1: return "divergence_zero";
        default: return "alpha_beta_plus_one_zero";
    }
}

double SymmetryCurve::u_at(double v) const {
    switch (which) {
        case 0: return f_curve(e, 1.0, v) / f_curve(-1.0, -e, v);
        case 1: return f_curve(e, 1.0, -v) / f_curve(-1.0, -e, -v);
        default: return f_curve(e, -1.0, -v) / f_curve(-1.0, e, -v);
    }
}

double SymmetryCurve::min_u() const {
    const double pad = 1e-9 * (v_hi - v_lo);
    return minimize([this](double v) { return u_at(v); }, v_lo + pad, v_hi - pad);
}

bool SymmetryCurve::crosses_ellipse() const { return min_u() < e; }

std::vector<KeplerCoord> SymmetryCurve::sample(int count) const {
    std::vector<KeplerCoord> out;
    for (int i = 1; i <= count; ++i) {
        const double v = v_lo + (v_hi - v_lo) * i / (count + 1);
        const double u = u_at(v);
        if (u > -e && u < 1.0) out.push_back({u, v});
    }
    return out;
}

std::array<SymmetryCurve, 3> symmetry_curves(const PhysParams& p) {
    return {SymmetryCurve{0, p.e, kPi / 2, kPi}, SymmetryCurve{1, p.e, kPi, 1.5 * kPi},
            SymmetryCurve{2, p.e, 0.0, kPi / 2}};
}

double symmetry_residual(const PhysParams& p, const SymmetryCurve& c, double v) {
    const KeplerCoord kc{c.u_at(v), v};
    switch (c.which) {
        case 0: return drift_uv(p, kc, 0.0).b_u;
        case 1: return divergence_uv(p, kc);
        default: {
            const AlphaBeta ab = alpha_beta_uv(p, kc);
            return ab.alpha + ab.beta + 1.0;
        }
    }
}

double curve_crossing_eccentricity(int which) {
    if (which < 0 || which > 2) throw DomainError("curve index must be 0, 1 or 2");
    return toms_root(
        [which](double e) { return symmetry_curves(with_e(e))[which].min_u() - e; }, 0.55, 0.85);
}

}  // namespace nk
