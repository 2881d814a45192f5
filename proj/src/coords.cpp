#include "nk/coords.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "nk/errors.hpp"

namespace nk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_coord(const PhysParams& p, KeplerCoord kc) {
    if (!(kc.u > -p.e) || !(kc.u <= 1.0) || !std::isfinite(kc.v))
        throw DomainError("Kepler coordinate requires -e < u <= 1 and finite v");
}

// d/dc of family_level for c < 1.
double family_level_derivative(const PhysParams& p, double c, Vec2 q) {
    const double s = 2.0 * p.a * p.e;
    const double X = q.x * (p.e + c) / s + c;
    const double one_m_c2 = 1.0 - c * c;
    return 2.0 * X * (q.x / s + 1.0) +
           q.y * q.y / (s * s) * 2.0 * (p.e + c) * (1.0 + p.e * c) / (one_m_c2 * one_m_c2);
}

bool on_segment_closure(const PhysParams& p, Vec2 q) {
    return singular_segment(p).contains_closure(q);
}

// Root of family_level in c on (-e, 1): 64-cell scan, then bracketed Newton.
double solve_u(const PhysParams& p, Vec2 q) {
    constexpr int cells = 64;
    const double lo_end = -p.e;
    const double width = 1.0 + p.e;
    double lo = lo_end, hi = 1.0;
    bool found = false;
    for (int i = 1; i < cells; ++i) {
        const double c = lo_end + width * i / cells;
        if (family_level(p, c, q) >= 0.0) {
            hi = c;
            lo = lo_end + width * (i - 1) / cells;
            found = true;
            break;
        }
        lo = c;
    }
    if (!found) hi = 1.0;
    double c = 0.5 * (lo + hi);
    double best = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 200; ++it) {
        const double g = family_level(p, c, q);
        best = std::min(best, std::abs(g));
        if (g < 0.0) lo = c; else hi = c;
        if (g == 0.0 || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(c)))
            return c;
        const double d = family_level_derivative(p, c, q);
        double next = c - g / d;
        // Damping: fall back to bisection whenever Newton leaves the bracket.
        if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
        if (std::abs(next - c) <= 4e-16 * std::max(1.0, std::abs(c))) return next;
        c = next;
    }
    if (hi - lo < 1e-12 || best < 1e-13) return c;
    throw NoConvergenceError("from_cartesian: family equation did not converge", best);
}

}  // namespace

double normalize_angle(double v) {
    double w = std::fmod(v, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    if (w >= kTwoPi) w = 0.0;
    return w;
}

Vec2 to_cartesian(const PhysParams& p, KeplerCoord kc) {
    check_coord(p, kc);
    const double s = 2.0 * p.a * p.e / (p.e + kc.u);
    const double su = std::sqrt(std::max(0.0, 1.0 - kc.u * kc.u));
    return {s * (std::cos(kc.v) - kc.u), s * su * std::sin(kc.v)};
}

double family_level(const PhysParams& p, double c, Vec2 q) {
    const double s = 2.0 * p.a * p.e;
    const double X = q.x * (p.e + c) / s + c;
    if (c >= 1.0) {
        if (q.y != 0.0) return std::numeric_limits<double>::infinity();
        return X * X - 1.0;
    }
    const double Y = q.y * (p.e + c) / s;
    return X * X + Y * Y / (1.0 - c * c) - 1.0;
}

double u_coordinate(const PhysParams& p, Vec2 q) {
    if (on_segment_closure(p, q)) return 1.0;
    return solve_u(p, q);
}

KeplerCoord from_cartesian(const PhysParams& p, Vec2 q) {
    if (!std::isfinite(q.x) || !std::isfinite(q.y)) throw DomainError("from_cartesian: non-finite point");
    if (q.x == 0.0 && q.y == 0.0) throw DomainError("from_cartesian: origin is the coordinate centre");
    if (on_segment_closure(p, q)) throw DomainError("from_cartesian: point lies on the singular segment");
    const double u = solve_u(p, q);
    if (1.0 - u < 1e-10) throw DomainError("from_cartesian: point within tolerance of the singular segment");
    const double s = 2.0 * p.a * p.e;
    const double cv = q.x * (p.e + u) / s + u;
    const double sv = q.y * (p.e + u) / (s * std::sqrt(1.0 - u * u));
    KeplerCoord kc{u, normalize_angle(std::atan2(sv, cv))};
    const Vec2 back = to_cartesian(p, kc);
    const double res = norm(back - q);
    if (!(res < 1e-9 * (1.0 + norm(q))))
        throw NoConvergenceError("from_cartesian: roundtrip residual above tolerance", res);
    return kc;
}

AlphaBeta alpha_beta_uv(const PhysParams& p, KeplerCoord kc) {
    check_coord(p, kc);
    const double c = std::cos(kc.v);
    const double D = 1.0 + p.e * kc.u - (p.e + kc.u) * c;
    if (std::abs(D) < 1e-14) throw SingularityError("alpha_beta_uv: denominator vanishes (u = 1, v = 0)");
    const double num = std::sqrt(std::max(0.0, (1.0 - kc.u * kc.u) * (1.0 - p.e * p.e)));
    return {num / D, -(p.e + kc.u) * std::sin(kc.v) / D};
}

Mat2 jacobian(const PhysParams& p, KeplerCoord kc) {
    check_coord(p, kc);
    if (!(kc.u < 1.0)) throw DomainError("jacobian requires u < 1");
    const double u = kc.u, e = p.e;
    const double s = 2.0 * p.a * e;
    const double su = std::sqrt(1.0 - u * u);
    const double cv = std::cos(kc.v), sv = std::sin(kc.v);
    const double epu = e + u;
    Mat2 J;
    J.a00 = -s * (e + cv) / (epu * epu);
    J.a01 = -s * sv / epu;
    J.a10 = -s * sv * (1.0 + e * u) / (su * epu * epu);
    J.a11 = s * su * cv / epu;
    return J;
}

}  // namespace nk
