#include "nk/limit_state.hpp"

#include <boost/math/tools/minima.hpp>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "nk/errors.hpp"

namespace nk {

namespace {

using cplx = std::complex<double>;

// (mu/lambda^2)(r - x/e): real part of nu.
double nu_real(const PhysParams& p, Vec3 q) { return p.mu / (p.lambda * p.lambda) * (norm(q) - q.x / p.e); }

void check_off_sigma(const PhysParams& p, Vec3 q, const char* who) {
    if (!std::isfinite(q.x) || !std::isfinite(q.y) || !std::isfinite(q.z))
        throw DomainError(std::string(who) + ": non-finite point");
    if (q.x == 0.0 && q.y == 0.0 && q.z == 0.0) throw DomainError(std::string(who) + ": origin excluded");
    if (q.y == 0.0) {
        const double t = nu_real(p, q);
        if (t >= 0.0 && t <= 4.0) throw DomainError(std::string(who) + ": point lies on the singular set");
    }
}

// Principal square root of 1 - 4/nu in a form that stays accurate near the singular set.
AlphaBeta alpha_beta_raw(const PhysParams& p, Vec3 q) {
    const double r = norm(q);
    const double xi = p.e * r - q.x;
    const double eta = p.sqrt1me2() * q.y;
    const double k4 = 4.0 * p.lambda * p.lambda * p.e / p.mu;
    const double dn = xi * xi + eta * eta;
    const double re = (xi * (xi - k4) + eta * eta) / dn;
    const double im = -k4 * eta / dn;
    const double mod = std::hypot(re, im);
    AlphaBeta ab;
    if (re >= 0.0) {
        ab.alpha = std::sqrt(0.5 * (mod + re));
        ab.beta = ab.alpha > 0.0 ? im / (2.0 * ab.alpha) : 0.0;
    } else {
        const double b = std::sqrt(0.5 * (mod - re));
        ab.beta = std::signbit(im) ? -b : b;
        ab.alpha = std::abs(im) / (2.0 * b);
    }
    return ab;
}

double log_density_uv_eps(const PhysParams& p, KeplerCoord kc, double eps) {
    const double u = kc.u, e = p.e, se = p.sqrt1me2();
    const double su = std::sqrt(std::max(0.0, 1.0 - u * u));
    const double e2 = eps * eps;
    const double head = p.lambda / e2 * (std::log(16.0) + 2.0 * std::log((1.0 + e * u + se * su) / (e + u)));
    const double tail = 2.0 * p.a * p.mu * (u - e + (e * u - 1.0 + se * su) * std::cos(kc.v)) / ((e + u) * e2 * p.lambda);
    return head + tail;
}

// (u, cos v) for any planar point except the origin, including the singular segment.
void u_and_cos(const PhysParams& p, Vec2 q, double& u, double& cv) {
    if (q.x == 0.0 && q.y == 0.0) throw DomainError("origin excluded");
    u = u_coordinate(p, q);
    cv = q.x * (p.e + u) / (2.0 * p.a * p.e) + u;
    cv = std::clamp(cv, -1.0, 1.0);
}

}  // namespace

AlphaBeta alpha_beta_cartesian(const PhysParams& p, Vec3 q) {
    check_off_sigma(p, q, "alpha_beta_cartesian");
    return alpha_beta_raw(p, q);
}

AlphaBeta alpha_beta_cartesian(const PhysParams& p, Vec2 q) { return alpha_beta_cartesian(p, lift(q)); }

CVec3 z_field_limit(const PhysParams& p, Vec3 q) {
    const AlphaBeta ab = alpha_beta_cartesian(p, q);
    const cplx w(ab.alpha, ab.beta);
    const cplx I(0.0, 1.0);
    const double r = norm(q);
    const cplx radial = I * (p.mu / (2.0 * p.lambda)) * (1.0 + w) / r;
    const cplx axial = (p.mu / (2.0 * p.lambda * p.e)) * (1.0 - w);
    return {radial * q.x + axial * I, radial * q.y - axial * p.sqrt1me2(), radial * q.z};
}

Vec3 drift_from_alpha_beta(const PhysParams& p, Vec3 q, AlphaBeta ab) {
    const double k = p.mu / (2.0 * p.lambda);
    const double r = norm(q);
    const double s = ab.alpha + ab.beta + 1.0;
    return {k * ((ab.alpha + ab.beta - 1.0) / p.e - s * q.x / r),
            k * ((ab.alpha - ab.beta - 1.0) * p.sqrt1me2() / p.e - s * q.y / r),
            -k * s * q.z / r};
}

Vec3 drift3(const PhysParams& p, Vec3 q) { return drift_from_alpha_beta(p, q, alpha_beta_cartesian(p, q)); }

Vec2 drift2(const PhysParams& p, Vec2 q) { return planar(drift3(p, lift(q))); }

RSValue rs_functions(const PhysParams& p, Vec2 q) {
    check_off_sigma(p, lift(q), "rs_functions");
    const double k = p.mu / (p.lambda * p.lambda);
    const double r = norm(q);
    const double at = k * (r - q.x / p.e);
    const double bt = -k * q.y * p.sqrt1me2() / p.e;
    if (at == 0.0 && bt == 0.0) throw DomainError("rs_functions: logarithm argument vanishes");
    const AlphaBeta ab = alpha_beta_raw(p, lift(q));
    const double al = ab.alpha, be = ab.beta;
    RSValue v;
    v.r_val = 0.5 * p.lambda *
                  (std::log(at * at + bt * bt) + 2.0 * std::log((1.0 + al) * (1.0 + al) + be * be) + (1.0 - al) * at +
                   be * bt) -
              p.mu * r / p.lambda;
    v.s_val = p.lambda * (std::atan2(bt, at) + 2.0 * std::atan2(be, 1.0 + al) + 0.5 * bt * (1.0 - al) - 0.5 * be * at);
    return v;
}

double log_invariant_density_uv(const PhysParams& p, KeplerCoord kc) {
    if (!(p.epsilon > 0.0)) throw DomainError("invariant density requires epsilon > 0");
    if (!(kc.u > -p.e) || !(kc.u <= 1.0)) throw DomainError("invariant density requires -e < u <= 1");
    return log_density_uv_eps(p, kc, p.epsilon);
}

double invariant_density_limit(const PhysParams& p, KeplerCoord kc) { return std::exp(log_invariant_density_uv(p, kc)); }

double invariant_density_limit(const PhysParams& p, Vec2 q) {
    if (q.x == 0.0 && q.y == 0.0) return invariant_density_limit(p, KeplerCoord{1.0, 0.0});
    double u, cv;
    u_and_cos(p, q, u, cv);
    return invariant_density_limit(p, KeplerCoord{u, std::acos(cv)});
}

Vec2 log_invariant_density_grad_uv(const PhysParams& p, KeplerCoord kc) {
    if (!(p.epsilon > 0.0)) throw DomainError("invariant density requires epsilon > 0");
    if (!(kc.u > -p.e) || !(kc.u < 1.0)) throw DomainError("density gradient requires -e < u < 1");
    const double u = kc.u, e = p.e, se = p.sqrt1me2();
    const double su = std::sqrt(1.0 - u * u);
    const double e2 = p.epsilon * p.epsilon;
    const double P = 1.0 + e * u + se * su;
    const double dP = e - se * u / su;
    const double cv = std::cos(kc.v), sv = std::sin(kc.v);
    const double Q = u - e + (e * u - 1.0 + se * su) * cv;
    const double dQ = 1.0 + dP * cv;
    const double k = 2.0 * p.a * p.mu / (e2 * p.lambda);
    const double du = 2.0 * p.lambda / e2 * (dP / P - 1.0 / (e + u)) + k * (dQ / (e + u) - Q / ((e + u) * (e + u)));
    const double dv = -k * (e * u - 1.0 + se * su) * sv / (e + u);
    return {du, dv};
}

double log_invariant_density_normalizer(const PhysParams& p, int cells) {
    if (cells < 2) throw DomainError("normalizer needs at least 2 cells per side");
    const double lo = -3.0 * p.a, hi = 2.0 * p.a;
    const double h = (hi - lo) / cells;
    std::vector<double> logs;
    logs.reserve(static_cast<size_t>(cells + 1) * (cells + 1));
    double peak = -std::numeric_limits<double>::infinity();
    for (int j = 0; j <= cells; ++j) {
        for (int i = 0; i <= cells; ++i) {
            const Vec2 q{lo + i * h, lo + j * h};
            double L;
            if (q.x == 0.0 && q.y == 0.0) {
                L = log_invariant_density_uv(p, {1.0, 0.0});
            } else {
                double u, cv;
                u_and_cos(p, q, u, cv);
                L = log_invariant_density_uv(p, {u, std::acos(cv)});
            }
            const double w = ((i == 0 || i == cells) ? 0.5 : 1.0) * ((j == 0 || j == cells) ? 0.5 : 1.0);
            logs.push_back(L + std::log(w));
            peak = std::max(peak, L);
        }
    }
    double sum = 0.0;
    for (double L : logs) sum += std::exp(L - peak);
    return peak + std::log(sum * h * h);
}

double divergence_uv(const PhysParams& p, KeplerCoord kc) {
    const double u = kc.u, e = p.e;
    const double cv = std::cos(kc.v), sv = std::sin(kc.v);
    const double d1 = u * cv - 1.0;
    const double d2 = e * u + (e + u) * cv + 1.0;
    if (std::abs(d1) < 1e-14 || std::abs(d2) < 1e-14) throw SingularityError("divergence: singular denominator");
    const double root = std::sqrt(std::max(0.0, (1.0 - e * e) * (1.0 - u * u)));
    return p.mu * (e + u) * (e * u + (e + u) * (cv + sv) + root + 1.0) / (4.0 * p.a * e * p.lambda * d1 * d2);
}

double divergence(const PhysParams& p, Vec2 q) {
    check_off_sigma(p, lift(q), "divergence");
    return divergence_uv(p, from_cartesian(p, q));
}

double speed_sq_uv(const PhysParams& p, KeplerCoord kc) {
    const double u = kc.u, e = p.e;
    const double cv = std::cos(kc.v);
    const double d = u * cv - 1.0;
    if (std::abs(d) < 1e-14) throw SingularityError("speed_sq: origin");
    const double root = std::sqrt(std::max(0.0, (1.0 - e * e) * (1.0 - u * u)));
    return p.mu * (e * cv + 1.0) * (root - 1.0) / (p.a * e * e * d);
}

double speed_sq(const PhysParams& p, Vec2 q) {
    if (q.x == 0.0 && q.y == 0.0) throw DomainError("speed_sq: origin excluded");
    double u, cv;
    u_and_cos(p, q, u, cv);
    return speed_sq_uv(p, {u, std::acos(cv)});
}

double SingularRegion3::x_lo(double z) const {
    const double se2 = 1.0 - e * e;
    return -e * (4.0 * a - std::sqrt((16.0 * a * a - z * z) * e * e + z * z)) / se2;
}

double SingularRegion3::x_hi(double z) const { return e * std::abs(z) / std::sqrt(1.0 - e * e); }

bool SingularRegion3::contains_xz(double x, double z) const {
    const double t = (std::hypot(x, z) - x / e) / a;
    return t > 0.0 && t < 4.0;
}

bool SingularRegion3::contains(Vec3 q) const { return q.y == 0.0 && contains_xz(q.x, q.z); }

double SingularRegion3::distance(Vec3 q) const {
    double dxz = 0.0;
    if (!contains_xz(q.x, q.z)) {
        // Upper boundary: two rays from the origin.
        const double se = std::sqrt(1.0 - e * e);
        dxz = std::numeric_limits<double>::infinity();
        for (double s : {1.0, -1.0}) {
            const double dx = e / se, dz = s;
            const double len = std::hypot(dx, dz);
            const double t = std::max(0.0, (q.x * dx + q.z * dz) / len);
            dxz = std::min(dxz, std::hypot(q.x - t * dx / len, q.z - t * dz / len));
        }
        // Lower boundary: the hyperbola branch x = x_lo(z).
        auto d2 = [&](double zz) {
            const double dx = x_lo(zz) - q.x, dz = zz - q.z;
            return dx * dx + dz * dz;
        };
        const double w = std::max(std::sqrt(d2(q.z)), 1e-12);
        constexpr int cells = 32;
        double best_z = q.z, best = d2(q.z);
        for (int i = 0; i <= cells; ++i) {
            const double zz = q.z - w + 2.0 * w * i / cells;
            const double val = d2(zz);
            if (val < best) {
                best = val;
                best_z = zz;
            }
        }
        const double step = 2.0 * w / cells;
        const auto r = boost::math::tools::brent_find_minima(d2, best_z - step, best_z + step, 40);
        dxz = std::min(dxz, std::sqrt(std::min(best, r.second)));
    }
    return std::hypot(q.y, dxz);
}

std::vector<Vec2> SingularRegion3::boundary(double z_max, int count) const {
    std::vector<Vec2> pts;
    pts.reserve(2 * static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double z = -z_max + 2.0 * z_max * i / std::max(count - 1, 1);
        pts.push_back({x_lo(z), z});
    }
    for (int i = 0; i < count; ++i) {
        const double z = -z_max + 2.0 * z_max * i / std::max(count - 1, 1);
        pts.push_back({x_hi(z), z});
    }
    return pts;
}

SingularRegion3 singular_region3(const PhysParams& p) {
    SingularRegion3 s;
    s.a = p.a;
    s.e = p.e;
    return s;
}

double similarity_residual(const PhysParams& p, Vec2 q, int sign, double h) {
    if (!(p.epsilon > 0.0)) throw DomainError("similarity_residual requires epsilon > 0");
    const double e2 = p.epsilon * p.epsilon;
    const double wrap = 2.0 * std::numbers::pi * p.lambda;
    const RSValue c = rs_functions(p, q);
    // log(psi(q + d) / psi(q)), with the multivalued phase unwrapped.
    auto dlog = [&](Vec2 d) {
        const RSValue o = rs_functions(p, q + d);
        double ds = o.s_val - c.s_val;
        ds -= wrap * std::round(ds / wrap);
        return (o.r_val - c.r_val + sign * ds) / e2;
    };
    const Vec2 ex{h, 0.0}, ey{0.0, h};
    const double lap = (std::exp(dlog(ex)) + std::exp(dlog(-1.0 * ex)) + std::exp(dlog(ey)) +
                        std::exp(dlog(-1.0 * ey)) - 4.0) /
                       (h * h);
    const Vec2 b = drift2(p, q);
    const double div = (drift2(p, q + ex).x - drift2(p, q - ex).x + drift2(p, q + ey).y - drift2(p, q - ey).y) / (2.0 * h);
    return 0.5 * (-e2 * e2 * lap + dot(b, b) + e2 * div);
}

}  // namespace nk
