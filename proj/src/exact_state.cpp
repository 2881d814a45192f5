#include "nk/exact_state.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nk/errors.hpp"

namespace nk {

namespace {

constexpr double kPoleThreshold = 1e-12;

// Upward recurrence k L_k = (2k - 1 - z) L_{k-1} - (k - 1) L_{k-2}, rescaled whenever
// the pair grows large or small. Leaves (L_m, L_{m-1}) times exp(-log_scale).
template <class T>
struct LaguerrePair {
    T cur{1.0};
    T prev{0.0};
    double log_scale = 0.0;
};

template <class T>
LaguerrePair<T> laguerre_pair(int m, T z) {
    LaguerrePair<T> r;
    if (m == 0) return r;
    r.prev = T(1.0);
    r.cur = T(1.0) - z;
    for (int k = 2; k <= m; ++k) {
        T next = ((2.0 * k - 1.0 - z) * r.cur - (k - 1.0) * r.prev) / static_cast<double>(k);
        r.prev = r.cur;
        r.cur = next;
        const double s = std::max(std::abs(r.cur), std::abs(r.prev));
        if (s > 1e100 || (s < 1e-100 && s > 0.0)) {
            r.cur /= s;
            r.prev /= s;
            r.log_scale += std::log(s);
        }
    }
    return r;
}

}  // namespace

cplx nu(const PhysParams& p, Vec3 q) {
    const double r = norm(q);
    if (r == 0.0) throw DomainError("nu: origin excluded");
    const double k = p.mu / (p.lambda * p.lambda);
    return {k * (r - q.x / p.e), -k * q.y * p.sqrt1me2() / p.e};
}

cplx laguerre_ratio(int n, cplx z) {
    if (n < 1) throw DomainError("laguerre_ratio: n must be >= 1");
    if (n == 1) return {0.0, 0.0};
    const int m = n - 1;
    if (std::abs(z) < 1e-3) {
        // Derivative recurrence L'_k = L'_{k-1} - L_{k-1}; avoids dividing by z.
        cplx lp = 1.0, lc = 1.0 - z, dc = -1.0;
        for (int k = 2; k <= m; ++k) {
            cplx ln = ((2.0 * k - 1.0 - z) * lc - (k - 1.0) * lp) / static_cast<double>(k);
            cplx dn = dc - lc;
            lp = lc;
            lc = ln;
            dc = dn;
        }
        if (std::abs(lc) < kPoleThreshold * std::max(std::abs(lc), std::abs(lp)))
            throw PoleError("laguerre_ratio: argument at a Laguerre root");
        return dc / lc;
    }
    const auto pr = laguerre_pair(m, z);
    if (!(std::abs(pr.cur) >= kPoleThreshold * std::max(std::abs(pr.cur), std::abs(pr.prev))))
        throw PoleError("laguerre_ratio: argument at a Laguerre root");
    return (static_cast<double>(m) / z) * (1.0 - pr.prev / pr.cur);
}

double laguerre_log_abs(int m, cplx z) {
    if (m < 0) throw DomainError("laguerre_log_abs: m must be >= 0");
    const auto pr = laguerre_pair(m, z);
    const double a = std::abs(pr.cur);
    if (a == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(a) + pr.log_scale;
}

double laguerre_scaled_residual(int m, double x) {
    const auto pr = laguerre_pair(m, x);
    return std::abs(pr.cur) / std::max(std::abs(pr.cur), std::abs(pr.prev));
}

CVec3 z_field_exact(const PhysParams& p, Vec3 q) {
    const int n = p.require_n();
    const cplx nuv = nu(p, q);
    const cplx ratio = laguerre_ratio(n, static_cast<double>(n) * nuv);
    const double r = norm(q);
    const cplx I(0.0, 1.0);
    const cplx radial = I * (p.mu / p.lambda) * (1.0 - ratio) / r;
    const cplx axial = (p.mu / (p.lambda * p.e)) * ratio;
    return {radial * q.x + axial * I, radial * q.y - axial * p.sqrt1me2(), radial * q.z};
}

Vec3 drift_exact(const PhysParams& p, Vec3 q) {
    const CVec3 Z = z_field_exact(p, q);
    return {Z[0].real() - Z[0].imag(), Z[1].real() - Z[1].imag(), Z[2].real() - Z[2].imag()};
}

std::vector<double> laguerre_roots(int m) {
    if (m < 1 || m > 199) throw DomainError("laguerre_roots: supported degrees are 1..199");
    Eigen::VectorXd diag(m), sub(std::max(m - 1, 0));
    for (int k = 0; k < m; ++k) diag(k) = 2.0 * k + 1.0;
    for (int k = 1; k < m; ++k) sub(k - 1) = k;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    std::vector<double> roots(es.eigenvalues().data(), es.eigenvalues().data() + m);
    for (double& x : roots) {
        for (int it = 0; it < 8; ++it) {
            const auto pr = laguerre_pair(m, x);
            if (pr.cur == 0.0) break;
            // L'_m / L_m = (m / x)(1 - L_{m-1} / L_m)
            const double ratio = (m / x) * (1.0 - pr.prev / pr.cur);
            const double step = 1.0 / ratio;
            x -= step;
            if (std::abs(step) < 1e-15 * x) break;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<Vec2> NodalCurve::sample(const PhysParams& p, int count, double r_max) const {
    // Polar form rho (1 - cos(theta) / e) = level * a, valid where cos(theta) < e.
    std::vector<Vec2> pts;
    const double c = level * p.lambda * p.lambda / p.mu;
    const double t0 = std::acos(p.e);
    for (int i = 1; i < count + 1; ++i) {
        const double th = t0 + (2.0 * std::numbers::pi - 2.0 * t0) * i / (count + 1);
        const double rho = c / (1.0 - std::cos(th) / p.e);
        if (rho <= r_max) pts.push_back({rho * std::cos(th), rho * std::sin(th)});
    }
    return pts;
}

NodalCurveSet nodal_curves(const PhysParams& p) {
    const int n = p.require_n();
    if (n < 2) throw DomainError("nodal_curves: n must be >= 2");
    NodalCurveSet set;
    set.n = n;
    set.roots = laguerre_roots(n - 1);
    for (size_t k = 0; k < set.roots.size(); ++k) {
        NodalCurve c;
        c.k = static_cast<int>(k) + 1;
        c.root = set.roots[k];
        c.level = c.root / n;
        c.eccentricity = 1.0 / p.e;
        set.curves.push_back(c);
    }
    return set;
}

double log_invariant_density_exact(const PhysParams& p, Vec3 q) {
    const int n = p.require_n();
    const double r = norm(q);
    const double k = p.mu / (p.lambda * p.lambda);
    const cplx nuv{k * (r - q.x / p.e), -k * q.y * p.sqrt1me2() / p.e};
    return -2.0 * n * k * r + 2.0 * laguerre_log_abs(n - 1, static_cast<double>(n) * nuv);
}

double invariant_density_exact(const PhysParams& p, Vec3 q) { return std::exp(log_invariant_density_exact(p, q)); }

}  // namespace nk
