#include "nk/core.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nk/errors.hpp"

namespace nk {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
}

}  // namespace

double PhysParams::sqrt1me2() const { return std::sqrt(1.0 - e * e); }

int PhysParams::require_n() const {
    if (!n) throw DomainError("quantum number n is required");
    return *n;
}

PhysParams params_new(double mu, double lambda, double e, double epsilon, std::optional<int> n) {
    require(std::isfinite(mu) && mu > 0.0, "mu must be > 0");
    require(std::isfinite(lambda) && lambda > 0.0, "lambda must be > 0");
    require(std::isfinite(e) && e > 0.0 && e < 1.0, "e must satisfy 0 < e < 1");
    require(std::isfinite(epsilon) && epsilon >= 0.0, "epsilon must be >= 0");
    if (n) {
        require(*n >= 1, "n must be >= 1");
        const double bohr = *n * epsilon * epsilon;
        if (std::abs(bohr - lambda) > 1e-9 * lambda) {
            std::ostringstream os;
            os.precision(17);
            os << "n*epsilon^2 = " << bohr << " deviates from lambda = " << lambda << " by more than 1e-9 relative";
            throw InconsistencyError(os.str());
        }
    }
    PhysParams p;
    p.mu = mu;
    p.lambda = lambda;
    p.e = e;
    p.epsilon = epsilon;
    p.n = n;
    p.a = lambda * lambda / mu;
    p.energy = -mu * mu / (2.0 * lambda * lambda);
    return p;
}

PhysParams with_epsilon(const PhysParams& p, double epsilon) {
    return params_new(p.mu, p.lambda, p.e, epsilon);
}

Vec2 kepler_ellipse_point(const PhysParams& p, double theta) {
    const double r = p.a * (1.0 - p.e * p.e) / (1.0 + p.e * std::cos(theta));
    return {r * std::cos(theta), r * std::sin(theta)};
}

double distance_to_kepler_ellipse(const PhysParams& p, Vec2 q) {
    const double b = p.a * p.sqrt1me2();
    auto d2 = [&](double t) {
        const double dx = p.a * std::cos(t) - p.a * p.e - q.x;
        const double dy = b * std::sin(t) - q.y;
        return dx * dx + dy * dy;
    };
    constexpr int cells = 64;
    const double step = 2.0 * std::numbers::pi / cells;
    int best = 0;
    double best_val = d2(0.0);
    for (int i = 1; i < cells; ++i) {
        const double val = d2(i * step);
        if (val < best_val) {
            best_val = val;
            best = i;
        }
    }
    const auto r = boost::math::tools::brent_find_minima(d2, (best - 1) * step, (best + 1) * step, 52);
    return std::sqrt(std::min(r.second, best_val));
}

double EllipseSpec::semi_minor() const { return semi_major * std::sqrt(1.0 - c * c); }

EllipseSpec ellipse_family(const PhysParams& p, double c) {
    if (!(c > -p.e) || !(c <= 1.0)) throw DomainError("family parameter c must satisfy -e < c <= 1");
    EllipseSpec s;
    s.c = c;
    s.semi_major = 2.0 * p.a * p.e / (p.e + c);
    s.eccentricity = std::abs(c);
    s.center = {-s.semi_major * c, 0.0};
    s.focus1 = {0.0, 0.0};
    s.focus2 = {-2.0 * s.semi_major * c, 0.0};
    s.degenerate = (c == 1.0);
    return s;
}

SingularSegment singular_segment(const PhysParams& p) {
    SingularSegment s;
    s.x_min_end = -4.0 * p.a * p.e / (1.0 + p.e);
    s.x_max_end = 0.0;
    s.attractive_lo = s.x_min_end;
    s.attractive_hi = -2.0 * p.a * p.e / (1.0 + p.e);
    return s;
}

bool SingularSegment::contains(Vec2 q) const { return q.y == 0.0 && q.x > x_min_end && q.x < x_max_end; }

bool SingularSegment::contains_closure(Vec2 q) const {
    return q.y == 0.0 && q.x >= x_min_end && q.x <= x_max_end;
}

}  // namespace nk
