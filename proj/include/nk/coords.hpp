#pragma once

#include "nk/core.hpp"
#include "nk/vec.hpp"

namespace nk {

struct KeplerCoord {
    double u = 0.0;
    double v = 0.0;
};

struct AlphaBeta {
    double alpha = 0.0;
    double beta = 0.0;
};

double normalize_angle(double v);  // into [0, 2pi)

Vec2 to_cartesian(const PhysParams& p, KeplerCoord kc);

// Numerical inverse. DomainError on the closed singular segment or origin,
// NoConvergenceError if the roundtrip residual cannot be brought below tolerance.
KeplerCoord from_cartesian(const PhysParams& p, Vec2 q);

// Signed level function of the family: negative inside E_c, zero on it.
double family_level(const PhysParams& p, double c, Vec2 q);

// u coordinate only; allows points on the singular segment (returns 1).
double u_coordinate(const PhysParams& p, Vec2 q);

AlphaBeta alpha_beta_uv(const PhysParams& p, KeplerCoord kc);

// d(x,y)/d(u,v); requires u < 1.
Mat2 jacobian(const PhysParams& p, KeplerCoord kc);

}  // namespace nk
