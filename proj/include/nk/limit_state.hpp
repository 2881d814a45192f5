#pragma once

#include <vector>

#include "nk/coords.hpp"
#include "nk/core.hpp"
#include "nk/vec.hpp"

namespace nk {

CVec3 z_field_limit(const PhysParams& p, Vec3 q);

AlphaBeta alpha_beta_cartesian(const PhysParams& p, Vec3 q);
AlphaBeta alpha_beta_cartesian(const PhysParams& p, Vec2 q);

Vec3 drift3(const PhysParams& p, Vec3 q);
Vec2 drift2(const PhysParams& p, Vec2 q);

// Drift from a precomputed (alpha, beta); no domain checks.
Vec3 drift_from_alpha_beta(const PhysParams& p, Vec3 q, AlphaBeta ab);

struct RSValue {
    double r_val = 0.0;  // eps^2 R
    double s_val = 0.0;  // eps^2 S
};

RSValue rs_functions(const PhysParams& p, Vec2 q);

// log of exp(2R) in (u,v), using params.epsilon (must be > 0).
double log_invariant_density_uv(const PhysParams& p, KeplerCoord kc);
double invariant_density_limit(const PhysParams& p, KeplerCoord kc);
double invariant_density_limit(const PhysParams& p, Vec2 q);

// d/du, d/dv of the log density in (u,v).
Vec2 log_invariant_density_grad_uv(const PhysParams& p, KeplerCoord kc);

// Log of the trapezoid integral of the unnormalised density over [-3a, 2a]^2
// (log form because exp(2R) overflows for small epsilon).
double log_invariant_density_normalizer(const PhysParams& p, int cells_per_side = 400);

double divergence_uv(const PhysParams& p, KeplerCoord kc);
double divergence(const PhysParams& p, Vec2 q);

double speed_sq_uv(const PhysParams& p, KeplerCoord kc);
double speed_sq(const PhysParams& p, Vec2 q);

// The three dimensional singular region inside the plane y = 0.
struct SingularRegion3 {
    double a = 1.0;
    double e = 0.5;

    double x_lo(double z) const;
    double x_hi(double z) const;
    bool contains(Vec3 q) const;            // y == 0, x_lo(z) < x < x_hi(z)
    bool contains_xz(double x, double z) const;
    double distance(Vec3 q) const;          // Euclidean distance to the region
    std::vector<Vec2> boundary(double z_max, int count) const;  // (x, z) pairs, lower then upper
};

SingularRegion3 singular_region3(const PhysParams& p);

// (H psi)/psi for the formal Hamiltonian 0.5(-eps^4 Lap + b^2 + eps^2 div b)
// with psi = exp(R + sign*S), evaluated with central differences of step h.
double similarity_residual(const PhysParams& p, Vec2 q, int sign, double h = 1e-4);

}  // namespace nk
