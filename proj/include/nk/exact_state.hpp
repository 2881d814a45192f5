#pragma once

#include <complex>
#include <vector>

#include "nk/core.hpp"
#include "nk/vec.hpp"

namespace nk {

using cplx = std::complex<double>;

// Complex argument of the Laguerre factor (before the factor n).
cplx nu(const PhysParams& p, Vec3 q);

// L'_{n-1}(z) / L_{n-1}(z) by upward recurrence with rescaling.
// Throws PoleError when z is numerically a root of L_{n-1}.
cplx laguerre_ratio(int n, cplx z);

// log|L_m(z)| via the rescaled recurrence (-inf exactly at a root).
double laguerre_log_abs(int m, cplx z);

CVec3 z_field_exact(const PhysParams& p, Vec3 q);
Vec3 drift_exact(const PhysParams& p, Vec3 q);

struct NodalCurve {
    int k = 0;
    double root = 0.0;          // k-th positive root of L_{n-1}
    double level = 0.0;         // root / n, the value of (mu/lambda^2)(r - x/e) on the curve
    double eccentricity = 0.0;  // 1/e
    Vec2 focus;                 // origin

    // Points (x, z) of the curve in the y = 0 plane, parametrised by polar angle.
    std::vector<Vec2> sample(const PhysParams& p, int count, double r_max) const;
};

struct NodalCurveSet {
    int n = 0;
    std::vector<double> roots;
    std::vector<NodalCurve> curves;
};

// |L_m(x)| relative to max(|L_m|, |L_{m-1}|) from the rescaled recurrence.
double laguerre_scaled_residual(int m, double x);

// Roots of L_{m} for m up to 199 (Golub-Welsch plus Newton polish), ascending.
std::vector<double> laguerre_roots(int m);

NodalCurveSet nodal_curves(const PhysParams& p);

// exp(-2 n mu r / lambda^2) |L_{n-1}(n nu)|^2, unnormalised.
double invariant_density_exact(const PhysParams& p, Vec3 q);
double log_invariant_density_exact(const PhysParams& p, Vec3 q);

}  // namespace nk
