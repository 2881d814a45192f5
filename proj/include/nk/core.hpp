#pragma once

#include <optional>

#include "nk/vec.hpp"

namespace nk {

struct PhysParams {
    double mu = 1.0;
    double lambda = 1.0;
    double e = 0.5;
    double epsilon = 0.0;
    std::optional<int> n;
    double a = 1.0;        // lambda^2 / mu
    double energy = -0.5;  // -mu^2 / (2 lambda^2)

    double sqrt1me2() const;
    int require_n() const;  // throws DomainError when n is absent
};

// Throws DomainError on bad bounds, InconsistencyError when n*epsilon^2 != lambda.
PhysParams params_new(double mu, double lambda, double e, double epsilon,
                      std::optional<int> n = std::nullopt);

// Same parameters with a different diffusion scale (n dropped).
PhysParams with_epsilon(const PhysParams& p, double epsilon);

// Point on the Kepler ellipse at polar angle theta, focus at origin.
Vec2 kepler_ellipse_point(const PhysParams& p, double theta);

// Euclidean distance from q to the Kepler ellipse.
double distance_to_kepler_ellipse(const PhysParams& p, Vec2 q);

struct EllipseSpec {
    double c = 0.0;
    double semi_major = 0.0;
    double eccentricity = 0.0;
    Vec2 focus1;
    Vec2 focus2;
    Vec2 center;
    bool degenerate = false;  // c == 1: collapses onto the closure of the singular segment

    double semi_minor() const;
};

EllipseSpec ellipse_family(const PhysParams& p, double c);

struct SingularSegment {
    double x_min_end = 0.0;
    double x_max_end = 0.0;
    double attractive_lo = 0.0;
    double attractive_hi = 0.0;

    bool contains(Vec2 q) const;         // open segment, y == 0
    bool contains_closure(Vec2 q) const; // closed segment
};

SingularSegment singular_segment(const PhysParams& p);

}  // namespace nk
