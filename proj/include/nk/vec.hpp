#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace nk {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

inline Vec3 lift(Vec2 p) { return {p.x, p.y, 0.0}; }
inline Vec2 planar(Vec3 p) { return {p.x, p.y}; }

using CVec3 = std::array<std::complex<double>, 3>;

// Row-major 2x2: {{a00, a01}, {a10, a11}}.
struct Mat2 {
    double a00 = 0.0, a01 = 0.0, a10 = 0.0, a11 = 0.0;

    double det() const { return a00 * a11 - a01 * a10; }
    Vec2 operator*(Vec2 v) const { return {a00 * v.x + a01 * v.y, a10 * v.x + a11 * v.y}; }
    Vec2 solve(Vec2 r) const {
        const double d = det();
        return {(a11 * r.x - a01 * r.y) / d, (a00 * r.y - a10 * r.x) / d};
    }
    Vec2 solve_transpose(Vec2 r) const {
        const double d = det();
        return {(a11 * r.x - a10 * r.y) / d, (a00 * r.y - a01 * r.x) / d};
    }
};

}  // namespace nk
