#pragma once

// Fixed-step path driver shared by the deterministic and stochastic integrators.

#include <cmath>
#include <optional>

#include "nk/coords.hpp"
#include "nk/core.hpp"
#include "nk/limit_state.hpp"
#include "nk/trajectory.hpp"

namespace nk::detail {

inline bool finite(Vec3 q) { return std::isfinite(q.x) && std::isfinite(q.y) && std::isfinite(q.z); }

// Buffer test for planar paths: inside E_{1-delta}, or crossing y = 0 on the closed segment.
inline bool planar_buffer_hit(const PhysParams& p, double delta, Vec3 prev, Vec3 cur) {
    const Vec2 q = planar(cur);
    if (family_level(p, 1.0 - delta, q) < 0.0) return true;
    if ((prev.y > 0.0 && cur.y < 0.0) || (prev.y < 0.0 && cur.y > 0.0)) {
        const double s = prev.y / (prev.y - cur.y);
        const double xc = prev.x + s * (cur.x - prev.x);
        const auto seg = singular_segment(p);
        if (xc >= seg.x_min_end && xc <= seg.x_max_end) return true;
    }
    return false;
}

// Spatial buffer: within delta*a of the singular region, or crossing y = 0 inside it.
inline bool spatial_buffer_hit(const SingularRegion3& sig, double delta, Vec3 prev, Vec3 cur) {
    const double d = delta * sig.a;
    if (std::abs(cur.y) < d && sig.distance(cur) < d) return true;
    if ((prev.y > 0.0 && cur.y < 0.0) || (prev.y < 0.0 && cur.y > 0.0)) {
        const double s = prev.y / (prev.y - cur.y);
        if (sig.contains_xz(prev.x + s * (cur.x - prev.x), prev.z + s * (cur.z - prev.z))) return true;
    }
    return false;
}

inline bool near_origin(const PhysParams& p, Vec3 q) { return norm(q) < 1e-4 * p.a; }

// Step(x, k, h, dB) -> next state; dB receives the Brownian increment (zero for ODEs).
// Check(prev, cur) -> event if the path must stop at cur.
template <class Step, class Check>
Trajectory run_fixed_steps(const PhysParams& p, int dimension, Vec3 start, double t_end, double dt, int record_every,
                           bool record_uv, bool record_noise, Step&& step, Check&& check) {
    Trajectory tr;
    tr.dimension = dimension;
    auto uv_of = [&](Vec3 q) -> std::optional<KeplerCoord> {
        if (dimension == 3 && q.z != 0.0) return std::nullopt;
        try {
            return from_cartesian(p, planar(q));
        } catch (const std::exception&) {
            return std::nullopt;
        }
    };
    Vec3 B{};
    auto record = [&](double t, Vec3 q) {
        tr.times.push_back(t);
        tr.states.push_back(q);
        if (record_uv) tr.uv.push_back(uv_of(q));
        if (record_noise) tr.noise.push_back(B);
    };
    record(0.0, start);
    if (auto ev = check(start, start)) {
        tr.events.push_back({0.0, *ev});
        return tr;
    }
    const long steps = std::max(1L, static_cast<long>(std::ceil(t_end / dt - 1e-9)));
    Vec3 x = start;
    for (long k = 0; k < steps; ++k) {
        const double t0 = k * dt;
        const double t1 = (k + 1 == steps) ? t_end : (k + 1) * dt;
        Vec3 dB{};
        const Vec3 next = step(x, k, t1 - t0, dB);
        B = B + dB;
        const Vec3 prev = x;
        x = next;
        if (!finite(x)) {
            // Keep the last finite state as the final record.
            if (tr.times.back() != t0) record(t0, prev);
            tr.events.push_back({t1, EventKind::non_finite});
            return tr;
        }
        if (auto ev = check(prev, x)) {
            record(t1, x);
            tr.events.push_back({t1, *ev});
            return tr;
        }
        if ((k + 1) % record_every == 0 || k + 1 == steps) record(t1, x);
    }
    tr.events.push_back({t_end, EventKind::horizon});
    return tr;
}

}  // namespace nk::detail
