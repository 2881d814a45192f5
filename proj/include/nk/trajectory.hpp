#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nk/coords.hpp"
#include "nk/vec.hpp"

namespace nk {

enum class EventKind { sigma_hit, origin_approach, horizon, non_finite };

const char* event_name(EventKind k);

struct Event {
    double t = 0.0;
    EventKind kind = EventKind::horizon;
};

struct Trajectory {
    int dimension = 2;
    std::vector<double> times;
    std::vector<Vec3> states;
    std::vector<Event> events;
    std::vector<std::optional<KeplerCoord>> uv;  // empty unless requested
    std::vector<Vec3> noise;                     // accumulated Brownian path, empty unless requested

    bool terminated_early() const;  // any event other than horizon
    const Vec3& final_state() const { return states.back(); }
    double final_time() const { return times.back(); }
};

}  // namespace nk
