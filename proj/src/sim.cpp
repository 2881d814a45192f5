#include "nk/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <exception>
#include <mutex>
#include <thread>

#include "nk/dynamics.hpp"
#include "nk/errors.hpp"
#include "nk/limit_state.hpp"
#include "nk/rng.hpp"
#include "stepper.hpp"

namespace nk {

namespace {

std::optional<EventKind> buffer_event(const PhysParams& p, const SingularRegion3& sig, int dim, double delta, Vec3 prev,
                                      Vec3 cur) {
    if (detail::near_origin(p, cur)) return EventKind::origin_approach;
    const bool hit = dim == 2 ? detail::planar_buffer_hit(p, delta, prev, cur)
                              : detail::spatial_buffer_hit(sig, delta, prev, cur);
    if (hit) return EventKind::sigma_hit;
    return std::nullopt;
}

Vec3 drift_any(const PhysParams& p, int dim, Vec3 x) {
    if (dim == 2) return lift(drift2(p, planar(x)));
    return drift3(p, x);
}

Vec3 noise_vector(std::uint64_t key, long step, int dim, double scale) {
    return {scale * counter_normal(key, static_cast<std::uint64_t>(step), 0),
            scale * counter_normal(key, static_cast<std::uint64_t>(step), 1),
            dim == 3 ? scale * counter_normal(key, static_cast<std::uint64_t>(step), 2) : 0.0};
}

void check_start(const PhysParams& p, Vec3 start, const SimConfig& cfg) {
    if (cfg.dimension == 2 && start.z != 0.0) throw ConfigError("planar simulation needs z = 0 at start");
    (void)alpha_beta_cartesian(p, start);
    const SingularRegion3 sig = singular_region3(p);
    if (buffer_event(p, sig, cfg.dimension, cfg.delta, start, start))
        throw DomainError("start point lies inside the singularity buffer");
}

template <class F>
void parallel_for(int count, F&& body) {
    const int workers = std::max(1, std::min<int>(count, static_cast<int>(std::thread::hardware_concurrency())));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

const char* event_name(EventKind k) {
    switch (k) {
        case EventKind::sigma_hit: return "sigma_hit";
        case EventKind::origin_approach: return "origin_approach";
        case EventKind::horizon: return "horizon";
        case EventKind::non_finite: return "non_finite";
    }
    return "unknown";
}

bool Trajectory::terminated_early() const {
    return std::any_of(events.begin(), events.end(), [](const Event& e) { return e.kind != EventKind::horizon; });
}

void SimConfig::validate(const PhysParams& p) const {
    if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
    if (!(t_max > 0.0)) throw ConfigError("t_max must be > 0");
    if (!(delta > 0.0) || !(delta < 1.0 + p.e)) throw ConfigError("delta must satisfy 0 < delta < 1 + e");
    if (dimension != 2 && dimension != 3) throw ConfigError("dimension must be 2 or 3");
    if (ensemble_size < 1) throw ConfigError("ensemble_size must be >= 1");
    if (record_every < 1) throw ConfigError("record_every must be >= 1");
}

Trajectory simulate_sde(const PhysParams& p, Vec3 start, const SimConfig& cfg, std::uint64_t path_index) {
    cfg.validate(p);
    check_start(p, start, cfg);
    const std::uint64_t key = path_key(cfg.seed, path_index);
    const SingularRegion3 sig = singular_region3(p);
    const int dim = cfg.dimension;
    auto step = [&](Vec3 x, long k, double h, Vec3& dB) {
        dB = noise_vector(key, k, dim, std::sqrt(h));
        try {
            return x + h * drift_any(p, dim, x) + p.epsilon * dB;
        } catch (const DomainError&) {
            return Vec3{std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0};
        }
    };
    auto check = [&](Vec3 prev, Vec3 cur) { return buffer_event(p, sig, dim, cfg.delta, prev, cur); };
    return detail::run_fixed_steps(p, dim, start, cfg.t_max, cfg.dt, cfg.record_every, cfg.record_uv, cfg.record_noise,
                                   step, check);
}

void Histogram::reset() { counts.assign(static_cast<size_t>(nx) * ny, 0); }

void Histogram::add(Vec2 q) {
    if (counts.empty()) reset();
    if (!(q.x >= xmin && q.x < xmax && q.y >= ymin && q.y < ymax)) return;
    const int ix = std::min(nx - 1, static_cast<int>((q.x - xmin) / (xmax - xmin) * nx));
    const int iy = std::min(ny - 1, static_cast<int>((q.y - ymin) / (ymax - ymin) * ny));
    ++counts[static_cast<size_t>(iy) * nx + ix];
}

long Histogram::total() const {
    long s = 0;
    for (long c : counts) s += c;
    return s;
}

Vec2 Histogram::cell_center(int ix, int iy) const {
    return {xmin + (ix + 0.5) * (xmax - xmin) / nx, ymin + (iy + 0.5) * (ymax - ymin) / ny};
}

void Histogram::argmax(int& ix, int& iy) const {
    ix = iy = 0;
    long best = -1;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            if (at(i, j) > best) {
                best = at(i, j);
                ix = i;
                iy = j;
            }
}

EnsembleSummary simulate_ensemble(const PhysParams& p, const StartDistribution& start, const SimConfig& cfg,
                                  Histogram grid, bool keep_paths) {
    cfg.validate(p);
    const int n = cfg.ensemble_size;
    EnsembleSummary out;
    out.finals.resize(n);
    std::vector<char> hit(n, 0);
    if (keep_paths) out.paths.resize(n);
    parallel_for(n, [&](int i) {
        Trajectory tr = simulate_sde(p, start(i), cfg, static_cast<std::uint64_t>(i));
        out.finals[i] = tr.final_state();
        hit[i] = tr.terminated_early();
        if (keep_paths) out.paths[i] = std::move(tr);
    });
    out.histogram = grid;
    out.histogram.reset();
    for (int i = 0; i < n; ++i) {
        out.hit.push_back(hit[i] != 0);
        if (hit[i]) ++out.n_hit;
        else out.histogram.add(planar(out.finals[i]));
    }
    out.hit_fraction = static_cast<double>(out.n_hit) / n;
    return out;
}

WilsonInterval wilson_interval(int k, int n, double z) {
    if (n <= 0) return {0.0, 1.0};
    const double ph = static_cast<double>(k) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (ph + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

HittingEstimate hitting_probability(const PhysParams& p, Vec3 start, const SimConfig& cfg, double t) {
    if (!(t >= 0.0)) throw ConfigError("hitting time horizon must be >= 0");
    HittingEstimate h;
    h.total = cfg.ensemble_size;
    if (t == 0.0) {
        cfg.validate(p);
        check_start(p, start, cfg);
        h.survived = h.total;
        h.estimate = h.lo = h.hi = 1.0;
        return h;
    }
    SimConfig c = cfg;
    c.t_max = t;
    c.record_every = std::numeric_limits<int>::max();
    const auto ens = simulate_ensemble(p, [start](int) { return start; }, c);
    h.survived = h.total - ens.n_hit;
    h.estimate = static_cast<double>(h.survived) / h.total;
    const auto w = wilson_interval(h.survived, h.total);
    h.lo = w.lo;
    h.hi = w.hi;
    h.survival_positive = h.survived > 0;
    return h;
}

std::vector<CouplingRow> coupling_convergence(const PhysParams& p, Vec2 start, const std::vector<double>& eps_list,
                                              const SimConfig& cfg, double slack) {
    cfg.validate(p);
    SimConfig c = cfg;
    c.dimension = 2;
    check_start(p, lift(start), c);
    for (double e : eps_list)
        if (!(e >= 0.0)) throw ConfigError("coupling: epsilon values must be >= 0");
    const SingularRegion3 sig = singular_region3(p);

    // The noise-free Euler path is shared by every path and every epsilon.
    const long steps = std::max(1L, static_cast<long>(std::ceil(c.t_max / c.dt - 1e-9)));
    std::vector<Vec3> x0(static_cast<size_t>(steps) + 1);
    x0[0] = lift(start);
    long x0_alive = steps;
    for (long k = 0; k < steps; ++k) {
        const double h = (k + 1 == steps) ? c.t_max - k * c.dt : c.dt;
        x0[k + 1] = x0[k] + h * lift(drift2(p, planar(x0[k])));
        if (!detail::finite(x0[k + 1]) || buffer_event(p, sig, 2, c.delta, x0[k], x0[k + 1])) {
            x0_alive = k;
            break;
        }
    }

    std::vector<CouplingRow> rows;
    for (double eps : eps_list) {
        CouplingRow row;
        row.epsilon = eps;
        std::vector<double> dist(c.ensemble_size, 0.0), noise(c.ensemble_size, 0.0);
        std::vector<char> kept(c.ensemble_size, 0);
        parallel_for(c.ensemble_size, [&](int i) {
            if (x0_alive < steps) return;
            const std::uint64_t key = path_key(c.seed, static_cast<std::uint64_t>(i));
            Vec3 x = lift(start), B{};
            double sd = 0.0, sb = 0.0;
            for (long k = 0; k < steps; ++k) {
                const double h = (k + 1 == steps) ? c.t_max - k * c.dt : c.dt;
                const Vec3 dB = noise_vector(key, k, 2, std::sqrt(h));
                Vec3 next;
                try {
                    next = x + h * lift(drift2(p, planar(x))) + eps * dB;
                } catch (const DomainError&) {
                    return;
                }
                if (!detail::finite(next) || buffer_event(p, sig, 2, c.delta, x, next)) return;
                x = next;
                B = B + dB;
                sd = std::max(sd, norm(x - x0[k + 1]));
                sb = std::max(sb, norm(B));
            }
            dist[i] = sd;
            noise[i] = sb;
            kept[i] = 1;
        });
        double sum = 0.0;
        for (int i = 0; i < c.ensemble_size; ++i) {
            if (!kept[i]) {
                ++row.excluded;
                continue;
            }
            ++row.retained;
            row.sup_dist.push_back(dist[i]);
            row.sup_noise.push_back(noise[i]);
            sum += dist[i];
            const double bound = 3.0 * eps * noise[i];
            if (bound > 0.0) row.max_ratio = std::max(row.max_ratio, dist[i] / bound);
            if (dist[i] > bound + slack) row.bound_holds = false;
        }
        row.mean_sup_dist = row.retained ? sum / row.retained : 0.0;
        rows.push_back(std::move(row));
    }
    return rows;
}

BlipReport z_blip_experiment(const PhysParams& p, Vec3 start, const SimConfig& cfg, int periods) {
    if (periods < 1) throw ConfigError("periods must be >= 1");
    SimConfig c = cfg;
    c.dimension = 3;
    c.validate(p);
    const double T = period(p);
    BlipReport rep;
    if (p.epsilon == 0.0) {
        OdeOptions opt;
        opt.dt = c.dt;
        opt.delta = c.delta;
        opt.record_every = c.record_every;
        rep.trajectory = integrate_ode3(p, start, periods * T, opt);
    } else {
        c.t_max = periods * T;
        rep.trajectory = simulate_sde(p, start, c);
    }
    const auto& tr = rep.trajectory;
    const size_t n = tr.states.size();
    rep.maxima_per_period.assign(periods, 0);
    rep.period_peaks.assign(periods, 0.0);
    auto period_of = [&](double t) { return std::min(periods - 1, static_cast<int>(std::floor(t / T))); };
    for (size_t i = 0; i < n; ++i) {
        const double z = std::abs(tr.states[i].z);
        const int k = period_of(tr.times[i]);
        rep.period_peaks[k] = std::max(rep.period_peaks[k], z);
        if (i > 0 && i + 1 < n && z > std::abs(tr.states[i - 1].z) && z >= std::abs(tr.states[i + 1].z))
            ++rep.maxima_per_period[k];
        try {
            const AlphaBeta ab = alpha_beta_cartesian(p, tr.states[i]);
            rep.alpha_beta_plus1.push_back(ab.alpha + ab.beta + 1.0);
            rep.bz.push_back(drift_from_alpha_beta(p, tr.states[i], ab).z);
        } catch (const Error&) {
            rep.alpha_beta_plus1.push_back(std::numeric_limits<double>::quiet_NaN());
            rep.bz.push_back(std::numeric_limits<double>::quiet_NaN());
        }
    }
    const int covered = tr.terminated_early() ? period_of(tr.final_time()) : periods;
    rep.blip_every_period = covered > 0;
    rep.peaks_decreasing = covered > 1;
    for (int k = 0; k < covered; ++k) {
        if (rep.maxima_per_period[k] < 1) rep.blip_every_period = false;
        if (k > 0 && !(rep.period_peaks[k] < rep.period_peaks[k - 1])) rep.peaks_decreasing = false;
    }
    rep.final_abs_z = std::abs(tr.final_state().z);
    rep.min_abs_z_late = std::numeric_limits<double>::infinity();
    const double late = tr.final_time() - T;
    for (size_t i = 0; i < n; ++i)
        if (tr.times[i] >= late) rep.min_abs_z_late = std::min(rep.min_abs_z_late, std::abs(tr.states[i].z));
    return rep;
}

}  // namespace nk
