#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "nk/core.hpp"
#include "nk/trajectory.hpp"

namespace nk {

enum class Scheme { euler_maruyama };

struct SimConfig {
    double dt = 1e-3;
    double t_max = 10.0;
    std::uint64_t seed = 42;
    double delta = 1e-3;
    Scheme scheme = Scheme::euler_maruyama;
    int dimension = 2;
    int ensemble_size = 1;
    int record_every = 1;
    bool record_uv = false;
    bool record_noise = false;

    void validate(const PhysParams& p) const;  // throws ConfigError
};

// Euler-Maruyama path of the limiting diffusion. Uses p.epsilon as the noise scale.
Trajectory simulate_sde(const PhysParams& p, Vec3 start, const SimConfig& cfg, std::uint64_t path_index = 0);

struct Histogram {
    double xmin = -3.0, xmax = 2.0, ymin = -2.5, ymax = 2.5;
    int nx = 50, ny = 50;
    std::vector<long> counts;

    void reset();
    void add(Vec2 q);
    long total() const;
    Vec2 cell_center(int ix, int iy) const;
    long at(int ix, int iy) const { return counts[static_cast<size_t>(iy) * nx + ix]; }
    void argmax(int& ix, int& iy) const;
};

struct EnsembleSummary {
    std::vector<Trajectory> paths;  // kept only on request
    std::vector<Vec3> finals;
    std::vector<bool> hit;          // terminated before t_max
    int n_hit = 0;
    double hit_fraction = 0.0;
    Histogram histogram;            // over final states of all paths that reached t_max
};

using StartDistribution = std::function<Vec3(int path_index)>;

EnsembleSummary simulate_ensemble(const PhysParams& p, const StartDistribution& start, const SimConfig& cfg,
                                  Histogram grid = {}, bool keep_paths = false);

struct HittingEstimate {
    double estimate = 1.0;  // P(tau > t)
    double lo = 1.0;        // Wilson 95%
    double hi = 1.0;
    int survived = 0;
    int total = 0;
    bool survival_positive = true;
};

HittingEstimate hitting_probability(const PhysParams& p, Vec3 start, const SimConfig& cfg, double t);

struct WilsonInterval {
    double lo, hi;
};
WilsonInterval wilson_interval(int successes, int trials, double z = 1.959963984540054);

struct CouplingRow {
    double epsilon = 0.0;
    std::vector<double> sup_dist;  // per retained path
    std::vector<double> sup_noise;
    int excluded = 0;
    int retained = 0;
    double max_ratio = 0.0;        // max of sup_dist / (3 eps sup_noise)
    double mean_sup_dist = 0.0;
    bool bound_holds = true;       // sup_dist <= 3 eps sup_noise + slack on every retained path
};

// Same Brownian increments for every epsilon and path; X^0 is the Euler flow.
std::vector<CouplingRow> coupling_convergence(const PhysParams& p, Vec2 start, const std::vector<double>& eps_list,
                                              const SimConfig& cfg, double slack);

struct BlipReport {
    Trajectory trajectory;
    std::vector<int> maxima_per_period;
    std::vector<double> period_peaks;
    std::vector<double> bz;                // b_z along the path
    std::vector<double> alpha_beta_plus1;  // alpha + beta + 1 along the path
    bool blip_every_period = false;
    bool peaks_decreasing = false;
    double final_abs_z = 0.0;
    double min_abs_z_late = 0.0;           // min |z| over the last period
};

// epsilon == 0 integrates the flow with RK4; epsilon > 0 runs Euler-Maruyama.
BlipReport z_blip_experiment(const PhysParams& p, Vec3 start, const SimConfig& cfg, int periods);

}  // namespace nk
