// nkep: command-line front end over the nelsonkepler C API.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "nk/io.hpp"
#include "nk/nk_c.h"

namespace {

struct Failure {
    int code;
    std::string message;
};

void check(nk_status s, const char* what) {
    if (s != NK_OK) throw Failure{1, std::string(what) + ": " + nk_status_name(s) + ": " + nk_last_error()};
}

struct ParamsDeleter {
    void operator()(nk_params* p) const { nk_params_free(p); }
};
struct TrajDeleter {
    void operator()(nk_trajectory* t) const { nk_trajectory_free(t); }
};
struct EnsembleDeleter {
    void operator()(nk_ensemble* e) const { nk_ensemble_free(e); }
};
struct BlipDeleter {
    void operator()(nk_blip* b) const { nk_blip_free(b); }
};
using Params = std::unique_ptr<nk_params, ParamsDeleter>;

struct PhysFlags {
    double mu = 1.0, lambda = 1.0, e = 0.5, epsilon = 0.0;
    int n = 0;
    bool epsilon_set = false;

    void add(CLI::App* app) {
        app->add_option("--mu", mu, "force constant (> 0)");
        app->add_option("--lambda", lambda, "angular momentum scale (> 0)");
        app->add_option("--e", e, "eccentricity (0 < e < 1)");
        app->add_option("--epsilon", epsilon, "diffusion scale (>= 0)");
        app->add_option("--n", n, "quantum number (>= 1; exact-state commands)");
    }

    // Invalid parameter values are usage errors.
    Params make(bool with_n = false) const {
        nk_params* p = nullptr;
        // --n and --epsilon together must agree even where n is unused
        if (!with_n && n > 0 && epsilon_set) {
            if (nk_params_new(mu, lambda, e, epsilon, n, &p) != NK_OK)
                throw Failure{2, std::string("invalid parameters: ") + nk_last_error()};
            nk_params_free(p);
            p = nullptr;
        }
        double eps = epsilon;
        if (with_n && n > 0 && !epsilon_set) eps = std::sqrt(lambda / n);
        const nk_status s = nk_params_new(mu, lambda, e, eps, with_n ? n : 0, &p);
        if (s != NK_OK) throw Failure{2, std::string("invalid parameters: ") + nk_last_error()};
        return Params(p);
    }
};

struct GridFlags {
    double xmin = -3.0, xmax = 2.0, ymin = -2.5, ymax = 2.5;
    int nx = 101, ny = 101;

    void add(CLI::App* app) {
        app->add_option("--xmin", xmin);
        app->add_option("--xmax", xmax);
        app->add_option("--ymin", ymin);
        app->add_option("--ymax", ymax);
        app->add_option("--nx", nx)->check(CLI::PositiveNumber);
        app->add_option("--ny", ny)->check(CLI::PositiveNumber);
    }

    double x(int i) const { return nx == 1 ? xmin : xmin + (xmax - xmin) * i / (nx - 1); }
    double y(int j) const { return ny == 1 ? ymin : ymin + (ymax - ymin) * j / (ny - 1); }
};

struct OutFlags {
    std::string out = "-";
    std::string format = "csv";

    void add(CLI::App* app) {
        app->add_option("--out", out, "output file ('-' for stdout)");
        app->add_option("--format", format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
    }
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_.open(path);
        if (!file_) throw Failure{1, "cannot open " + path + " for writing"};
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

std::vector<double> start_point(const std::vector<double>& s) {
    if (s.size() != 2 && s.size() != 3) throw Failure{2, "--start expects x,y or x,y,z"};
    return {s[0], s[1], s.size() == 3 ? s[2] : 0.0};
}

// ---- field ----

void run_field(const PhysFlags& pf, const GridFlags& g, const OutFlags& of, const std::string& kind) {
    Params p = pf.make();
    if (kind == "density" && !(pf.epsilon > 0.0)) throw Failure{2, "field --kind density requires --epsilon > 0"};
    Output out(of.out);
    std::vector<double> heat(static_cast<size_t>(g.nx) * g.ny, std::nan(""));
    const bool vec = kind == "drift";
    std::unique_ptr<nk::io::CsvWriter> csv;
    if (of.format == "csv")
        csv = std::make_unique<nk::io::CsvWriter>(out.stream(), vec ? std::vector<std::string>{"x", "y", "bx", "by"}
                                                                   : std::vector<std::string>{"x", "y", "value"});
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.x(i), y = g.y(j);
            double b[2];
            double v = 0.0;
            nk_status s;
            if (vec) s = nk_drift2(p.get(), x, y, b);
            else if (kind == "divergence") s = nk_divergence(p.get(), x, y, &v);
            else if (kind == "speed") s = nk_speed_sq(p.get(), x, y, &v);
            else s = nk_density_limit(p.get(), x, y, &v);
            if (vec && s == NK_OK) v = std::hypot(b[0], b[1]);
            if (s == NK_OK) heat[static_cast<size_t>(j) * g.nx + i] = v;
            if (!csv) continue;
            if (s != NK_OK) {
                if (vec) csv->row({x, y, std::monostate{}, std::monostate{}});
                else csv->row({x, y, std::monostate{}});
            } else if (vec) {
                csv->row({x, y, b[0], b[1]});
            } else {
                csv->row({x, y, v});
            }
        }
    }
    if (!csv) nk::io::write_svg_heatmap(out.stream(), heat, g.nx, g.ny, g.xmin, g.xmax, g.ymin, g.ymax, "field " + kind);
}

// ---- trajectories ----

void write_trajectory(std::ostream& os, const nk_trajectory* t, const std::string& format, const std::string& title) {
    const size_t n = nk_trajectory_size(t);
    const bool planar = nk_trajectory_dimension(t) == 2;
    if (format == "svg") {
        nk::io::Series s{"path", {}, {}};
        for (size_t i = 0; i < n; ++i) {
            double tm, q[3];
            nk_trajectory_sample(t, i, &tm, q);
            s.x.push_back(q[0]);
            s.y.push_back(q[1]);
        }
        nk::io::write_svg_lines(os, {s}, title);
        return;
    }
    nk::io::CsvWriter w(os, {"t", "x", "y", "z", "u", "v"});
    for (size_t i = 0; i < n; ++i) {
        double tm, q[3], uv[2];
        int has = 0;
        nk_trajectory_sample(t, i, &tm, q);
        nk_trajectory_uv(t, i, uv, &has);
        nk::io::Cell z = planar ? nk::io::Cell{} : nk::io::Cell{q[2]};
        if (has) w.row({tm, q[0], q[1], z, uv[0], uv[1]});
        else w.row({tm, q[0], q[1], z, std::monostate{}, std::monostate{}});
    }
}

void write_events(const std::string& path, const nk_trajectory* t) {
    Output out(path);
    nk::io::CsvWriter w(out.stream(), {"t", "kind"});
    for (size_t i = 0; i < nk_trajectory_event_count(t); ++i) {
        double tm;
        const char* kind;
        nk_trajectory_event(t, i, &tm, &kind);
        w.row({tm, std::string(kind)});
    }
}

struct SimFlags {
    double dt = 1e-3, tmax = 10.0, delta = 1e-3;
    std::uint64_t seed = 42;
    int paths = 1, dim = 2, record_every = 1, periods = 6;
    std::vector<double> start{2.0, 0.0};
    std::string events;
    std::string report = "-";
    bool blip = false;

    void add(CLI::App* app) {
        app->add_option("--dt", dt)->check(CLI::PositiveNumber);
        app->add_option("--tmax", tmax)->check(CLI::PositiveNumber);
        app->add_option("--seed", seed);
        app->add_option("--delta", delta, "singularity buffer")->check(CLI::PositiveNumber);
        app->add_option("--paths", paths)->check(CLI::PositiveNumber);
        app->add_option("--dim", dim)->check(CLI::IsMember({2, 3}));
        app->add_option("--start", start, "x,y or x,y,z")->delimiter(',');
        app->add_option("--record-every", record_every)->check(CLI::PositiveNumber);
    }

    nk_sim_config config() const {
        nk_sim_config c;
        nk_sim_config_default(&c);
        c.dt = dt;
        c.t_max = tmax;
        c.delta = delta;
        c.seed = seed;
        c.dimension = dim;
        c.ensemble_size = paths;
        c.record_every = record_every;
        c.record_uv = dim == 2 ? 1 : 0;
        return c;
    }
};

void run_blip(const PhysFlags& pf, const SimFlags& sf, const OutFlags& of) {
    Params p = pf.make();
    std::vector<double> st = start_point(sf.start);
    nk_sim_config c = sf.config();
    c.dimension = 3;
    nk_blip* raw = nullptr;
    check(nk_z_blip(p.get(), st.data(), &c, sf.periods, &raw), "z blip");
    std::unique_ptr<nk_blip, BlipDeleter> b(raw);
    {
        Output out(of.out);
        write_trajectory(out.stream(), nk_blip_trajectory(b.get()), of.format, "z blip");
    }
    if (!sf.events.empty()) write_events(sf.events, nk_blip_trajectory(b.get()));
    std::vector<int> maxima(sf.periods);
    std::vector<double> peaks(sf.periods);
    size_t count = 0;
    check(nk_blip_periods(b.get(), maxima.data(), peaks.data(), maxima.size(), &count), "z blip");
    int every = 0, decreasing = 0;
    double final_z = 0.0, late = 0.0;
    nk_blip_summary(b.get(), &every, &decreasing, &final_z, &late);
    Output rep(sf.report);
    auto& os = rep.stream();
    os << "blip_every_period: " << (every ? "yes" : "no") << "\n"
       << "peaks_decreasing: " << (decreasing ? "yes" : "no") << "\n"
       << "final_abs_z: " << nk::io::format_double(final_z) << "\n"
       << "min_abs_z_last_period: " << nk::io::format_double(late) << "\n";
    nk::io::write_block_marker(os, "periods");
    nk::io::CsvWriter w(os, {"period", "local_maxima", "peak_abs_z"});
    for (size_t k = 0; k < count && k < maxima.size(); ++k) w.row({static_cast<long>(k), static_cast<long>(maxima[k]), peaks[k]});
}

void run_simulate(const PhysFlags& pf, const SimFlags& sf, const GridFlags& g, const OutFlags& of) {
    if (sf.blip) return run_blip(pf, sf, of);
    Params p = pf.make();
    std::vector<double> st = start_point(sf.start);
    if (sf.dim == 2 && st[2] != 0.0) throw Failure{2, "--start with z != 0 requires --dim 3"};
    nk_sim_config c = sf.config();
    if (sf.paths > 1) {
        if (!(pf.epsilon > 0.0)) throw Failure{2, "ensembles require --epsilon > 0"};
        const double hist[4] = {g.xmin, g.xmax, g.ymin, g.ymax};
        nk_ensemble* raw = nullptr;
        check(nk_simulate_ensemble(p.get(), st.data(), 1, &c, hist, g.nx, g.ny, &raw), "ensemble");
        std::unique_ptr<nk_ensemble, EnsembleDeleter> ens(raw);
        std::vector<long> counts(static_cast<size_t>(g.nx) * g.ny);
        check(nk_ensemble_histogram(ens.get(), counts.data(), counts.size()), "ensemble");
        Output out(of.out);
        if (of.format == "svg") {
            std::vector<double> heat(counts.begin(), counts.end());
            nk::io::write_svg_heatmap(out.stream(), heat, g.nx, g.ny, g.xmin, g.xmax, g.ymin, g.ymax, "final positions");
            return;
        }
        nk::io::CsvWriter w(out.stream(), {"x", "y", "count"});
        const double dx = (g.xmax - g.xmin) / g.nx, dy = (g.ymax - g.ymin) / g.ny;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                w.row({g.xmin + (i + 0.5) * dx, g.ymin + (j + 0.5) * dy, counts[static_cast<size_t>(j) * g.nx + i]});
        return;
    }
    nk_trajectory* raw = nullptr;
    if (pf.epsilon == 0.0)
        check(nk_integrate_ode(p.get(), st.data(), sf.dim, sf.tmax, sf.dt, sf.delta, sf.record_every, sf.dim == 2, &raw),
              "integrate");
    else
        check(nk_simulate_sde(p.get(), st.data(), &c, 0, &raw), "simulate");
    std::unique_ptr<nk_trajectory, TrajDeleter> t(raw);
    {
        Output out(of.out);
        write_trajectory(out.stream(), t.get(), of.format, "trajectory");
    }
    if (!sf.events.empty()) write_events(sf.events, t.get());
}

// ---- density ----

void run_density(const PhysFlags& pf, const GridFlags& g, const OutFlags& of, const std::string& kind, bool log_scale) {
    const bool exact = kind == "exact";
    if (exact && pf.n < 1) throw Failure{2, "density --kind exact requires --n >= 1"};
    if (!exact && !(pf.epsilon > 0.0)) throw Failure{2, "density --kind limit requires --epsilon > 0"};
    Params p = pf.make(exact);
    Output out(of.out);
    std::vector<double> heat(static_cast<size_t>(g.nx) * g.ny, std::nan(""));
    std::unique_ptr<nk::io::CsvWriter> csv;
    if (of.format == "csv") csv = std::make_unique<nk::io::CsvWriter>(out.stream(), std::vector<std::string>{"x", "y", "value"});
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.x(i), y = g.y(j);
            double v = 0.0;
            nk_status s;
            if (exact) {
                const double q[3] = {x, y, 0.0};
                s = log_scale ? nk_log_density_exact(p.get(), q, &v) : nk_density_exact(p.get(), q, &v);
            } else {
                s = nk_density_limit(p.get(), x, y, &v);
                if (s == NK_OK && log_scale) v = std::log(v);
            }
            if (s == NK_OK) heat[static_cast<size_t>(j) * g.nx + i] = v;
            if (csv) {
                if (s == NK_OK) csv->row({x, y, v});
                else csv->row({x, y, std::monostate{}});
            }
        }
    if (!csv) nk::io::write_svg_heatmap(out.stream(), heat, g.nx, g.ny, g.xmin, g.xmax, g.ymin, g.ymax, "density " + kind);
}

// ---- analyze ----

void run_analyze(const PhysFlags& pf, const OutFlags& of, int curve_samples, int lyap_n) {
    Params p = pf.make();
    Output out(of.out);
    auto& os = out.stream();
    char line[128];
    double T, Tq, Tm, st[2], te, ten, ec;
    check(nk_period(p.get(), &T), "period");
    check(nk_period_quadrature(p.get(), &Tq), "period");
    check(nk_measured_period(p.get(), 1e-3, 3, &Tm), "period");
    check(nk_stability_integral(p.get(), 1e-3, st), "stability integral");
    check(nk_tilde_e(pf.e, &te), "tilde_e");
    check(nk_tilde_e_numeric(pf.e, &ten), "tilde_e");
    check(nk_critical_eccentricity(&ec), "critical eccentricity");
    std::snprintf(line, sizeof line, "e: %.10g\n", pf.e);
    os << line;
    std::snprintf(line, sizeof line, "period: %.10f\n", T);
    os << line;
    std::snprintf(line, sizeof line, "period_quadrature: %.10f\n", Tq);
    os << line;
    std::snprintf(line, sizeof line, "period_measured: %.10f\n", Tm);
    os << line;
    std::snprintf(line, sizeof line, "stability_integral: %.10f\n", st[0]);
    os << line;
    std::snprintf(line, sizeof line, "stability_integral_fd: %.10f\n", st[1]);
    os << line;
    std::snprintf(line, sizeof line, "tilde_e: %.10f\n", te);
    os << line;
    std::snprintf(line, sizeof line, "tilde_e_numeric: %.10f\n", ten);
    os << line;
    std::snprintf(line, sizeof line, "critical_eccentricity: %.10f\n", ec);
    os << line;
    for (int k = 0; k < 3; ++k) {
        double m;
        check(nk_symmetry_curve_min(p.get(), k, &m), "symmetry curve");
        std::snprintf(line, sizeof line, "curve_%s: min_u=%.10f crosses_ellipse=%s\n", nk_symmetry_curve_name(k), m,
                      m < pf.e ? "yes" : "no");
        os << line;
    }
    double cert[6];
    check(nk_lyapunov_certificate(p.get(), 0.1, 0.1, lyap_n, lyap_n, cert), "lyapunov");
    std::snprintf(line, sizeof line, "lyapunov: min_V_off=%.6e max_Vdot_off=%.6e max_abs_V_on=%.3e max_abs_Vdot_on=%.3e\n",
                  cert[0], cert[1], cert[2], cert[3]);
    os << line;
    os << "lyapunov_holds: " << ((cert[0] > 0 && cert[1] < 0 && cert[2] < 1e-8 && cert[3] < 1e-8) ? "yes" : "no") << "\n";

    for (int k = 0; k < 3; ++k) {
        std::vector<double> u(curve_samples), v(curve_samples);
        size_t n = 0;
        check(nk_symmetry_curve_sample(p.get(), k, curve_samples, u.data(), v.data(), &n), "symmetry curve");
        nk::io::write_block_marker(os, std::string("curve_") + nk_symmetry_curve_name(k));
        nk::io::CsvWriter w(os, {"u", "v", "x", "y", "residual"});
        for (size_t i = 0; i < n; ++i) {
            double xy[2], r;
            check(nk_to_cartesian(p.get(), u[i], v[i], xy), "symmetry curve");
            check(nk_symmetry_residual(p.get(), k, v[i], &r), "symmetry curve");
            w.row({u[i], v[i], xy[0], xy[1], r});
        }
    }
    nk::io::write_block_marker(os, "lyapunov_certificate");
    nk::io::CsvWriter w(os, {"delta1", "delta2", "grid", "min_V_off", "max_Vdot_off", "max_abs_V_on", "max_abs_Vdot_on"});
    w.row({0.1, 0.1, static_cast<long>(lyap_n), cert[0], cert[1], cert[2], cert[3]});
}

// ---- hit ----

void run_hit(const PhysFlags& pf, const SimFlags& sf, const OutFlags& of, const std::vector<double>& times) {
    if (!(pf.epsilon > 0.0)) throw Failure{2, "hit requires --epsilon > 0"};
    Params p = pf.make();
    std::vector<double> st = start_point(sf.start);
    nk_sim_config c = sf.config();
    c.record_uv = 0;
    Output out(of.out);
    nk::io::CsvWriter w(out.stream(), {"t", "estimate", "lo", "hi", "survived", "total"});
    const std::vector<double> ts = times.empty() ? std::vector<double>{sf.tmax} : times;
    for (double t : ts) {
        double r[3];
        int surv = 0, total = 0;
        check(nk_hitting_probability(p.get(), st.data(), &c, t, r, &surv, &total), "hitting probability");
        w.row({t, r[0], r[1], r[2], static_cast<long>(surv), static_cast<long>(total)});
    }
}

// ---- nodal ----

void run_nodal(const PhysFlags& pf, const OutFlags& of, double r_max, int samples) {
    if (pf.n < 2) throw Failure{2, "nodal requires --n >= 2"};
    Params p = pf.make(true);
    double a = 0.0;
    nk_params_get(p.get(), nullptr, nullptr, nullptr, nullptr, nullptr, &a, nullptr);
    size_t count = 0;
    check(nk_nodal_roots(p.get(), nullptr, 0, &count), "nodal");
    std::vector<double> roots(count);
    check(nk_nodal_roots(p.get(), roots.data(), roots.size(), &count), "nodal");
    Output out(of.out);
    const double t0 = std::acos(pf.e);
    std::vector<nk::io::Series> series;
    std::unique_ptr<nk::io::CsvWriter> w;
    if (of.format == "csv") w = std::make_unique<nk::io::CsvWriter>(out.stream(), std::vector<std::string>{"k", "root", "x", "z"});
    for (size_t k = 0; k < roots.size(); ++k) {
        // (mu/lambda^2)(rho - x/e) = root/n  =>  rho = (root/n) a / (1 - cos(theta)/e)
        const double level = roots[k] / pf.n * a;
        nk::io::Series s{"k" + std::to_string(k + 1), {}, {}};
        for (int i = 1; i <= samples; ++i) {
            const double th = t0 + (2.0 * std::numbers::pi - 2.0 * t0) * i / (samples + 1);
            const double rho = level / (1.0 - std::cos(th) / pf.e);
            if (rho > r_max) continue;
            const double x = rho * std::cos(th), z = rho * std::sin(th);
            if (w) w->row({static_cast<long>(k + 1), roots[k], x, z});
            s.x.push_back(x);
            s.y.push_back(z);
        }
        series.push_back(std::move(s));
    }
    if (!w) nk::io::write_svg_lines(out.stream(), series, "nodal curves");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nelson diffusion for the atomic elliptic state and its Kepler limit"};
    app.require_subcommand(1);

    PhysFlags pf;
    GridFlags grid;
    OutFlags of;
    SimFlags sf;

    auto* field = app.add_subcommand("field", "drift, divergence, speed or density on a grid");
    std::string field_kind = "drift";
    pf.add(field);
    grid.add(field);
    of.add(field);
    field->add_option("--kind", field_kind)->check(CLI::IsMember({"drift", "divergence", "speed", "density"}));

    auto* simulate = app.add_subcommand("simulate", "diffusion paths (epsilon > 0) or the deterministic flow");
    pf.add(simulate);
    sf.add(simulate);
    grid.add(simulate);
    of.add(simulate);
    simulate->add_option("--events", sf.events, "write events CSV here");
    simulate->add_flag("--blip", sf.blip, "three dimensional z-instability experiment");
    simulate->add_option("--periods", sf.periods, "periods for --blip")->check(CLI::PositiveNumber);
    simulate->add_option("--report", sf.report, "blip summary destination");

    auto* density = app.add_subcommand("density", "exact or limiting invariant density on a grid");
    std::string density_kind = "limit";
    bool density_log = false;
    pf.add(density);
    grid.add(density);
    of.add(density);
    density->add_option("--kind", density_kind)->check(CLI::IsMember({"exact", "limit"}));
    density->add_flag("--log", density_log, "write the natural log of the density");

    auto* analyze = app.add_subcommand("analyze", "period, stability integral, critical eccentricity, certificates");
    int curve_samples = 50, lyap_n = 100;
    pf.add(analyze);
    of.add(analyze);
    analyze->add_option("--curve-samples", curve_samples)->check(CLI::PositiveNumber);
    analyze->add_option("--lyapunov-grid", lyap_n)->check(CLI::Range(2, 2000));

    auto* hit = app.add_subcommand("hit", "Monte Carlo survival probability P(tau > t)");
    std::vector<double> hit_times;
    pf.add(hit);
    sf.add(hit);
    of.add(hit);
    hit->add_option("--times", hit_times, "comma separated horizons (default --tmax)")->delimiter(',');

    auto* nodal = app.add_subcommand("nodal", "nodal hyperbolas of the finite-n state in the (x,z) plane");
    double r_max = 4.0;
    int samples = 200;
    pf.add(nodal);
    of.add(nodal);
    nodal->add_option("--rmax", r_max)->check(CLI::PositiveNumber);
    nodal->add_option("--samples", samples)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    for (auto* sub : {field, simulate, density, analyze, hit, nodal})
        if (sub->parsed() && sub->count("--epsilon") > 0) pf.epsilon_set = true;

    try {
        if (field->parsed()) run_field(pf, grid, of, field_kind);
        else if (simulate->parsed()) run_simulate(pf, sf, grid, of);
        else if (density->parsed()) run_density(pf, grid, of, density_kind, density_log);
        else if (analyze->parsed()) run_analyze(pf, of, curve_samples, lyap_n);
        else if (hit->parsed()) run_hit(pf, sf, of, hit_times);
        else if (nodal->parsed()) run_nodal(pf, of, r_max, samples);
    } catch (const Failure& f) {
        std::cerr << "nkep: " << f.message << "\n";
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "nkep: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
