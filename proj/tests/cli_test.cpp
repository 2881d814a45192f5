#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "nk/io.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("nkep_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args) {
    const std::string cmd = std::string(NKEP_PATH) + " " + args + " > " + (scratch() / "stdout.txt").string() + " 2> " +
                            (scratch() / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string out(const std::string& name) { return (scratch() / name).string(); }

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run("simulate --badflag") == 2);
    CHECK(run("simulate --e 1.5 --start 2,0 --tmax 1 --out -") == 2);
    CHECK(run("simulate --e 0.5 --epsilon 0.3 --n 20 --start 2,0 --tmax 1 --out -") == 2);
    CHECK(run("density --kind exact --e 0.5 --out -") == 2);
    CHECK(run("field --e 0.5 --out /nonexistent_dir/f.csv") == 1);
    CHECK(!slurp(scratch() / "stderr.txt").empty());
    CHECK(run("simulate --e 0.5 --epsilon 0 --start -0.6,0 --tmax 1 --out -") == 1);
    CHECK(run("nodal --e 0.5 --n 3 --out -") == 0);
    CHECK(run("") != 0);
}

TEST_CASE("deterministic flow settles on the ellipse") {
    REQUIRE(run("simulate --e 0.5 --epsilon 0 --start 2,0 --tmax 60 --record-every 100 --out " + out("ode.csv") +
                " --events " + out("ode_events.csv")) == 0);
    const auto t = nk::io::read_csv_file(out("ode.csv"));
    REQUIRE(t.header == std::vector<std::string>{"t", "x", "y", "z", "u", "v"});
    REQUIRE(!t.rows.empty());
    const size_t last = t.rows.size() - 1;
    CHECK(t.number(last, 0) == doctest::Approx(60.0));
    CHECK(std::abs(t.number(last, t.column("u")) - 0.5) < 1e-3);
    CHECK(t.is_empty(last, t.column("z")));
    const auto ev = nk::io::read_csv_file(out("ode_events.csv"));
    REQUIRE(ev.header == std::vector<std::string>{"t", "kind"});
    REQUIRE(ev.rows.size() == 1);
    CHECK(ev.rows[0][1] == "horizon");
}

TEST_CASE("stochastic runs are reproducible from the seed") {
    const std::string base = "simulate --e 0.5 --epsilon 0.1 --start 2,0 --tmax 2 --seed 7 --out ";
    REQUIRE(run(base + out("a.csv")) == 0);
    REQUIRE(run(base + out("b.csv")) == 0);
    CHECK(slurp(out("a.csv")) == slurp(out("b.csv")));
    REQUIRE(run("simulate --e 0.5 --epsilon 0.1 --start 2,0 --tmax 2 --seed 8 --out " + out("c.csv")) == 0);
    CHECK(slurp(out("a.csv")) != slurp(out("c.csv")));
}

TEST_CASE("ensemble histogram") {
    REQUIRE(run("simulate --e 0.5 --epsilon 0.1 --start 2,0 --tmax 1 --paths 6 --nx 4 --ny 3 --out " +
                out("ens.csv")) == 0);
    const auto t = nk::io::read_csv_file(out("ens.csv"));
    REQUIRE(t.header == std::vector<std::string>{"x", "y", "count"});
    REQUIRE(t.rows.size() == 12);
    double total = 0;
    for (size_t i = 0; i < t.rows.size(); ++i) total += t.number(i, 2);
    CHECK(total <= 6);
    CHECK(t.number(0, 1) == t.number(3, 1));
    CHECK(t.number(0, 0) < t.number(1, 0));
}

TEST_CASE("field grids are row major") {
    REQUIRE(run("field --kind drift --e 0.5 --nx 5 --ny 4 --out " + out("drift.csv")) == 0);
    auto t = nk::io::read_csv_file(out("drift.csv"));
    REQUIRE(t.header == std::vector<std::string>{"x", "y", "bx", "by"});
    REQUIRE(t.rows.size() == 20);
    CHECK(t.number(0, 1) == t.number(4, 1));
    CHECK(t.number(0, 1) < t.number(5, 1));
    REQUIRE(run("field --kind speed --e 0.5 --nx 3 --ny 3 --out " + out("speed.csv")) == 0);
    t = nk::io::read_csv_file(out("speed.csv"));
    REQUIRE(t.header == std::vector<std::string>{"x", "y", "value"});
    for (size_t i = 0; i < t.rows.size(); ++i)
        if (!t.is_empty(i, 2)) CHECK(t.number(i, 2) >= 0);
    REQUIRE(run("field --kind divergence --e 0.5 --nx 3 --ny 3 --format svg --out " + out("div.svg")) == 0);
    const std::string svg = slurp(out("div.svg"));
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("densities") {
    REQUIRE(run("density --kind limit --log --e 0.5 --epsilon 0.5 --nx 4 --ny 4 --out " + out("dl.csv")) == 0);
    auto t = nk::io::read_csv_file(out("dl.csv"));
    REQUIRE(t.header == std::vector<std::string>{"x", "y", "value"});
    CHECK(t.rows.size() == 16);
    REQUIRE(run("density --kind exact --e 0.5 --n 4 --nx 4 --ny 4 --out " + out("de.csv")) == 0);
    t = nk::io::read_csv_file(out("de.csv"));
    for (size_t i = 0; i < t.rows.size(); ++i) CHECK(t.number(i, 2) >= 0);
}

TEST_CASE("analyze report and blocks") {
    REQUIRE(run("analyze --e 0.5 --curve-samples 9 --lyapunov-grid 10 --out " + out("an.txt")) == 0);
    const std::string text = slurp(out("an.txt"));
    const auto value = [&](const std::string& key) {
        const size_t at = text.find("\n" + key + ": ");
        REQUIRE(at != std::string::npos);
        return std::stod(text.substr(at + key.size() + 3));
    };
    CHECK(std::abs(value("stability_integral") + 2 * 3.141592653589793) < 1e-6);
    CHECK(std::abs(value("period") - 2 * 3.141592653589793) < 1e-6);
    CHECK(std::abs(value("critical_eccentricity") - std::sqrt(0.5)) < 1e-9);
    CHECK(text.find("lyapunov_holds: yes") != std::string::npos);
    std::istringstream is(text);
    const auto curve = nk::io::read_csv_block(is, "curve_divergence_zero");
    CHECK(curve.header == std::vector<std::string>{"u", "v", "x", "y", "residual"});
    CHECK(curve.rows.size() == 9);
    for (size_t i = 0; i < curve.rows.size(); ++i) CHECK(std::abs(curve.number(i, 4)) < 1e-10);
    std::istringstream is2(text);
    const auto cert = nk::io::read_csv_block(is2, "lyapunov_certificate");
    CHECK(cert.rows.size() == 1);
}

TEST_CASE("hitting and nodal tables") {
    REQUIRE(run("hit --e 0.5 --epsilon 0.1 --start 2,0 --paths 10 --tmax 1 --times 0.5,1 --out " + out("hit.csv")) ==
            0);
    auto t = nk::io::read_csv_file(out("hit.csv"));
    REQUIRE(t.header == std::vector<std::string>{"t", "estimate", "lo", "hi", "survived", "total"});
    REQUIRE(t.rows.size() == 2);
    for (size_t i = 0; i < 2; ++i) {
        CHECK(t.number(i, 2) <= t.number(i, 1));
        CHECK(t.number(i, 1) <= t.number(i, 3) + 1e-12);
        CHECK(t.number(i, 5) == 10);
    }
    REQUIRE(run("nodal --e 0.5 --n 3 --samples 5 --out " + out("nodal.csv")) == 0);
    t = nk::io::read_csv_file(out("nodal.csv"));
    REQUIRE(t.header == std::vector<std::string>{"k", "root", "x", "z"});
    REQUIRE(t.rows.size() == 10);
    CHECK(t.number(0, 1) == doctest::Approx(2 - std::sqrt(2.0)));
    CHECK(t.number(9, 1) == doctest::Approx(2 + std::sqrt(2.0)));
}

TEST_CASE("blip report") {
    REQUIRE(run("simulate --blip --dim 3 --e 0.9 --epsilon 0 --start -0.9,0.4358898943540674,0.05 --periods 3 "
                "--record-every 50 --out " + out("blip.csv") + " --report " + out("blip.txt")) == 0);
    const std::string rep = slurp(out("blip.txt"));
    std::istringstream is(rep);
    const auto periods = nk::io::read_csv_block(is, "periods");
    CHECK(periods.rows.size() == 3);
    const auto traj = nk::io::read_csv_file(out("blip.csv"));
    CHECK(!traj.is_empty(0, traj.column("z")));
}
