// Command-line interface: one-shot gain evaluation, spot optimization, the
// two experiment sweeps and noise calibration from rate samples.
//
// Exit codes: 0 success, 1 validation/usage error, 2 geometry error, 3 I/O.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vlcirs/config.hpp"
#include "vlcirs/errors.hpp"
#include "vlcirs/optimizer.hpp"
#include "vlcirs/secrecy.hpp"
#include "vlcirs/sweep.hpp"

namespace {

using namespace vlcirs;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

struct GlobalOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> output;
    std::optional<double> quad_edge;
};

ExperimentConfig make_config(const GlobalOpts& g) {
    ExperimentConfig cfg =
        g.config_path.empty() ? load_config_text("") : load_config(g.config_path);
    if (g.seed) cfg.pso.seed = *g.seed;
    if (g.output) cfg.output_path = *g.output;
    if (g.quad_edge) {
        cfg.scenario.quadrature.element_edge = *g.quad_edge;
        validate_scenario(cfg.scenario);
    }
    return cfg;
}

void print_gains(const Scenario& sc, const ChannelGains& bob, const ChannelGains& eve) {
    std::cout << "los_bob      " << fmt(bob.los) << "\n"
              << "los_eve      " << fmt(eve.los) << "\n"
              << "irs_bob      " << fmt(bob.irs) << "\n"
              << "irs_eve      " << fmt(eve.irs) << "\n"
              << "sum_bob      " << fmt(bob.total()) << "\n"
              << "sum_eve      " << fmt(eve.total()) << "\n"
              << "secrecy_rate "
              << fmt(secrecy_rate_lb({bob.total(), eve.total(), sc.signal_peak,
                                      sc.noise_variance}))
              << "\n";
}

int run_gains(const GlobalOpts& g, const std::string& method,
              const std::vector<double>& spot_xy) {
    const ExperimentConfig cfg = make_config(g);
    const Scenario& sc = cfg.scenario;

    ChannelGains bob{los_gain(sc, sc.bob), 0.0};
    ChannelGains eve{los_gain(sc, sc.eve), 0.0};

    ReflectedSpot spot{};
    bool have_spot = false;
    if (!spot_xy.empty()) {
        spot = {spot_xy[0], spot_xy[1], sc.bob.plane_depth};
        have_spot = true;
        std::cout << "spot         " << fmt(spot.x) << ' ' << fmt(spot.y) << ' '
                  << fmt(spot.h) << "\n";
    } else if (method == "fob") {
        spot = fob_spot(sc);
        have_spot = true;
        std::cout << "method       FoB\n";
    } else if (method == "rsf") {
        const OptimizationResult res = pso_ii(sc, cfg.pso);
        spot = res.best_spot;
        have_spot = true;
        std::cout << "method       RSF\nspot         " << fmt(spot.x) << ' ' << fmt(spot.y)
                  << ' ' << fmt(spot.h) << "\n";
    } else {
        std::cout << "method       NoIRS\n";
    }

    if (have_spot) {
        const OrientationGrid grid = orientation_grid_for_spot(sc, spot);
        bob.irs = irs_gain(sc, grid, sc.bob);
        eve.irs = irs_gain(sc, grid, sc.eve);
    }
    print_gains(sc, bob, eve);
    return 0;
}

int run_optimize(const GlobalOpts& g, bool show_trace) {
    const ExperimentConfig cfg = make_config(g);
    const Scenario& sc = cfg.scenario;
    const OptimizationResult res = pso_ii(sc, cfg.pso);

    std::cout << "best_spot    " << fmt(res.best_spot.x) << ' ' << fmt(res.best_spot.y) << ' '
              << fmt(res.best_spot.h) << "\n"
              << "best_rate    " << fmt(res.best_fitness) << "\n"
              << "evaluations  " << res.evaluations << "\n"
              << "seed         " << cfg.pso.seed << "\n";

    const OrientationGrid grid = orientation_grid_for_spot(sc, res.best_spot);
    std::cout << "grid         " << grid.rows << "x" << grid.cols << " (row col roll_deg yaw_deg)\n";
    constexpr double kRadToDeg = 180.0 / 3.141592653589793;
    for (std::size_t i = 0; i < grid.rows; ++i) {
        for (std::size_t j = 0; j < grid.cols; ++j) {
            const MirrorOrientation& o = grid.at(i, j);
            std::cout << i << ' ' << j << ' ' << fmt(o.roll * kRadToDeg) << ' '
                      << fmt(o.yaw * kRadToDeg) << "\n";
        }
    }
    if (show_trace) {
        std::cout << "trace\n";
        for (std::size_t k = 0; k < res.fitness_trace.size(); ++k) {
            std::cout << k << ' ' << fmt(res.fitness_trace[k]) << "\n";
        }
    }
    return 0;
}

int run_sweep(const GlobalOpts& g, SweepAxis axis) {
    ExperimentConfig cfg = make_config(g);
    if (cfg.sweep.axis != axis) {
        // The subcommand picks the axis; configs set up for the other axis
        // keep everything except the sweep values, which fall back to stock.
        cfg.sweep.axis = axis;
        cfg.sweep.values.clear();
        if (axis == SweepAxis::eve_x) {
            for (int k = 0; k <= 20; ++k) cfg.sweep.values.push_back(-1.0 + 0.1 * k);
        } else {
            for (int k = 0; k <= 8; ++k) cfg.sweep.values.push_back(0.04 + 0.01 * k);
        }
    }

    const SweepTable table =
        axis == SweepAxis::eve_x ? run_sweep_eve(cfg) : run_sweep_mirror_size(cfg);
    emit_csv(table, cfg.output_path);

    std::size_t failed = 0;
    for (const SweepRow& r : table.rows) {
        if (!r.error.empty()) ++failed;
    }
    std::cout << "rows         " << table.rows.size() << "\n"
              << "failed_rows  " << failed << "\n"
              << "output       " << cfg.output_path << "\n";
    return 0;
}

int run_calibrate(const GlobalOpts& g, const std::string& input) {
    const ExperimentConfig cfg = make_config(g);

    std::ifstream in(input);
    if (!in) throw io_error("cannot open samples file: " + input);
    std::vector<RateSample> samples;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::string a, b, c;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c)) {
            throw validation_error("samples line " + std::to_string(lineno) +
                                   ": expected gain_bob,gain_eve,rate");
        }
        try {
            samples.push_back({std::stod(a), std::stod(b), std::stod(c)});
        } catch (const std::exception&) {
            if (lineno == 1) continue; // header row
            throw validation_error("samples line " + std::to_string(lineno) + ": not numeric");
        }
    }
    if (samples.empty()) throw validation_error("no samples in " + input);

    const double peak = cfg.scenario.signal_peak;
    const double fitted = fit_noise_variance(samples, peak);

    std::vector<double> inversions;
    for (const RateSample& s : samples) {
        if (s.rate > 0.0) {
            inversions.push_back(invert_noise_variance(s.gain_bob, s.gain_eve, peak, s.rate));
        }
    }
    std::sort(inversions.begin(), inversions.end());

    std::cout << "samples          " << samples.size() << "\n"
              << "fitted_sigma2    " << fmt(fitted) << "\n";
    if (!inversions.empty()) {
        std::cout << "inversion_median " << fmt(inversions[inversions.size() / 2]) << "\n"
                  << "inversion_min    " << fmt(inversions.front()) << "\n"
                  << "inversion_max    " << fmt(inversions.back()) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secrecy simulation and mirror-orientation optimization for "
                 "indoor optical wireless links with a wall-mounted mirror array"};
    app.require_subcommand(1);
    app.fallthrough(); // global options may follow the subcommand

    GlobalOpts g;
    app.add_option("-c,--config", g.config_path, "Config file (INI schema, see configs/)");
    std::uint64_t seed_val = 0;
    auto* seed_opt = app.add_option("-s,--seed", seed_val, "Override the optimizer seed");
    std::string output_val;
    auto* output_opt = app.add_option("-o,--output", output_val, "Override the output path");
    double quad_val = 0;
    auto* quad_opt =
        app.add_option("-q,--quad-edge", quad_val, "Override the quadrature element edge (m)");

    auto* gains = app.add_subcommand("gains", "Channel gains for a given spot or method");
    std::string method = "fob";
    gains->add_option("-m,--method", method, "rsf | fob | noirs")
        ->check(CLI::IsMember({"rsf", "fob", "noirs"}));
    std::vector<double> spot_xy;
    gains->add_option("--spot", spot_xy, "Reflected-spot x y (depth pinned to the receive plane)")
        ->expected(2);

    auto* optimize = app.add_subcommand("optimize", "Reflected-spot search (seeded swarm)");
    bool show_trace = false;
    optimize->add_flag("--trace", show_trace, "Print the per-iteration best-rate trace");

    auto* sweep_eve = app.add_subcommand("sweep-eve", "Sweep Eve's x-offset, write CSV");
    auto* sweep_mirrors =
        app.add_subcommand("sweep-mirrors", "Sweep mirror edge and array size, write CSV");

    auto* calibrate = app.add_subcommand("calibrate-noise",
                                         "Fit sigma^2 from gain_bob,gain_eve,rate samples");
    std::string input;
    calibrate->add_option("-i,--input", input, "CSV of samples")->required();

    try {
        app.parse(argc, argv);
        if (*seed_opt) g.seed = seed_val;
        if (*output_opt) g.output = output_val;
        if (*quad_opt) g.quad_edge = quad_val;

        if (*gains) return run_gains(g, method, spot_xy);
        if (*optimize) return run_optimize(g, show_trace);
        if (*sweep_eve) return run_sweep(g, vlcirs::SweepAxis::eve_x);
        if (*sweep_mirrors) return run_sweep(g, vlcirs::SweepAxis::mirror_edge);
        if (*calibrate) return run_calibrate(g, input);
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const vlcirs::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const vlcirs::geometry_error& e) {
        std::cerr << "geometry error: " << e.what() << "\n";
        return 2;
    } catch (const vlcirs::io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
