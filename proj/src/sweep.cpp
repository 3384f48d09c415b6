#include "vlcirs/sweep.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "vlcirs/errors.hpp"
#include "vlcirs/optimizer.hpp"
#include "vlcirs/secrecy.hpp"

namespace vlcirs {

namespace {

// The uniform gain calibration c is applied through the exact identity
// rate(c*hB, c*hE, s2) = rate(hB, hE, s2/c^2): optimization runs with the
// scaled noise, reported gains carry the factor c.
Scenario effective_scenario(const ExperimentConfig& cfg) {
    Scenario sc = cfg.scenario;
    const double c = cfg.gain_calibration;
    sc.noise_variance = cfg.scenario.noise_variance / (c * c);
    return sc;
}

SweepRow evaluate_method(const Scenario& sc, const ExperimentConfig& cfg, Method method) {
    SweepRow row;
    row.method = method;
    row.seed = cfg.pso.seed;

    validate_scenario(sc);

    const double c = cfg.gain_calibration;
    ChannelGains bob{los_gain(sc, sc.bob), 0.0};
    ChannelGains eve{los_gain(sc, sc.eve), 0.0};

    if (method != Method::noirs) {
        ReflectedSpot spot{};
        if (method == Method::fob) {
            spot = fob_spot(sc);
        } else {
            spot = pso_ii(sc, cfg.pso).best_spot;
        }
        const OrientationGrid grid = orientation_grid_for_spot(sc, spot);
        bob.irs = irs_gain(sc, grid, sc.bob);
        eve.irs = irs_gain(sc, grid, sc.eve);
    }

    row.bob = {c * bob.los, c * bob.irs};
    row.eve = {c * eve.los, c * eve.irs};
    row.secrecy_rate = secrecy_rate_lb({row.bob.total(), row.eve.total(),
                                        sc.signal_peak, cfg.scenario.noise_variance});
    return row;
}

SweepRow evaluate_or_error(const Scenario& sc, const ExperimentConfig& cfg, Method method) {
    try {
        return evaluate_method(sc, cfg, method);
    } catch (const std::exception& e) {
        SweepRow row;
        row.method = method;
        row.seed = cfg.pso.seed;
        row.error = e.what();
        return row;
    }
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

void write_row(std::ostream& out, const SweepTable& table, const SweepRow& r) {
    if (table.axis == SweepAxis::mirror_edge) {
        out << fmt(r.sweep_value) << ',' << r.array_size << ',';
    } else {
        out << fmt(r.sweep_value) << ',';
    }
    std::string error = r.error;
    for (char& c : error) {
        if (c == ',' || c == '\n') c = ';'; // keep the row a single record
    }
    out << fmt(r.bob.los) << ',' << fmt(r.eve.los) << ','
        << fmt(r.bob.irs) << ',' << fmt(r.eve.irs) << ','
        << fmt(r.bob.total()) << ',' << fmt(r.eve.total()) << ','
        << fmt(r.secrecy_rate) << ',' << method_name(r.method) << ','
        << r.seed << ',' << error << '\n';
}

} // namespace

SweepTable run_sweep_eve(const ExperimentConfig& cfg) {
    if (cfg.sweep.axis != SweepAxis::eve_x) {
        throw validation_error("run_sweep_eve: sweep axis is not eve_x");
    }
    SweepTable table;
    table.axis = SweepAxis::eve_x;
    const Scenario base = effective_scenario(cfg);
    for (double x : cfg.sweep.values) {
        Scenario sc = base;
        sc.eve.offset_x = x;
        for (Method m : cfg.methods) {
            SweepRow row = evaluate_or_error(sc, cfg, m);
            row.sweep_value = x;
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

SweepTable run_sweep_mirror_size(const ExperimentConfig& cfg) {
    if (cfg.sweep.axis != SweepAxis::mirror_edge) {
        throw validation_error("run_sweep_mirror_size: sweep axis is not mirror_edge");
    }
    SweepTable table;
    table.axis = SweepAxis::mirror_edge;
    const Scenario base = effective_scenario(cfg);
    for (double edge : cfg.sweep.values) {
        for (int n : cfg.sweep.array_sizes) {
            Scenario sc = base;
            sc.eve.offset_x = 0.1;
            sc.array.rows = static_cast<std::size_t>(n);
            sc.array.cols = static_cast<std::size_t>(n);
            sc.array.mirror_width = edge;
            sc.array.mirror_height = edge;
            for (Method m : cfg.methods) {
                SweepRow row = evaluate_or_error(sc, cfg, m);
                row.sweep_value = edge;
                row.array_size = n;
                table.rows.push_back(std::move(row));
            }
        }
    }
    return table;
}

void emit_csv(const SweepTable& table, std::ostream& out) {
    if (table.axis == SweepAxis::mirror_edge) {
        out << "mirror_edge,array_size,";
    } else {
        out << "eve_x,";
    }
    out << "los_bob,los_eve,irs_bob,irs_eve,sum_bob,sum_eve,secrecy_rate,method,seed,error\n";
    for (const SweepRow& r : table.rows) write_row(out, table, r);
}

void emit_csv(const SweepTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open output file: " + path);
    emit_csv(table, out);
    out.flush();
    if (!out) throw io_error("failed writing output file: " + path);
}

} // namespace vlcirs
