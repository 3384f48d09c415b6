#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vlcirs/config.hpp"
#include "vlcirs/radiometry.hpp"

// Experiment sweeps and CSV emission. A sweep evaluates every configured
// method at every sweep point; per-point failures are recorded in the row's
// error column instead of aborting the sweep.

namespace vlcirs {

struct SweepRow {
    double sweep_value = 0.0; // eve x-offset, or the mirror edge length
    int array_size = 0;       // n of the n x n array; 0 for eve_x sweeps
    Method method = Method::rsf;
    ChannelGains bob;
    ChannelGains eve;
    double secrecy_rate = 0.0;
    std::uint64_t seed = 0;
    std::string error; // empty on success
};

struct SweepTable {
    SweepAxis axis = SweepAxis::eve_x;
    std::vector<SweepRow> rows;
};

/// Sweep Eve's x-offset over the configured values. One row per (value,
/// method), methods in canonical RSF, FoB, NoIRS order. Deterministic given
/// the seed. Reported gains include the configured calibration factor.
SweepTable run_sweep_eve(const ExperimentConfig& cfg);

/// Sweep the (square) mirror edge for each configured n x n array size at the
/// standard eavesdropper offset x = 0.1. One row per (edge, size, method).
SweepTable run_sweep_mirror_size(const ExperimentConfig& cfg);

/// UTF-8 CSV with a header row, values at 15 significant digits, rows in
/// table order. Byte-identical for identical inputs.
void emit_csv(const SweepTable& table, std::ostream& out);
void emit_csv(const SweepTable& table, const std::string& path);

} // namespace vlcirs
