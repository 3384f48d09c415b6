#pragma once

#include <string>
#include <vector>

#include "vlcirs/optimizer.hpp"
#include "vlcirs/scenario.hpp"

// Experiment configuration: an INI-style key/value file with sections
// mirroring the scenario. Every key is optional; omitted keys take the stock
// profile defaults (see configs/default.cfg for the full documented schema).

namespace vlcirs {

enum class Method { rsf, fob, noirs };

const char* method_name(Method m);

enum class SweepAxis { eve_x, mirror_edge };

struct SweepSpec {
    SweepAxis axis = SweepAxis::eve_x;
    std::vector<double> values;    // strictly increasing
    std::vector<int> array_sizes;  // n x n arrays, mirror_edge sweeps only
};

struct ExperimentConfig {
    Scenario scenario;
    std::vector<Method> methods;   // always held in canonical order rsf, fob, noirs
    SweepSpec sweep;
    PsoParams pso;
    std::string output_path = "sweep.csv";
    double gain_calibration = 1.0; // uniform multiplier on both users' gains
};

/// Parse and validate a config file. Throws io_error when unreadable,
/// validation_error with a line reference for parse errors, and
/// validation_error naming the violated invariant otherwise.
ExperimentConfig load_config(const std::string& path);

/// Same, from an in-memory string (used by tests).
ExperimentConfig load_config_text(const std::string& text);

} // namespace vlcirs
