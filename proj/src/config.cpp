#include "vlcirs/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "vlcirs/errors.hpp"

namespace vlcirs {

namespace {

constexpr double kDegToRad = 3.141592653589793 / 180.0;

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

struct Entry {
    std::string value;
    int line = 0;
};

// section.key -> value, last occurrence wins
using KeyMap = std::map<std::string, Entry>;

KeyMap parse_ini(const std::string& text) {
    KeyMap out;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw validation_error("config line " + std::to_string(lineno) +
                                       ": unterminated section header");
            }
            section = lower(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw validation_error("config line " + std::to_string(lineno) +
                                   ": expected key = value");
        }
        const std::string key = lower(trim(line.substr(0, eq)));
        if (key.empty()) {
            throw validation_error("config line " + std::to_string(lineno) + ": empty key");
        }
        out[section.empty() ? key : section + "." + key] = {trim(line.substr(eq + 1)), lineno};
    }
    return out;
}

class Reader {
public:
    explicit Reader(KeyMap keys) : keys_(std::move(keys)) {}

    std::optional<std::string> take(const std::string& key) {
        auto it = keys_.find(key);
        if (it == keys_.end()) return std::nullopt;
        std::string v = it->second.value;
        last_line_ = it->second.line;
        keys_.erase(it);
        return v;
    }

    double number(const std::string& key, double fallback) {
        auto v = take(key);
        if (!v) return fallback;
        return to_number(key, *v);
    }

    std::uint64_t unsigned_int(const std::string& key, std::uint64_t fallback) {
        auto v = take(key);
        if (!v) return fallback;
        const double d = to_number(key, *v);
        if (d < 0 || d != std::floor(d)) {
            throw validation_error("config " + key + " (line " + std::to_string(last_line_) +
                                   "): expected a nonnegative integer");
        }
        return static_cast<std::uint64_t>(d);
    }

    double to_number(const std::string& key, const std::string& v) const {
        try {
            std::size_t pos = 0;
            const double d = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return d;
        } catch (const std::exception&) {
            throw validation_error("config " + key + " (line " + std::to_string(last_line_) +
                                   "): not a number: '" + v + "'");
        }
    }

    int last_line() const { return last_line_; }

    void ensure_consumed() const {
        if (!keys_.empty()) {
            const auto& [key, entry] = *keys_.begin();
            throw validation_error("config line " + std::to_string(entry.line) +
                                   ": unknown key '" + key + "'");
        }
    }

private:
    KeyMap keys_;
    int last_line_ = 0;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) parts.push_back(trim(item));
    return parts;
}

// "lo:hi:step" range (hi inclusive within 1e-9) or a comma list.
std::vector<double> parse_values(Reader& r, const std::string& key, const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) {
            throw validation_error("config " + key + ": range must be lo:hi:step");
        }
        const double lo = r.to_number(key, parts[0]);
        const double hi = r.to_number(key, parts[1]);
        const double step = r.to_number(key, parts[2]);
        if (!(step > 0.0) || hi < lo) {
            throw validation_error("config " + key + ": range requires step > 0 and hi >= lo");
        }
        const int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
        out.reserve(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) out.push_back(lo + k * step);
    } else {
        for (const std::string& part : split(text, ',')) {
            if (!part.empty()) out.push_back(r.to_number(key, part));
        }
    }
    return out;
}

ExperimentConfig build(Reader& r) {
    ExperimentConfig cfg;
    cfg.scenario = default_scenario();
    Scenario& sc = cfg.scenario;

    sc.room.extent_x = r.number("room.x", sc.room.extent_x);
    sc.room.extent_y = r.number("room.y", sc.room.extent_y);
    sc.room.extent_z = r.number("room.z", sc.room.extent_z);

    sc.source.width = r.number("source.width", sc.source.width);
    sc.source.length = r.number("source.length", sc.source.length);
    sc.source.semi_angle =
        r.number("source.semi_angle_deg", sc.source.semi_angle / kDegToRad) * kDegToRad;
    sc.source.conversion_efficiency =
        r.number("source.conversion_efficiency", sc.source.conversion_efficiency);

    sc.receiver.area = r.number("receiver.area", sc.receiver.area);
    sc.receiver.responsivity = r.number("receiver.responsivity", sc.receiver.responsivity);
    sc.receiver.refractive_index =
        r.number("receiver.refractive_index", sc.receiver.refractive_index);
    sc.receiver.fov_half_angle =
        r.number("receiver.fov_deg", sc.receiver.fov_half_angle / kDegToRad) * kDegToRad;
    sc.receiver.amplifier_gain = r.number("receiver.amplifier_gain", sc.receiver.amplifier_gain);

    sc.array.rows = static_cast<std::size_t>(r.unsigned_int("array.rows", sc.array.rows));
    sc.array.cols = static_cast<std::size_t>(r.unsigned_int("array.cols", sc.array.cols));
    sc.array.mirror_width = r.number("array.mirror_width", sc.array.mirror_width);
    sc.array.mirror_height = r.number("array.mirror_height", sc.array.mirror_height);
    sc.array.offset_x = r.number("array.offset_x", sc.array.offset_x);
    sc.array.offset_y = r.number("array.offset_y", sc.array.offset_y);
    sc.array.offset_z = r.number("array.offset_z", sc.array.offset_z);
    sc.array.wall_offset = r.number("array.wall_offset", sc.array.wall_offset);
    sc.array.reflectivity = r.number("array.reflectivity", sc.array.reflectivity);

    sc.bob.offset_x = r.number("bob.x", sc.bob.offset_x);
    sc.bob.offset_y = r.number("bob.y", sc.bob.offset_y);
    sc.bob.plane_depth = r.number("bob.depth", sc.bob.plane_depth);
    sc.eve.offset_x = r.number("eve.x", sc.eve.offset_x);
    sc.eve.offset_y = r.number("eve.y", sc.eve.offset_y);
    sc.eve.plane_depth = r.number("eve.depth", sc.eve.plane_depth);

    sc.signal_peak = r.number("signal.peak", sc.signal_peak);
    const auto direct = r.take("signal.noise_variance");
    const auto density = r.take("signal.noise_density");
    const auto bandwidth = r.take("signal.bandwidth");
    if (direct && (density || bandwidth)) {
        throw validation_error(
            "config signal: give either noise_variance or noise_density+bandwidth, not both");
    }
    if (density.has_value() != bandwidth.has_value()) {
        throw validation_error("config signal: noise_density and bandwidth go together");
    }
    if (direct) {
        sc.noise_variance = r.to_number("signal.noise_variance", *direct);
    } else if (density) {
        sc.noise_variance = noise_variance_from_bandwidth(
            r.to_number("signal.noise_density", *density),
            r.to_number("signal.bandwidth", *bandwidth));
    }

    sc.quadrature.element_edge = r.number("quadrature.element_edge", sc.quadrature.element_edge);

    cfg.pso.swarm_size = static_cast<std::size_t>(r.unsigned_int("pso.swarm_size", cfg.pso.swarm_size));
    cfg.pso.max_iterations =
        static_cast<std::size_t>(r.unsigned_int("pso.iterations", cfg.pso.max_iterations));
    cfg.pso.inertia = r.number("pso.inertia", cfg.pso.inertia);
    cfg.pso.learn_personal = r.number("pso.cognitive", cfg.pso.learn_personal);
    cfg.pso.learn_global = r.number("pso.social", cfg.pso.learn_global);
    cfg.pso.velocity_clamp = r.number("pso.velocity_clamp", cfg.pso.velocity_clamp);
    cfg.pso.seed = r.unsigned_int("pso.seed", cfg.pso.seed);

    if (auto axis = r.take("sweep.axis")) {
        const std::string a = lower(*axis);
        if (a == "eve_x") cfg.sweep.axis = SweepAxis::eve_x;
        else if (a == "mirror_edge") cfg.sweep.axis = SweepAxis::mirror_edge;
        else throw validation_error("config sweep.axis: expected eve_x or mirror_edge");
    }
    if (auto values = r.take("sweep.values")) {
        cfg.sweep.values = parse_values(r, "sweep.values", *values);
    } else {
        cfg.sweep.values = cfg.sweep.axis == SweepAxis::eve_x
                               ? parse_values(r, "sweep.values", "-1:1:0.1")
                               : parse_values(r, "sweep.values", "0.04:0.12:0.01");
    }
    if (auto sizes = r.take("sweep.array_sizes")) {
        cfg.sweep.array_sizes.clear();
        for (const std::string& part : split(*sizes, ',')) {
            if (part.empty()) continue;
            const double d = r.to_number("sweep.array_sizes", part);
            if (d < 1 || d != std::floor(d)) {
                throw validation_error("config sweep.array_sizes: expected positive integers");
            }
            cfg.sweep.array_sizes.push_back(static_cast<int>(d));
        }
    } else {
        cfg.sweep.array_sizes = {4, 5, 6};
    }

    if (auto methods = r.take("experiment.methods")) {
        bool want[3] = {false, false, false};
        for (const std::string& part : split(*methods, ',')) {
            const std::string m = lower(part);
            if (m == "rsf") want[0] = true;
            else if (m == "fob") want[1] = true;
            else if (m == "noirs") want[2] = true;
            else if (!m.empty())
                throw validation_error("config experiment.methods: unknown method '" + part + "'");
        }
        cfg.methods.clear();
        if (want[0]) cfg.methods.push_back(Method::rsf);
        if (want[1]) cfg.methods.push_back(Method::fob);
        if (want[2]) cfg.methods.push_back(Method::noirs);
        if (cfg.methods.empty()) {
            throw validation_error("config experiment.methods: at least one method required");
        }
    } else {
        cfg.methods = {Method::rsf, Method::fob, Method::noirs};
    }
    if (auto out = r.take("experiment.output")) cfg.output_path = *out;
    cfg.gain_calibration = r.number("experiment.gain_calibration", cfg.gain_calibration);

    r.ensure_consumed();

    // Cross-field validation.
    validate_scenario(cfg.scenario);
    if (!(cfg.gain_calibration > 0.0)) {
        throw validation_error("experiment.gain_calibration must be positive");
    }
    if (cfg.sweep.values.empty()) throw validation_error("sweep.values must be nonempty");
    for (std::size_t k = 1; k < cfg.sweep.values.size(); ++k) {
        if (!(cfg.sweep.values[k] > cfg.sweep.values[k - 1])) {
            throw validation_error("sweep.values must be strictly increasing");
        }
    }
    if (cfg.sweep.axis == SweepAxis::mirror_edge) {
        for (double v : cfg.sweep.values) {
            if (!(v > 0.0)) throw validation_error("sweep.values: mirror edges must be positive");
        }
        if (cfg.sweep.array_sizes.empty()) {
            throw validation_error("sweep.array_sizes must be nonempty for mirror_edge sweeps");
        }
    }
    return cfg;
}

} // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::rsf: return "RSF";
        case Method::fob: return "FoB";
        case Method::noirs: return "NoIRS";
    }
    return "?";
}

ExperimentConfig load_config_text(const std::string& text) {
    Reader r(parse_ini(text));
    return build(r);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw io_error("failed reading config file: " + path);
    return load_config_text(buf.str());
}

} // namespace vlcirs
