#include "vlcirs/secrecy.hpp"

#include <cmath>
#include <limits>

#include "vlcirs/errors.hpp"

namespace vlcirs {

namespace {
constexpr double kPiE = 8.539734222673566; // pi * e

void check_inputs(const SecrecyInputs& in) {
    if (!(in.gain_bob >= 0.0) || !(in.gain_eve >= 0.0))
        throw validation_error("secrecy: channel gains must be nonnegative");
    if (!(in.peak > 0.0)) throw validation_error("secrecy: peak amplitude must be positive");
    if (!(in.noise_variance >= 0.0))
        throw validation_error("secrecy: noise variance must be nonnegative");
}
} // namespace

double secrecy_rate_lb_raw(const SecrecyInputs& in) {
    check_inputs(in);
    const double a2 = in.peak * in.peak;
    const double noise = 3.0 * kPiE * in.noise_variance;
    const double num = 6.0 * a2 * in.gain_bob * in.gain_bob + noise;
    const double den = kPiE * a2 * in.gain_eve * in.gain_eve + noise;
    if (num == 0.0 && den == 0.0) {
        throw validation_error("secrecy: undefined ratio (zero noise and zero gains)");
    }
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return 0.5 * std::log(num / den);
}

double secrecy_rate_lb(const SecrecyInputs& in) {
    return std::max(0.0, secrecy_rate_lb_raw(in));
}

double secrecy_of_spot_raw(const Scenario& sc, const ReflectedSpot& q,
                           double los_bob, double los_eve) {
    try {
        const OrientationGrid grid = orientation_grid_for_spot(sc, q);
        const double hb = los_bob + irs_gain(sc, grid, sc.bob);
        const double he = los_eve + irs_gain(sc, grid, sc.eve);
        return secrecy_rate_lb_raw({hb, he, sc.signal_peak, sc.noise_variance});
    } catch (const geometry_error&) {
        return -std::numeric_limits<double>::infinity();
    }
}

double secrecy_of_spot(const Scenario& sc, const ReflectedSpot& q) {
    const double raw = secrecy_of_spot_raw(sc, q, los_gain(sc, sc.bob), los_gain(sc, sc.eve));
    if (raw == -std::numeric_limits<double>::infinity()) return raw;
    return std::max(0.0, raw);
}

double secrecy_without_irs(const Scenario& sc) {
    return secrecy_rate_lb({los_gain(sc, sc.bob), los_gain(sc, sc.eve),
                            sc.signal_peak, sc.noise_variance});
}

double invert_noise_variance(double gain_bob, double gain_eve, double peak, double rate) {
    if (!(rate > 0.0)) {
        throw validation_error("invert_noise_variance: rate must be positive");
    }
    const double e2r = std::exp(2.0 * rate);
    const double a2 = peak * peak;
    return a2 * (6.0 * gain_bob * gain_bob - e2r * kPiE * gain_eve * gain_eve) /
           (3.0 * kPiE * (e2r - 1.0));
}

double fit_noise_variance(std::span<const RateSample> samples, double peak, double upper) {
    if (samples.empty()) throw validation_error("fit_noise_variance: no samples");
    if (!(peak > 0.0)) throw validation_error("fit_noise_variance: peak must be positive");
    if (!(upper > 0.0)) throw validation_error("fit_noise_variance: upper bound must be positive");

    const auto sse = [&](double s2) {
        double acc = 0.0;
        for (const RateSample& s : samples) {
            const double r = secrecy_rate_lb({s.gain_bob, s.gain_eve, peak, s2});
            const double d = r - s.rate;
            acc += d * d;
        }
        return acc;
    };

    // Golden-section search; the objective is piecewise-smooth and effectively
    // unimodal in s2 for physical sample sets.
    const double gr = 0.6180339887498949;
    double lo = 0.0, hi = upper;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = sse(c), fd = sse(d);
    for (int it = 0; it < 300; ++it) {
        if (fc < fd) {
            hi = d; d = c; fd = fc;
            c = hi - gr * (hi - lo);
            fc = sse(c);
        } else {
            lo = c; c = d; fc = fd;
            d = lo + gr * (hi - lo);
            fd = sse(d);
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace vlcirs
