#pragma once

#include <span>
#include <vector>

#include "vlcirs/radiometry.hpp"
#include "vlcirs/scenario.hpp"

// Secrecy-rate lower bound for the peak-constrained intensity-modulated
// wiretap channel, and its composition with the channel gains.

namespace vlcirs {

struct SecrecyInputs {
    double gain_bob = 0.0;
    double gain_eve = 0.0;
    double peak = 0.0;           // A
    double noise_variance = 0.0; // A^2
};

/// Unclamped lower bound, nats per channel use:
/// (1/2) ln[(6 A^2 hB^2 + 3 pi e s2) / (pi e A^2 hE^2 + 3 pi e s2)].
/// May be negative; +inf when the denominator vanishes with a positive
/// numerator. Throws validation_error when numerator and denominator are both
/// zero (requires s2 = 0 and both gains zero).
double secrecy_rate_lb_raw(const SecrecyInputs& in);

/// max(0, secrecy_rate_lb_raw): the reported secrecy rate.
double secrecy_rate_lb(const SecrecyInputs& in);

/// Secrecy rate of aiming every mirror at spot q: grid construction, both
/// users' gains, then the clamped bound. Geometrically impossible spots score
/// -infinity instead of throwing.
double secrecy_of_spot(const Scenario& sc, const ReflectedSpot& q);

/// Unclamped variant of secrecy_of_spot; the optimizer's fitness. Passing the
/// users' LoS gains avoids recomputing them per candidate spot (they do not
/// depend on q).
double secrecy_of_spot_raw(const Scenario& sc, const ReflectedSpot& q,
                           double los_bob, double los_eve);

/// Secrecy rate with the reflected paths removed (LoS only).
double secrecy_without_irs(const Scenario& sc);

/// One (gain_bob, gain_eve, rate) observation for noise calibration.
struct RateSample {
    double gain_bob = 0.0;
    double gain_eve = 0.0;
    double rate = 0.0; // nats per channel use
};

/// Closed-form inversion of the bound for sigma^2 given one positive-rate
/// sample: s2 = A^2 (6 hB^2 - e^{2R} pi e hE^2) / (3 pi e (e^{2R} - 1)).
/// Throws validation_error when rate <= 0 (not invertible).
double invert_noise_variance(double gain_bob, double gain_eve, double peak, double rate);

/// Least-squares sigma^2: minimizes the sum of squared clamped-rate residuals
/// over the samples (golden-section search on [0, upper]).
double fit_noise_variance(std::span<const RateSample> samples, double peak,
                          double upper = 1e-4);

} // namespace vlcirs
