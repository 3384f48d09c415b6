#include "vlcirs/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "vlcirs/errors.hpp"
#include "vlcirs/radiometry.hpp"
#include "vlcirs/secrecy.hpp"

namespace vlcirs {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kHalfPi = 1.5707963267948966;

// 53-bit uniform in [0, 1); hand-rolled so streams are identical across
// standard libraries.
double canonical(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double clamp_abs(double v, double cap) {
    if (v > cap) return cap;
    if (v < -cap) return -cap;
    return v;
}

} // namespace

FeasibleBox feasible_box(const Scenario& sc) {
    const MirrorArraySpec& a = sc.array;
    if (a.wall_offset > sc.room.extent_x + a.offset_x) {
        throw validation_error("feasible_box: wall offset places the receive plane outside x > 0");
    }
    FeasibleBox box;
    box.x_lo = -a.wall_offset + a.offset_x;
    box.x_hi = sc.room.extent_x - a.wall_offset + a.offset_x;
    box.y_lo = 0.0;
    box.y_hi = sc.room.extent_y;
    box.h = sc.bob.plane_depth;
    return box;
}

ReflectedSpot fob_spot(const Scenario& sc) {
    const FeasibleBox box = feasible_box(sc);
    const ReflectedSpot q{sc.bob.offset_x, sc.bob.offset_y, sc.bob.plane_depth};
    if (!box.contains(q)) {
        throw validation_error("fob_spot: Bob lies outside the feasible box");
    }
    return q;
}

Particle pso_step(const Particle& p, const ReflectedSpot& gbest, const PsoParams& params,
                  const FeasibleBox& box, double r1, double r2) {
    Particle out = p;

    double vx = params.inertia * p.velocity.x +
                params.learn_personal * r1 * (p.best_position.x - p.position.x) +
                params.learn_global * r2 * (gbest.x - p.position.x);
    double vy = params.inertia * p.velocity.y +
                params.learn_personal * r1 * (p.best_position.y - p.position.y) +
                params.learn_global * r2 * (gbest.y - p.position.y);

    vx = clamp_abs(vx, params.velocity_clamp * box.extent_x());
    vy = clamp_abs(vy, params.velocity_clamp * box.extent_y());

    double x = p.position.x + vx;
    double y = p.position.y + vy;
    if (x < box.x_lo) { x = box.x_lo; vx = 0.0; }
    if (x > box.x_hi) { x = box.x_hi; vx = 0.0; }
    if (y < box.y_lo) { y = box.y_lo; vy = 0.0; }
    if (y > box.y_hi) { y = box.y_hi; vy = 0.0; }

    out.velocity = {vx, vy, 0.0};
    out.position = {x, y, p.position.h};
    return out;
}

OptimizationResult pso_ii(const Scenario& sc, const PsoParams& params) {
    if (params.swarm_size < 1) throw validation_error("pso_ii: swarm_size must be >= 1");
    if (params.max_iterations < 1) throw validation_error("pso_ii: max_iterations must be >= 1");
    if (!(params.inertia > 0.0) || params.inertia > 1.0)
        throw validation_error("pso_ii: inertia must lie in (0, 1]");
    if (params.learn_personal < 0.0 || params.learn_global < 0.0)
        throw validation_error("pso_ii: learning factors must be nonnegative");

    const FeasibleBox box = feasible_box(sc);
    const ReflectedSpot start = fob_spot(sc);
    const double los_bob = los_gain(sc, sc.bob);
    const double los_eve = los_gain(sc, sc.eve);

    std::mt19937_64 rng(params.seed);
    const std::size_t n = params.swarm_size;

    std::vector<Particle> swarm(n);
    swarm[0].position = start;
    for (std::size_t k = 1; k < n; ++k) {
        const double x = box.x_lo + canonical(rng) * box.extent_x();
        const double y = box.y_lo + canonical(rng) * box.extent_y();
        swarm[k].position = {x, y, box.h};
    }

    std::vector<double> fitness(n);
    const auto evaluate_all = [&]() {
#pragma omp parallel for schedule(dynamic)
        for (int k = 0; k < static_cast<int>(n); ++k) {
            fitness[static_cast<std::size_t>(k)] =
                secrecy_of_spot_raw(sc, swarm[static_cast<std::size_t>(k)].position,
                                    los_bob, los_eve);
        }
    };

    OptimizationResult result;
    result.evaluations = 0;

    evaluate_all();
    result.evaluations += n;

    ReflectedSpot gbest{};
    double gbest_fit = kNegInf;
    for (std::size_t k = 0; k < n; ++k) {
        swarm[k].best_position = swarm[k].position;
        swarm[k].best_fitness = fitness[k];
        if (fitness[k] > gbest_fit) {
            gbest_fit = fitness[k];
            gbest = swarm[k].position;
        }
    }
    result.fitness_trace.push_back(std::max(0.0, gbest_fit));

    for (std::size_t iter = 0; iter < params.max_iterations; ++iter) {
        // Draws and moves are sequential in particle order against the
        // previous iteration's gbest; only the fitness evaluations run
        // concurrently. Results are therefore seed-deterministic.
        for (std::size_t k = 0; k < n; ++k) {
            const double r1 = canonical(rng);
            const double r2 = canonical(rng);
            swarm[k] = pso_step(swarm[k], gbest, params, box, r1, r2);
        }
        evaluate_all();
        result.evaluations += n;

        for (std::size_t k = 0; k < n; ++k) {
            if (fitness[k] > swarm[k].best_fitness) {
                swarm[k].best_fitness = fitness[k];
                swarm[k].best_position = swarm[k].position;
            }
            if (fitness[k] > gbest_fit) {
                gbest_fit = fitness[k];
                gbest = swarm[k].position;
            }
        }
        result.fitness_trace.push_back(std::max(0.0, gbest_fit));
    }

    result.best_spot = gbest;
    result.best_fitness = std::max(0.0, gbest_fit);
    return result;
}

std::pair<ReflectedSpot, double> grid_oracle_spot(const Scenario& sc, double step) {
    if (!(step > 0.0)) throw validation_error("grid_oracle_spot: step must be positive");
    const FeasibleBox box = feasible_box(sc);
    const double los_bob = los_gain(sc, sc.bob);
    const double los_eve = los_gain(sc, sc.eve);

    const auto count = [&](double extent) {
        const int n = static_cast<int>(std::ceil(extent / step - 1e-12));
        return n < 1 ? 1 : n;
    };
    const int nx = count(box.extent_x());
    const int ny = count(box.extent_y());

    std::vector<double> values(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
#pragma omp parallel for schedule(dynamic)
    for (int ix = 0; ix < nx; ++ix) {
        for (int iy = 0; iy < ny; ++iy) {
            const ReflectedSpot q{box.x_lo + ix * step, box.y_lo + iy * step, box.h};
            const double raw = secrecy_of_spot_raw(sc, q, los_bob, los_eve);
            values[static_cast<std::size_t>(ix) * ny + iy] =
                raw == kNegInf ? kNegInf : std::max(0.0, raw);
        }
    }

    int best_ix = 0, best_iy = 0;
    double best = kNegInf;
    for (int ix = 0; ix < nx; ++ix) {
        for (int iy = 0; iy < ny; ++iy) {
            const double v = values[static_cast<std::size_t>(ix) * ny + iy];
            if (v > best) { best = v; best_ix = ix; best_iy = iy; }
        }
    }
    return {{box.x_lo + best_ix * step, box.y_lo + best_iy * step, box.h}, best};
}

std::pair<OrientationGrid, double> orientation_grid_oracle(const Scenario& sc,
                                                           double angle_step) {
    validate_scenario(sc); // gain evaluations below run inside a parallel region
    if (sc.array.mirror_count() > 2) {
        throw validation_error("orientation_grid_oracle: arrays above 2 mirrors are intractable");
    }
    if (angle_step < 0.25 * 3.141592653589793 / 180.0 - 1e-15) {
        throw validation_error("orientation_grid_oracle: angle_step below 0.25 degrees");
    }

    const int steps = static_cast<int>(std::floor(3.141592653589793 / angle_step + 0.5));
    OrientationGrid grid = OrientationGrid::filled(sc.array.rows, sc.array.cols);

    for (std::size_t i = 0; i < sc.array.rows; ++i) {
        for (std::size_t j = 0; j < sc.array.cols; ++j) {
            // Interior grid over (-pi/2, pi/2) per angle.
            std::vector<double> gains(static_cast<std::size_t>(steps - 1) *
                                      static_cast<std::size_t>(steps - 1));
#pragma omp parallel for schedule(dynamic)
            for (int ka = 1; ka < steps; ++ka) {
                Scenario one = sc; // per-thread copy, evaluated read-only
                for (int kb = 1; kb < steps; ++kb) {
                    const MirrorOrientation o{-kHalfPi + ka * angle_step,
                                              -kHalfPi + kb * angle_step};
                    OrientationGrid g = OrientationGrid::filled(1, 1, o);
                    Scenario single = one;
                    single.array.rows = 1;
                    single.array.cols = 1;
                    single.array.offset_x =
                        sc.array.offset_x + static_cast<double>(j) * sc.array.mirror_width;
                    single.array.offset_z =
                        sc.array.offset_z + static_cast<double>(i) * sc.array.mirror_height;
                    gains[static_cast<std::size_t>(ka - 1) * (steps - 1) + (kb - 1)] =
                        irs_gain(single, g, single.bob);
                }
            }
            int best_ka = 1, best_kb = 1;
            double best = -1.0;
            for (int ka = 1; ka < steps; ++ka) {
                for (int kb = 1; kb < steps; ++kb) {
                    const double v =
                        gains[static_cast<std::size_t>(ka - 1) * (steps - 1) + (kb - 1)];
                    if (v > best) { best = v; best_ka = ka; best_kb = kb; }
                }
            }
            grid.at(i, j) = {-kHalfPi + best_ka * angle_step, -kHalfPi + best_kb * angle_step};
        }
    }

    const double hb = los_gain(sc, sc.bob) + irs_gain(sc, grid, sc.bob);
    const double he = los_gain(sc, sc.eve) + irs_gain(sc, grid, sc.eve);
    const double rate = secrecy_rate_lb({hb, he, sc.signal_peak, sc.noise_variance});
    return {std::move(grid), rate};
}

} // namespace vlcirs
