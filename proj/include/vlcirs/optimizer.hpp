#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "vlcirs/geometry.hpp"
#include "vlcirs/scenario.hpp"

// Mirror-orientation optimization: the focus-on-Bob baseline, the
// reflected-spot search solved with a seeded particle swarm, and brute-force
// oracles used to validate both.

namespace vlcirs {

/// Axis-aligned region of the receive plane admissible for the reflected
/// spot; the depth coordinate is pinned to the users' plane depth.
struct FeasibleBox {
    double x_lo = 0.0, x_hi = 0.0;
    double y_lo = 0.0, y_hi = 0.0;
    double h = 0.0;

    double extent_x() const { return x_hi - x_lo; }
    double extent_y() const { return y_hi - y_lo; }
    bool contains(const ReflectedSpot& q, double tol = 0.0) const {
        return q.x >= x_lo - tol && q.x <= x_hi + tol &&
               q.y >= y_lo - tol && q.y <= y_hi + tol;
    }
};

/// Receive-plane bounds for the spot: x in [offset_x - wall_offset,
/// room.x - wall_offset + offset_x], y in [0, room.y], h = bob's plane depth.
FeasibleBox feasible_box(const Scenario& sc);

/// The focus-on-Bob spot: Bob's coordinates at the receive plane. Throws
/// validation_error if Bob lies outside the feasible box.
ReflectedSpot fob_spot(const Scenario& sc);

struct PsoParams {
    std::size_t swarm_size = 30;
    std::size_t max_iterations = 100;
    double inertia = 0.729;
    double learn_personal = 1.49445;
    double learn_global = 1.49445;
    double velocity_clamp = 0.5; // fraction of the box extent, per axis
    std::uint64_t seed = 1;
};

struct Particle {
    ReflectedSpot position;
    Vec3 velocity;      // z component stays 0
    ReflectedSpot best_position;
    double best_fitness = 0.0;
};

/// One velocity/position update:
///   v' = inertia * v + c1 r1 (pbest - w) + c2 r2 (gbest - w), w' = w + v',
/// with v' clamped per axis to velocity_clamp * extent and w' clamped to the
/// box (velocity zeroed on a clamped axis). The depth component never moves.
Particle pso_step(const Particle& p, const ReflectedSpot& gbest, const PsoParams& params,
                  const FeasibleBox& box, double r1, double r2);

struct OptimizationResult {
    ReflectedSpot best_spot;
    double best_fitness = 0.0;         // clamped secrecy rate, nats
    std::vector<double> fitness_trace; // best-so-far per iteration (entry 0 = init)
    std::size_t evaluations = 0;
};

/// Seeded particle swarm over the feasible box. Particle 1 starts at Bob's
/// position, the rest uniformly in the box; fitness is the (unclamped)
/// secrecy rate of the spot, so the result never falls below the
/// focus-on-Bob baseline. Fully deterministic given the seed, independent of
/// thread count.
OptimizationResult pso_ii(const Scenario& sc, const PsoParams& params);

/// Exhaustive secrecy evaluation on a regular grid over the feasible box
/// (points lo + k*step, upper edges excluded; x-index major). Returns the
/// argmax spot and its clamped secrecy rate, first-found ties.
std::pair<ReflectedSpot, double> grid_oracle_spot(const Scenario& sc, double step);

/// Brute-force orientation search at desk scale: for each mirror (at most 2),
/// exhaustively scans (roll, yaw) on an angle_step grid maximizing that
/// mirror's own reflected-gain term for Bob — valid per-mirror because the
/// gain is additive over mirrors. Returns the assembled grid and its secrecy
/// rate. Throws validation_error for arrays above 2 mirrors or steps below
/// 0.25 degrees.
std::pair<OrientationGrid, double> orientation_grid_oracle(const Scenario& sc,
                                                           double angle_step);

} // namespace vlcirs
