#pragma once

#include "vlcirs/geometry.hpp"
#include "vlcirs/vec3.hpp"

// Scene description: room, extended planar source on the ceiling, photodiode
// receivers, wall-mounted mirror array and the two users. One Scenario value
// is the single input object for every gain/secrecy computation.

namespace vlcirs {

struct RoomSpec {
    double extent_x = 5.0; // m
    double extent_y = 5.0;
    double extent_z = 3.0;
};

/// Extended planar source with uniform radiant emittance over width x length,
/// centered at the frame origin on the ceiling plane z = 0.
struct SourceSpec {
    Vec3 center{0.0, 0.0, 0.0};
    double width = 0.01;                     // m, along x
    double length = 0.01;                    // m, along y
    double semi_angle = 1.2217304763960306;  // half-power semi-angle, 70 deg
    double conversion_efficiency = 0.44;     // W/A
};

/// Photodiode with optical concentrator. The normal faces the source plane.
struct ReceiverSpec {
    double area = 1e-4;          // m^2
    double responsivity = 0.54;  // A/W
    double refractive_index = 1.5;
    double fov_half_angle = 1.5707963267948966; // pi/2: concentrator never truncates
    double amplifier_gain = 1.0; // V/A
    Vec3 normal{0.0, 0.0, -1.0};
};

enum class UserRole { bob, eve };

/// User position in wall-referenced coordinates: x from the source center
/// along the wall, y measured from the wall into the room, depth below the
/// source plane.
struct UserSpec {
    UserRole role = UserRole::bob;
    double offset_x = 0.0;    // m
    double offset_y = 0.0;    // m, from the wall
    double plane_depth = 0.0; // m, below the source plane
};

/// Target point for the reflected spot in the receive plane, same coordinate
/// convention as UserSpec (x, y-from-wall, depth).
struct ReflectedSpot {
    double x = 0.0;
    double y = 0.0;
    double h = 0.0;
};

/// Midpoint-rule surface discretization; element_edge is the nominal side
/// length of the square elements (each integrated dimension is divided into
/// round(dim/edge) equal cells).
struct QuadratureSpec {
    double element_edge = 1e-3; // m
};

struct Scenario {
    RoomSpec room;
    SourceSpec source;
    ReceiverSpec receiver;
    MirrorArraySpec array;
    UserSpec bob;
    UserSpec eve;
    double signal_peak = 0.14;    // A, peak amplitude constraint
    double noise_variance = 0.0;  // A^2
    QuadratureSpec quadrature;
};

/// sigma^2 from a one-sided noise density (A^2/Hz) and bandwidth (Hz).
inline double noise_variance_from_bandwidth(double noise_density, double bandwidth) {
    return noise_density * bandwidth;
}

/// User position in the global frame (origin at the source center).
inline Vec3 user_position(const Scenario& sc, const UserSpec& user) {
    return {user.offset_x, user.offset_y - sc.array.offset_y, user.plane_depth};
}

/// Spot position in the global frame.
inline Vec3 spot_position(const Scenario& sc, const ReflectedSpot& q) {
    return {q.x, q.y - sc.array.offset_y, q.h};
}

/// Stock 5 m x 5 m x 3 m profile: 1 cm square source centered on the ceiling,
/// 5x5 array of 10 cm mirrors on one wall, Bob at (0.2, 2, 3) and Eve at
/// (0.1, 2, 3). Noise defaults to zero.
Scenario default_scenario();

/// Throws validation_error naming the first violated invariant.
void validate_scenario(const Scenario& sc);

} // namespace vlcirs
