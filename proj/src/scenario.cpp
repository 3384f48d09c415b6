#include "vlcirs/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "vlcirs/errors.hpp"

namespace vlcirs {

namespace {
constexpr double kPi = 3.141592653589793;

void check(bool ok, const char* what) {
    if (!ok) throw validation_error(what);
}

void check_user(const Scenario& sc, const UserSpec& u, const char* name) {
    const double room_x_lo = sc.array.offset_x - sc.array.wall_offset;
    const double room_x_hi = room_x_lo + sc.room.extent_x;
    if (u.offset_x < room_x_lo || u.offset_x > room_x_hi)
        throw validation_error(std::string(name) + ".x outside the room");
    if (u.offset_y < 0.0 || u.offset_y > sc.room.extent_y)
        throw validation_error(std::string(name) + ".y outside the room");
    if (!(u.plane_depth > 0.0) || u.plane_depth > sc.room.extent_z)
        throw validation_error(std::string(name) + ".depth must lie in (0, room.z]");
}
} // namespace

Scenario default_scenario() {
    Scenario sc;
    sc.room = {5.0, 5.0, 3.0};

    sc.source.width = 0.01;
    sc.source.length = 0.01;
    sc.source.semi_angle = 70.0 * kPi / 180.0;
    sc.source.conversion_efficiency = 0.44;

    sc.receiver.area = 1e-4;
    sc.receiver.responsivity = 0.54;
    sc.receiver.refractive_index = 1.5;
    sc.receiver.fov_half_angle = kPi / 2.0;
    sc.receiver.amplifier_gain = 1.0;

    sc.array.rows = 5;
    sc.array.cols = 5;
    sc.array.mirror_width = 0.1;
    sc.array.mirror_height = 0.1;
    sc.array.offset_x = -0.26;
    sc.array.offset_y = 2.5;
    sc.array.offset_z = 0.5;
    sc.array.wall_offset = 2.24;
    sc.array.reflectivity = 0.8;

    sc.bob = {UserRole::bob, 0.2, 2.0, 3.0};
    sc.eve = {UserRole::eve, 0.1, 2.0, 3.0};

    sc.signal_peak = 0.14;
    sc.noise_variance = 0.0;
    sc.quadrature.element_edge = 1e-3;
    return sc;
}

void validate_scenario(const Scenario& sc) {
    check(sc.room.extent_x > 0 && sc.room.extent_y > 0 && sc.room.extent_z > 0,
          "room dimensions must be positive");

    check(sc.source.width > 0 && sc.source.length > 0, "source dimensions must be positive");
    check(sc.source.semi_angle > 0 && sc.source.semi_angle < kPi / 2,
          "source.semi_angle must lie in (0, pi/2)");
    check(sc.source.conversion_efficiency > 0, "source.conversion_efficiency must be positive");

    check(sc.receiver.area > 0, "receiver.area must be positive");
    check(sc.receiver.responsivity > 0, "receiver.responsivity must be positive");
    check(sc.receiver.refractive_index > 0, "receiver.refractive_index must be positive");
    check(sc.receiver.amplifier_gain > 0, "receiver.amplifier_gain must be positive");
    check(sc.receiver.fov_half_angle > 0 && sc.receiver.fov_half_angle <= kPi / 2 + 1e-12,
          "receiver.fov_half_angle must lie in (0, pi/2]");
    check(std::abs(sc.receiver.normal.norm() - 1.0) < 1e-9, "receiver.normal must be unit length");

    check(sc.array.rows > 0 && sc.array.cols > 0, "array must have at least one mirror");
    check(sc.array.mirror_width > 0 && sc.array.mirror_height > 0,
          "mirror dimensions must be positive");
    check(sc.array.offset_y > 0, "array.offset_y (wall distance) must be positive");
    check(sc.array.reflectivity > 0 && sc.array.reflectivity <= 1.0,
          "array.reflectivity must lie in (0, 1]");

    // Array footprint inside the wall.
    const double room_x_lo = sc.array.offset_x - sc.array.wall_offset;
    const double array_x_hi =
        sc.array.offset_x + static_cast<double>(sc.array.cols) * sc.array.mirror_width;
    check(sc.array.wall_offset >= 0, "array.wall_offset must be nonnegative");
    check(array_x_hi <= room_x_lo + sc.room.extent_x + 1e-12, "array extends past the wall in x");
    const double array_z_hi =
        sc.array.offset_z + static_cast<double>(sc.array.rows) * sc.array.mirror_height;
    check(sc.array.offset_z >= 0 && array_z_hi <= sc.room.extent_z + 1e-12,
          "array extends past the wall in z");
    check(sc.array.offset_y <= sc.room.extent_y, "source lies outside the room in y");

    check_user(sc, sc.bob, "bob");
    check_user(sc, sc.eve, "eve");

    check(sc.signal_peak > 0, "signal_peak must be positive");
    check(sc.noise_variance >= 0, "noise_variance must be nonnegative");

    const double edge = sc.quadrature.element_edge;
    check(edge > 0, "quadrature.element_edge must be positive");
    const double smallest = std::min(std::min(sc.source.width, sc.source.length),
                                     std::min(sc.array.mirror_width, sc.array.mirror_height));
    check(edge <= smallest + 1e-15,
          "quadrature.element_edge exceeds the smallest integrated dimension");
}

} // namespace vlcirs
