#pragma once

#include <cstddef>
#include <vector>

#include "vlcirs/vec3.hpp"

// Vector algebra, coordinate frames, mirror placement, rotation/normal
// conversions and specular-reflection constructions.
//
// Global frame used throughout the library:
//   - origin at the center of the optical source (the access point),
//   - x runs along the mirror wall,
//   - y is perpendicular to the wall and points into the room; the wall
//     plane sits at y = -array.offset_y,
//   - z points down from the source plane, so the source plane is z = 0
//     and the receive plane is z = plane_depth > 0.
// User and spot coordinates given as (x, y-from-wall, depth) convert to this
// frame via scenario.hpp helpers.

namespace vlcirs {

/// Absolute tolerance for geometric identities (unit-scale operands).
inline constexpr double kGeomTol = 1e-9;

/// Mirror rotation: roll about the mirror's width axis, yaw about the
/// vertical axis. Both lie in [-pi/2, pi/2]; the +-pi/2 endpoints are
/// admitted (edge-on mirror, zero projected face).
struct MirrorOrientation {
    double roll = 0.0; // radians
    double yaw = 0.0;  // radians
};

/// Per-mirror orientations for a rows x cols array, row-major.
struct OrientationGrid {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<MirrorOrientation> entries;

    static OrientationGrid filled(std::size_t rows, std::size_t cols,
                                  MirrorOrientation o = {});

    MirrorOrientation& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    const MirrorOrientation& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
};

/// Geometry of the wall-mounted mirror array.
struct MirrorArraySpec {
    std::size_t rows = 0;         // mirror count down the wall
    std::size_t cols = 0;         // mirror count along the wall
    double mirror_width = 0.0;    // m, along x
    double mirror_height = 0.0;   // m, along z
    double offset_x = 0.0;        // array's left edge relative to the source center
    double offset_y = 0.0;        // wall distance from the source center
    double offset_z = 0.0;        // array's top edge below the source plane
    double wall_offset = 0.0;     // room's left edge to the array's left edge
    double reflectivity = 1.0;    // in (0, 1]

    std::size_t mirror_count() const { return rows * cols; }
};

/// Lambertian emission order from the half-power semi-angle:
/// -ln 2 / ln(cos(angle)). Requires 0 < angle < pi/2.
double lambertian_order(double semi_angle_half_power);

/// Unit normal of a rotated mirror face:
/// (sin yaw * cos roll, cos yaw * cos roll, sin roll).
/// The zero rotation faces straight into the room, (0, 1, 0).
Vec3 normal_from_angles(const MirrorOrientation& o);

/// Exact inverse of normal_from_angles: roll = asin(n.z), yaw = atan2(n.x, n.y).
/// Requires n unit with n.y > 0 (mirror faces into the room); throws
/// geometry_error otherwise.
MirrorOrientation angles_from_normal(const Vec3& n);

/// Face normal that reflects a ray from source_pt off mirror_pt to target_pt:
/// the normalized sum of the unit vectors mirror->source and mirror->target.
/// Throws geometry_error when the two are antiparallel (no orientation exists).
Vec3 snell_normal(const Vec3& source_pt, const Vec3& mirror_pt, const Vec3& target_pt);

/// Mirror image of direction d about unit normal n: 2(n.d)n - d.
/// Requires n.d > 0 (d on the front side); throws geometry_error otherwise.
Vec3 reflect_about_normal(const Vec3& dir_to_receiver, const Vec3& normal);

/// Center of mirror (i, j), zero-based row/column. Mirrors tile the wall with
/// pitch mirror_width along x and mirror_height down the wall, anchored half a
/// pitch in from the array's top-left corner at (offset_x, offset_z).
Vec3 mirror_center(const MirrorArraySpec& array, std::size_t i, std::size_t j);

/// Orthonormal in-face axes plus normal of a rotated mirror. width_axis and
/// height_axis parameterize the face; normal equals normal_from_angles(o).
struct MirrorFrame {
    Vec3 width_axis;
    Vec3 height_axis;
    Vec3 normal;
};
MirrorFrame mirror_frame(const MirrorOrientation& o);

/// Intersection with the plane z = source_plane_z of the reversed reflected
/// ray: the ray leaving element_pt along the mirror image (about `normal`) of
/// the direction element->receiver. The returned point's z equals
/// source_plane_z exactly. Throws geometry_error when the ray misses the plane.
Vec3 pre_reflection_image(const Vec3& element_pt, const Vec3& normal,
                          const Vec3& receiver_pt, double source_plane_z);

} // namespace vlcirs
