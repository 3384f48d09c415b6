#include "vlcirs/geometry.hpp"

#include <cmath>
#include <string>

#include "vlcirs/errors.hpp"

namespace vlcirs {

namespace {
constexpr double kHalfPi = 1.5707963267948966;
// Slack admitted on the closed [-pi/2, pi/2] angle box.
constexpr double kAngleSlack = 1e-12;
} // namespace

OrientationGrid OrientationGrid::filled(std::size_t rows, std::size_t cols,
                                        MirrorOrientation o) {
    OrientationGrid g;
    g.rows = rows;
    g.cols = cols;
    g.entries.assign(rows * cols, o);
    return g;
}

double lambertian_order(double semi_angle_half_power) {
    if (!(semi_angle_half_power > 0.0) || !(semi_angle_half_power < kHalfPi)) {
        throw geometry_error("lambertian_order: semi-angle must lie in (0, pi/2)");
    }
    const double c = std::cos(semi_angle_half_power);
    if (!(c > 0.0)) {
        throw geometry_error("lambertian_order: cos(semi-angle) must be positive");
    }
    return -std::log(2.0) / std::log(c);
}

Vec3 normal_from_angles(const MirrorOrientation& o) {
    if (std::abs(o.roll) > kHalfPi + kAngleSlack || std::abs(o.yaw) > kHalfPi + kAngleSlack) {
        throw geometry_error("normal_from_angles: angle outside [-pi/2, pi/2]");
    }
    const double ca = std::cos(o.roll), sa = std::sin(o.roll);
    const double cb = std::cos(o.yaw), sb = std::sin(o.yaw);
    return {sb * ca, cb * ca, sa};
}

MirrorOrientation angles_from_normal(const Vec3& n) {
    if (!(n.y > 0.0)) {
        throw geometry_error("angles_from_normal: normal does not face into the room (n.y <= 0)");
    }
    double nz = n.z;
    if (nz > 1.0) nz = 1.0;
    if (nz < -1.0) nz = -1.0;
    return {std::asin(nz), std::atan2(n.x, n.y)};
}

Vec3 snell_normal(const Vec3& source_pt, const Vec3& mirror_pt, const Vec3& target_pt) {
    const Vec3 a = source_pt - mirror_pt;
    const Vec3 b = target_pt - mirror_pt;
    const double na = a.norm(), nb = b.norm();
    if (na == 0.0 || nb == 0.0) {
        throw geometry_error("snell_normal: source or target coincides with the mirror point");
    }
    const Vec3 h = a * (1.0 / na) + b * (1.0 / nb);
    const double hn = h.norm();
    if (hn <= 1e-12) {
        throw geometry_error("snell_normal: degenerate grazing geometry (antiparallel rays)");
    }
    return h * (1.0 / hn);
}

Vec3 reflect_about_normal(const Vec3& dir_to_receiver, const Vec3& normal) {
    const double nd = normal.dot(dir_to_receiver);
    if (!(nd > 0.0)) {
        throw geometry_error("reflect_about_normal: direction behind the mirror plane (n.d <= 0)");
    }
    return 2.0 * nd * normal - dir_to_receiver;
}

Vec3 mirror_center(const MirrorArraySpec& array, std::size_t i, std::size_t j) {
    if (i >= array.rows || j >= array.cols) {
        throw geometry_error("mirror_center: index (" + std::to_string(i) + ", " +
                             std::to_string(j) + ") out of range for " +
                             std::to_string(array.rows) + "x" + std::to_string(array.cols));
    }
    return {array.offset_x + 0.5 * array.mirror_width + static_cast<double>(j) * array.mirror_width,
            -array.offset_y,
            array.offset_z + 0.5 * array.mirror_height + static_cast<double>(i) * array.mirror_height};
}

MirrorFrame mirror_frame(const MirrorOrientation& o) {
    // Columns of the rotation mapping the unrotated face axes (x across the
    // width, z down the height, +y the normal) to the rotated ones. Chosen so
    // the normal column reproduces normal_from_angles exactly.
    const double ca = std::cos(o.roll), sa = std::sin(o.roll);
    const double cb = std::cos(o.yaw), sb = std::sin(o.yaw);
    MirrorFrame f;
    f.width_axis = {cb, -sb, 0.0};
    f.height_axis = {-sa * sb, -sa * cb, ca};
    f.normal = {sb * ca, cb * ca, sa};
    return f;
}

Vec3 pre_reflection_image(const Vec3& element_pt, const Vec3& normal,
                          const Vec3& receiver_pt, double source_plane_z) {
    const Vec3 to_receiver = receiver_pt - element_pt;
    const double nrm = to_receiver.norm();
    if (nrm == 0.0) {
        throw geometry_error("pre_reflection_image: receiver coincides with the element");
    }
    const Vec3 rdir = reflect_about_normal(to_receiver * (1.0 / nrm), normal);
    const double dz = source_plane_z - element_pt.z;
    if (rdir.z == 0.0) {
        throw geometry_error("pre_reflection_image: reflected ray parallel to the source plane");
    }
    const double t = dz / rdir.z;
    if (!(t > 0.0)) {
        throw geometry_error("pre_reflection_image: reflected ray directed away from the source plane");
    }
    Vec3 image = element_pt + t * rdir;
    image.z = source_plane_z; // exact plane membership
    return image;
}

} // namespace vlcirs
