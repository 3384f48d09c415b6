#include "vlcirs/radiometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "vlcirs/errors.hpp"

namespace vlcirs {

namespace {

constexpr double kTwoPi = 6.283185307179586;
constexpr double kHalfPi = 1.5707963267948966;

// Neumaier-compensated accumulator. Adding an exact zero leaves the state
// unchanged, which the culled kernels rely on for bit-identical sums.
struct NeumaierSum {
    double s = 0.0;
    double c = 0.0;
    void add(double v) {
        const double t = s + v;
        if (std::abs(s) >= std::abs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

int cells_for(double dim, double edge) {
    const int n = static_cast<int>(std::llround(dim / edge));
    return n < 1 ? 1 : n;
}

// ------------------------------------------------------------------ LoS ----

struct SourceQuad {
    Vec3 user;        // receiver position
    Vec3 rx_normal;
    double src_z;
    double x0, y0;    // first element center
    double dx, dy;
    int nx, ny;
    double lambert_order;
    double cos_fov, g_val;
};

SourceQuad make_source_quad(const Scenario& sc, const UserSpec& user) {
    SourceQuad q;
    q.user = user_position(sc, user);
    q.rx_normal = sc.receiver.normal;
    q.src_z = sc.source.center.z;
    q.nx = cells_for(sc.source.width, sc.quadrature.element_edge);
    q.ny = cells_for(sc.source.length, sc.quadrature.element_edge);
    q.dx = sc.source.width / q.nx;
    q.dy = sc.source.length / q.ny;
    q.x0 = sc.source.center.x - 0.5 * sc.source.width + 0.5 * q.dx;
    q.y0 = sc.source.center.y - 0.5 * sc.source.length + 0.5 * q.dy;
    q.lambert_order = lambertian_order(sc.source.semi_angle);
    q.cos_fov = std::cos(sc.receiver.fov_half_angle);
    const double sf = std::sin(sc.receiver.fov_half_angle);
    q.g_val = sc.receiver.refractive_index * sc.receiver.refractive_index / (sf * sf);
    return q;
}

double los_row_sum(const SourceQuad& q, int iy) {
    NeumaierSum row;
    const double ey = q.y0 + iy * q.dy;
    for (int ix = 0; ix < q.nx; ++ix) {
        const Vec3 elem{q.x0 + ix * q.dx, ey, q.src_z};
        const Vec3 d = q.user - elem;
        const double d2 = d.norm_sq();
        const double dist = std::sqrt(d2);
        const double cos_ir = d.z / dist; // source normal points down, +z
        if (!(cos_ir > 0.0)) continue;
        const double cos_in = -q.rx_normal.dot(d) / dist;
        if (!(cos_in > 0.0) || cos_in < q.cos_fov) continue;
        row.add(q.g_val * std::pow(cos_ir, q.lambert_order) * cos_in / d2);
    }
    return row.value();
}

double los_gain_impl(const Scenario& sc, const UserSpec& user, bool parallel) {
    if (!(user.plane_depth > sc.source.center.z)) {
        throw geometry_error("los_gain: user must lie strictly below the source plane");
    }
    const SourceQuad q = make_source_quad(sc, user);

    std::vector<double> rows(static_cast<std::size_t>(q.ny));
    // Threading pays off only once the grid is reasonably tall; either way the
    // per-row partials keep the reduction order fixed.
#pragma omp parallel for schedule(static) if (parallel && q.ny >= 32)
    for (int iy = 0; iy < q.ny; ++iy) {
        rows[static_cast<std::size_t>(iy)] = los_row_sum(q, iy);
    }

    NeumaierSum total;
    for (int iy = 0; iy < q.ny; ++iy) total.add(rows[static_cast<std::size_t>(iy)]);

    const double pref = sc.source.conversion_efficiency * (q.lambert_order + 1.0) *
                        sc.receiver.area * sc.receiver.responsivity *
                        sc.receiver.amplifier_gain / kTwoPi;
    return total.value() * pref / (static_cast<double>(q.nx) * static_cast<double>(q.ny));
}

// ------------------------------------------------------- reflected path ----

struct MirrorQuad {
    Vec3 center;
    Vec3 w_axis, h_axis, normal;
    Vec3 user;
    double ru;       // normal . (user - center), constant over the flat face
    double plane_z;  // source plane
    double src_cx, src_cy, half_ws, half_ls;
    double u0, v0, du, dv;
    int nu, nv;
    double lambert_order;
};

MirrorQuad make_mirror_quad(const Scenario& sc, std::size_t i, std::size_t j,
                            const MirrorOrientation& o, const UserSpec& user,
                            double lambert) {
    MirrorQuad q;
    q.center = mirror_center(sc.array, i, j);
    const MirrorFrame f = mirror_frame(o);
    q.w_axis = f.width_axis;
    q.h_axis = f.height_axis;
    q.normal = f.normal;
    q.user = user_position(sc, user);
    q.ru = q.normal.dot(q.user - q.center);
    q.plane_z = sc.source.center.z;
    q.src_cx = sc.source.center.x;
    q.src_cy = sc.source.center.y;
    q.half_ws = 0.5 * sc.source.width;
    q.half_ls = 0.5 * sc.source.length;
    q.nu = cells_for(sc.array.mirror_width, sc.quadrature.element_edge);
    q.nv = cells_for(sc.array.mirror_height, sc.quadrature.element_edge);
    q.du = sc.array.mirror_width / q.nu;
    q.dv = sc.array.mirror_height / q.nv;
    q.u0 = -0.5 * sc.array.mirror_width + 0.5 * q.du;
    q.v0 = -0.5 * sc.array.mirror_height + 0.5 * q.dv;
    q.lambert_order = lambert;
    return q;
}

// One quadrature row of the reflected-ray integrand: an element contributes
// only if the reversed reflected ray from it hits the source plane inside the
// source aperture.
double face_row_sum(const MirrorQuad& q, int iv, int iu_begin, int iu_end) {
    NeumaierSum row;
    const double v = q.v0 + iv * q.dv;
    const Vec3 row_base = q.center + v * q.h_axis;
    for (int iu = iu_begin; iu < iu_end; ++iu) {
        const double u = q.u0 + iu * q.du;
        const Vec3 elem = row_base + u * q.w_axis;
        const Vec3 d = q.user - elem;
        if (!(d.z > 0.0)) continue;               // user above the element
        const Vec3 r = 2.0 * q.ru * q.normal - d; // reversed reflected ray
        if (!(r.z < 0.0)) continue;               // must climb toward the source plane
        const double t = (q.plane_z - elem.z) / r.z;
        if (!(t > 0.0)) continue;
        const double ix = elem.x + t * r.x - q.src_cx;
        const double iy = elem.y + t * r.y - q.src_cy;
        if (ix < -q.half_ws || ix > q.half_ws || iy < -q.half_ls || iy > q.half_ls) continue;
        const double d2 = d.norm_sq();
        const double cos_in = -r.z / std::sqrt(d2); // incidence at the source plane
        row.add(std::pow(cos_in, q.lambert_order) * d.z * q.ru / (d2 * d2));
    }
    return row.value();
}

struct FaceRange {
    int iu0, iu1, iv0, iv1; // inclusive element index bounds
    bool empty;
};

// Conservative bounding box of the face region whose pre-reflection image can
// land inside the source aperture: project the aperture corners from the
// user's mirror image onto the face plane. Falls back to the full face when
// the projection degenerates.
FaceRange cull_range(const MirrorQuad& q) {
    const FaceRange full{0, q.nu - 1, 0, q.nv - 1, false};
    if (!(q.ru > 0.0)) return {0, -1, 0, -1, true}; // user behind the face: all zero

    const Vec3 pstar = q.user - (2.0 * q.ru) * q.normal;
    double umin = std::numeric_limits<double>::infinity(), umax = -umin;
    double vmin = umin, vmax = -umin;
    for (int cx = -1; cx <= 1; cx += 2) {
        for (int cy = -1; cy <= 1; cy += 2) {
            const Vec3 corner{q.src_cx + cx * q.half_ws, q.src_cy + cy * q.half_ls, q.plane_z};
            const Vec3 cp = corner - pstar;
            const double denom = q.normal.dot(cp);
            if (!(denom > 1e-12)) return full;
            const double s = q.ru / denom;
            if (!(s > 0.0) || !std::isfinite(s)) return full;
            const Vec3 hit = pstar + s * cp - q.center;
            const double u = hit.dot(q.w_axis);
            const double v = hit.dot(q.h_axis);
            if (!std::isfinite(u) || !std::isfinite(v)) return full;
            umin = std::min(umin, u); umax = std::max(umax, u);
            vmin = std::min(vmin, v); vmax = std::max(vmax, v);
        }
    }
    const double margin_u = q.du + 1e-9, margin_v = q.dv + 1e-9;
    umin -= margin_u; umax += margin_u;
    vmin -= margin_v; vmax += margin_v;

    FaceRange r;
    r.iu0 = std::max(0, static_cast<int>(std::ceil((umin - q.u0) / q.du)));
    r.iu1 = std::min(q.nu - 1, static_cast<int>(std::floor((umax - q.u0) / q.du)));
    r.iv0 = std::max(0, static_cast<int>(std::ceil((vmin - q.v0) / q.dv)));
    r.iv1 = std::min(q.nv - 1, static_cast<int>(std::floor((vmax - q.v0) / q.dv)));
    r.empty = r.iu0 > r.iu1 || r.iv0 > r.iv1;
    return r;
}

// Face integral without the constant prefactor.
double face_sum(const MirrorQuad& q, bool cull) {
    FaceRange range{0, q.nu - 1, 0, q.nv - 1, !(q.ru > 0.0)};
    if (cull) range = cull_range(q);
    if (range.empty || !(q.ru > 0.0)) return 0.0;

    NeumaierSum total;
    for (int iv = range.iv0; iv <= range.iv1; ++iv) {
        total.add(face_row_sum(q, iv, range.iu0, range.iu1 + 1));
    }
    return total.value();
}

void check_orientation(const MirrorOrientation& o) {
    if (std::abs(o.roll) > kHalfPi + 1e-12 || std::abs(o.yaw) > kHalfPi + 1e-12) {
        throw geometry_error("mirror orientation outside [-pi/2, pi/2]");
    }
}

double irradiance_prefactor(const Scenario& sc, const MirrorQuad& q) {
    return (q.lambert_order + 1.0) * sc.array.reflectivity / kTwoPi * (q.du * q.dv) /
           (sc.source.width * sc.source.length);
}

double irs_irradiance_impl(const Scenario& sc, std::size_t i, std::size_t j,
                           const MirrorOrientation& o, const UserSpec& user, bool cull) {
    check_orientation(o);
    const double lambert = lambertian_order(sc.source.semi_angle);
    const MirrorQuad q = make_mirror_quad(sc, i, j, o, user, lambert);
    return face_sum(q, cull) * irradiance_prefactor(sc, q);
}

// Irradiance times the concentrator and incidence factors at the receiver,
// evaluated toward the mirror center.
double mirror_gain_term(const Scenario& sc, std::size_t i, std::size_t j,
                        const MirrorOrientation& o, const UserSpec& user,
                        double lambert, double cos_fov, double g_val, bool cull) {
    const MirrorQuad q = make_mirror_quad(sc, i, j, o, user, lambert);
    const Vec3 to_mirror = q.center - q.user;
    const double dist = to_mirror.norm();
    const double cos_in = sc.receiver.normal.dot(to_mirror) / dist;
    if (!(cos_in > 0.0) || cos_in < cos_fov) return 0.0;
    const double e = face_sum(q, cull) * irradiance_prefactor(sc, q);
    return e * g_val * cos_in;
}

double irs_gain_impl(const Scenario& sc, const OrientationGrid& grid, const UserSpec& user,
                     bool parallel, bool cull) {
    if (grid.rows != sc.array.rows || grid.cols != sc.array.cols ||
        grid.entries.size() != sc.array.mirror_count()) {
        throw validation_error("irs_gain: orientation grid does not match the array dimensions");
    }
    for (const MirrorOrientation& o : grid.entries) check_orientation(o);

    const double lambert = lambertian_order(sc.source.semi_angle);
    const double cos_fov = std::cos(sc.receiver.fov_half_angle);
    const double sf = std::sin(sc.receiver.fov_half_angle);
    const double g_val = sc.receiver.refractive_index * sc.receiver.refractive_index / (sf * sf);

    const int count = static_cast<int>(sc.array.mirror_count());
    std::vector<double> terms(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static) if (parallel)
    for (int m = 0; m < count; ++m) {
        const std::size_t i = static_cast<std::size_t>(m) / sc.array.cols;
        const std::size_t j = static_cast<std::size_t>(m) % sc.array.cols;
        terms[static_cast<std::size_t>(m)] =
            mirror_gain_term(sc, i, j, grid.at(i, j), user, lambert, cos_fov, g_val, cull);
    }

    NeumaierSum total;
    for (int m = 0; m < count; ++m) total.add(terms[static_cast<std::size_t>(m)]);

    return total.value() * sc.source.conversion_efficiency * sc.receiver.responsivity *
           sc.receiver.area * sc.receiver.amplifier_gain;
}

} // namespace

double concentrator_gain(double incidence_angle, const ReceiverSpec& rx) {
    if (!(incidence_angle >= 0.0) || incidence_angle > 3.141592653589793 + 1e-12) {
        throw geometry_error("concentrator_gain: incidence angle outside [0, pi]");
    }
    if (incidence_angle > rx.fov_half_angle) return 0.0;
    const double s = std::sin(rx.fov_half_angle);
    return rx.refractive_index * rx.refractive_index / (s * s);
}

double los_gain(const Scenario& sc, const UserSpec& user) {
    return los_gain_impl(sc, user, true);
}

double irs_irradiance(const Scenario& sc, std::size_t i, std::size_t j,
                      const MirrorOrientation& o, const UserSpec& user) {
    return irs_irradiance_impl(sc, i, j, o, user, true);
}

double irs_gain(const Scenario& sc, const OrientationGrid& grid, const UserSpec& user) {
    return irs_gain_impl(sc, grid, user, true, true);
}

OrientationGrid orientation_grid_for_spot(const Scenario& sc, const ReflectedSpot& q) {
    OrientationGrid grid = OrientationGrid::filled(sc.array.rows, sc.array.cols);
    const Vec3 target = spot_position(sc, q);
    for (std::size_t i = 0; i < sc.array.rows; ++i) {
        for (std::size_t j = 0; j < sc.array.cols; ++j) {
            const Vec3 rc = mirror_center(sc.array, i, j);
            const Vec3 n = snell_normal(sc.source.center, rc, target);
            grid.at(i, j) = angles_from_normal(n);
        }
    }
    return grid;
}

namespace reference {

double los_gain(const Scenario& sc, const UserSpec& user) {
    return los_gain_impl(sc, user, false);
}

double irs_irradiance(const Scenario& sc, std::size_t i, std::size_t j,
                      const MirrorOrientation& o, const UserSpec& user) {
    return irs_irradiance_impl(sc, i, j, o, user, false);
}

double irs_gain(const Scenario& sc, const OrientationGrid& grid, const UserSpec& user) {
    return irs_gain_impl(sc, grid, user, false, false);
}

} // namespace reference

} // namespace vlcirs
