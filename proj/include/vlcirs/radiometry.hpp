#pragma once

#include <cstddef>

#include "vlcirs/geometry.hpp"
#include "vlcirs/scenario.hpp"

// LoS and mirror-reflected channel gains via discretized surface integrals.
//
// Both integrals carry the source's uniform-emittance weight 1/(width*length),
// so a single-element source reduces exactly to the point-source Lambertian
// gain and the LoS and reflected paths share one absolute scale.
//
// Summation is deterministic: per-row Neumaier-compensated partial sums,
// reduced in fixed row order, so results are bit-identical regardless of the
// number of OpenMP threads. The production kernels additionally restrict the
// reflected-path integration to a conservative bounding box of the region
// whose pre-reflection image can fall inside the source aperture; elements
// outside it contribute exactly zero, so the culled sums equal the full-face
// sums bit for bit. The `reference` namespace keeps plain full-face serial
// implementations for testing and benchmarking.

namespace vlcirs {

/// Channel gains of one user. total is los + irs by construction.
struct ChannelGains {
    double los = 0.0;
    double irs = 0.0;
    double total() const { return los + irs; }
};

/// Optical concentrator gain: refractive_index^2 / sin^2(fov) inside the
/// field of view, 0 beyond it. incidence_angle in [0, pi].
double concentrator_gain(double incidence_angle, const ReceiverSpec& rx);

/// Line-of-sight channel gain of `user`: midpoint-rule discretization of the
/// Lambertian emission integral over the source aperture. Deterministic for a
/// fixed quadrature spec; throws geometry_error if the user is not strictly
/// below the source plane.
double los_gain(const Scenario& sc, const UserSpec& user);

/// Irradiance (per source emittance) at `user` contributed by mirror (i, j)
/// under orientation `o`: midpoint-rule integral over the mirror face of the
/// reflected-ray integrand, where a face element contributes only if its
/// pre-reflection image lies inside the source aperture. Elements facing away
/// from the user or above the receive direction contribute zero.
double irs_irradiance(const Scenario& sc, std::size_t i, std::size_t j,
                      const MirrorOrientation& o, const UserSpec& user);

/// Reflected-path channel gain: sum over all mirrors of the per-mirror
/// irradiance times the receiver's optoelectronic factors and concentrator
/// gain at the mirror-center incidence angle. Additive over mirrors.
double irs_gain(const Scenario& sc, const OrientationGrid& grid, const UserSpec& user);

/// Orientation grid aiming every mirror's reflected image of the source
/// center at spot q: per mirror, the specular normal for source -> mirror
/// center -> q converted to rotation angles. Propagates geometry_error for
/// geometrically impossible spots.
OrientationGrid orientation_grid_for_spot(const Scenario& sc, const ReflectedSpot& q);

namespace reference {

/// Full-face serial LoS gain; equals vlcirs::los_gain bit for bit.
double los_gain(const Scenario& sc, const UserSpec& user);

/// Full-face serial irradiance; equals vlcirs::irs_irradiance bit for bit.
double irs_irradiance(const Scenario& sc, std::size_t i, std::size_t j,
                      const MirrorOrientation& o, const UserSpec& user);

/// Full-face serial reflected-path gain; equals vlcirs::irs_gain bit for bit.
double irs_gain(const Scenario& sc, const OrientationGrid& grid, const UserSpec& user);

} // namespace reference

} // namespace vlcirs
