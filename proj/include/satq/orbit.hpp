#pragma once

#include <vector>

namespace satq::orbit {

inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kMuEarthKm3S2 = 398600.4418;

// Circular orbit over a spherical, non-rotating Earth. plane_offset_deg is
// the cross-track angle between the ground station and the orbital plane;
// zero puts the pass through the zenith.
struct OrbitConfig {
    double altitude_km = 500.0;
    double min_elevation_deg = 10.0;
    double plane_offset_deg = 0.0;
    double sample_interval_s = 1.0;
    double earth_radius_km = kEarthRadiusKm;
    double mu_earth_km3s2 = kMuEarthKm3S2;
};

struct PassSample {
    double t_s = 0.0;  // relative to closest approach, signed
    double elevation_rad = 0.0;
    double slant_range_km = 0.0;
};

struct PassGeometry {
    std::vector<PassSample> samples;
    OrbitConfig config;
};

// Line-of-sight distance ground station -> satellite at a given elevation.
double slant_range(double elevation_rad, const OrbitConfig& config);

// Elevation seen from the ground station when the Earth-central angle
// between station and sub-satellite point is psi.
double elevation_from_central_angle(double psi_rad, const OrbitConfig& config);

// Mean motion of the circular orbit, rad/s.
double angular_rate(const OrbitConfig& config);

// Central angle at which the satellite sits exactly at the given elevation.
double central_angle_at_elevation(double elevation_rad, const OrbitConfig& config);

// Samples one overpass on a grid anchored at closest approach, covering
// every instant with elevation >= min_elevation_deg.
// Throws NoVisibility when the pass never rises above the threshold.
PassGeometry pass_geometry(const OrbitConfig& config);

// Total time with elevation >= threshold; edges are linearly interpolated.
double window_duration(const PassGeometry& geometry, double threshold_elevation_rad);

}  // namespace satq::orbit
