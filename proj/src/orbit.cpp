#include "satq/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "satq/errors.hpp"

namespace satq::orbit {

namespace {
constexpr double kPi = std::numbers::pi;

double deg2rad(double d) { return d * kPi / 180.0; }

void check_config(const OrbitConfig& c) {
    if (!(c.altitude_km > 0.0)) throw ConfigError("orbit altitude_km must be > 0");
    if (!(c.min_elevation_deg >= 0.0 && c.min_elevation_deg < 90.0))
        throw ConfigError("orbit min_elevation_deg must be in [0, 90)");
    if (!(c.sample_interval_s > 0.0)) throw ConfigError("orbit sample_interval_s must be > 0");
}
}  // namespace

double slant_range(double elevation_rad, const OrbitConfig& config) {
    const double re = config.earth_radius_km;
    const double r = re + config.altitude_km;
    const double c = std::cos(elevation_rad);
    const double s = std::sin(elevation_rad);
    return std::sqrt(r * r - re * re * c * c) - re * s;
}

double elevation_from_central_angle(double psi_rad, const OrbitConfig& config) {
    const double re = config.earth_radius_km;
    const double r = re + config.altitude_km;
    // Observer at radius re, satellite at radius r separated by psi:
    // sin(elev) = (r cos(psi) - re) / L, with L the chord length.
    return std::atan2(std::cos(psi_rad) - re / r, std::sin(psi_rad));
}

double angular_rate(const OrbitConfig& config) {
    const double r = config.earth_radius_km + config.altitude_km;
    return std::sqrt(config.mu_earth_km3s2 / (r * r * r));
}

double central_angle_at_elevation(double elevation_rad, const OrbitConfig& config) {
    const double re = config.earth_radius_km;
    const double r = re + config.altitude_km;
    return std::acos(re / r * std::cos(elevation_rad)) - elevation_rad;
}

PassGeometry pass_geometry(const OrbitConfig& config) {
    check_config(config);
    const double theta_min = deg2rad(config.min_elevation_deg);
    const double xi = deg2rad(config.plane_offset_deg);
    const double omega = angular_rate(config);

    // Closest approach sits at central angle |xi|; the pass is visible only
    // if the elevation there clears the threshold.
    if (elevation_from_central_angle(std::fabs(xi), config) < theta_min)
        throw NoVisibility("maximum elevation below min_elevation_deg for this plane offset");

    // cos(psi(t)) = cos(xi) cos(omega t); solve for the in-track half angle
    // where elevation crosses theta_min.
    const double psi_max = central_angle_at_elevation(theta_min, config);
    const double cos_phi = std::clamp(std::cos(psi_max) / std::cos(xi), -1.0, 1.0);
    const double t_half = std::acos(cos_phi) / omega;

    const double dt = config.sample_interval_s;
    const long k_max = static_cast<long>(std::floor(t_half / dt + 1e-12));

    PassGeometry geometry;
    geometry.config = config;
    geometry.samples.reserve(2 * k_max + 1);
    for (long k = -k_max; k <= k_max; ++k) {
        const double t = static_cast<double>(k) * dt;
        const double cos_psi = std::cos(xi) * std::cos(omega * t);
        const double psi = std::acos(std::clamp(cos_psi, -1.0, 1.0));
        PassSample sample;
        sample.t_s = t;
        sample.elevation_rad = elevation_from_central_angle(psi, config);
        sample.slant_range_km = slant_range(sample.elevation_rad, config);
        geometry.samples.push_back(sample);
    }
    return geometry;
}

double window_duration(const PassGeometry& geometry, double threshold_elevation_rad) {
    const auto& s = geometry.samples;
    if (s.empty()) throw Error("window_duration: empty geometry");
    if (s.size() == 1) return 0.0;

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const double e0 = s[i].elevation_rad - threshold_elevation_rad;
        const double e1 = s[i + 1].elevation_rad - threshold_elevation_rad;
        const double dt = s[i + 1].t_s - s[i].t_s;
        if (e0 >= 0.0 && e1 >= 0.0) {
            total += dt;
        } else if (e0 >= 0.0 || e1 >= 0.0) {
            // crossing inside the interval; linear interpolation
            const double frac = std::fabs(e0 >= 0.0 ? e0 : e1) / std::fabs(e1 - e0);
            total += dt * frac;
        }
    }
    return total;
}

}  // namespace satq::orbit
