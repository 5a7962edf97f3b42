#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "satq/orbit.hpp"

namespace satq::channel {

// Plane-parallel atmosphere: transmittance = T_z^(1/sin(elevation)).
struct ParametricAtmosphere {
    double zenith_transmittance = 0.75;
};

// Piecewise-linear transmittance versus elevation (degrees), clamped at
// the table ends. Rows must be strictly increasing in elevation.
struct TableAtmosphere {
    struct Row {
        double elevation_deg;
        double transmittance;
    };
    std::vector<Row> rows;
};

using AtmosphereModel = std::variant<ParametricAtmosphere, TableAtmosphere>;

struct ChannelConfig {
    double tx_aperture_m = 0.04;
    double rx_aperture_m = 0.7;
    double beam_waist_m = 0.02;
    double wavelength_m = 1550e-9;
    double intrinsic_loss_db = 15.0;
    AtmosphereModel atmosphere = ParametricAtmosphere{};
};

struct LossSample {
    double t_s = 0.0;
    double elevation_rad = 0.0;  // NaN for ingested profiles without geometry
    double eta_geometric = 1.0;
    double eta_atmospheric = 1.0;
    double eta_intrinsic = 1.0;
    double eta_total = 1.0;
    double loss_total_db = 0.0;
};

enum class ProfileSource { computed, ingested };

struct LossProfile {
    std::vector<LossSample> samples;
    ProfileSource source = ProfileSource::computed;
};

// Fraction of a Gaussian beam of waist beam_waist_m collected by the
// receiver aperture after propagating slant_range_km.
double geometric_transmittance(double slant_range_km, const ChannelConfig& config);

// Throws ElevationBelowTable when a table model is given and the elevation
// lies more than 1 degree below the first row.
double atmospheric_transmittance(double elevation_rad, const AtmosphereModel& model);

// Composes geometric, atmospheric and intrinsic transmittances per sample.
LossProfile loss_profile(const orbit::PassGeometry& geometry, const ChannelConfig& config);

// CSV schema: header `t_s,loss_db[,geometric_db,atmospheric_db,intrinsic_db]`.
LossProfile ingest_loss_csv(const std::string& path);
void export_loss_csv(const LossProfile& profile, const std::string& path);

// Atmosphere table CSV: header `elevation_deg,transmittance`.
TableAtmosphere load_atmosphere_table_csv(const std::string& path);

inline double db_from_eta(double eta) { return -10.0 * std::log10(eta); }
inline double eta_from_db(double db) { return std::pow(10.0, -db / 10.0); }

}  // namespace satq::channel
