#include "satq/channel.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <numbers>
#include <sstream>

#include "satq/errors.hpp"

namespace satq::channel {

namespace {
constexpr double kPi = std::numbers::pi;

// Guard against full underflow at grazing elevations so eta stays in (0,1].
constexpr double kEtaFloor = 1e-300;

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& field, long line) {
    const char* begin = field.data();
    const char* end = begin + field.size();
    while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    while (ptr != end && (*ptr == ' ' || *ptr == '\t')) ++ptr;
    if (ec != std::errc() || ptr != end)
        throw ParseError("invalid numeric field '" + field + "'", line);
    return value;
}
}  // namespace

double geometric_transmittance(double slant_range_km, const ChannelConfig& config) {
    const double w0 = config.beam_waist_m;
    const double z = slant_range_km * 1000.0;
    const double rayleigh = kPi * w0 * w0 / config.wavelength_m;
    const double w = w0 * std::sqrt(1.0 + (z / rayleigh) * (z / rayleigh));
    const double a = config.rx_aperture_m / 2.0;
    return -std::expm1(-2.0 * a * a / (w * w));
}

double atmospheric_transmittance(double elevation_rad, const AtmosphereModel& model) {
    if (const auto* parametric = std::get_if<ParametricAtmosphere>(&model)) {
        const double airmass = 1.0 / std::max(std::sin(elevation_rad), 1e-12);
        return std::max(std::pow(parametric->zenith_transmittance, airmass), kEtaFloor);
    }
    const auto& table = std::get<TableAtmosphere>(model);
    const double deg = elevation_rad * 180.0 / kPi;
    const auto& rows = table.rows;
    if (rows.empty()) throw Error("atmosphere table is empty");
    if (deg < rows.front().elevation_deg - 1.0)
        throw ElevationBelowTable("elevation " + std::to_string(deg) +
                                  " deg below atmosphere table start");
    if (deg <= rows.front().elevation_deg) return rows.front().transmittance;
    if (deg >= rows.back().elevation_deg) return rows.back().transmittance;
    auto upper = std::upper_bound(rows.begin(), rows.end(), deg,
                                  [](double v, const TableAtmosphere::Row& r) {
                                      return v < r.elevation_deg;
                                  });
    const auto& hi = *upper;
    const auto& lo = *(upper - 1);
    const double f = (deg - lo.elevation_deg) / (hi.elevation_deg - lo.elevation_deg);
    return lo.transmittance + f * (hi.transmittance - lo.transmittance);
}

LossProfile loss_profile(const orbit::PassGeometry& geometry, const ChannelConfig& config) {
    if (geometry.samples.empty()) throw Error("loss_profile: empty geometry");
    LossProfile profile;
    profile.source = ProfileSource::computed;
    profile.samples.reserve(geometry.samples.size());
    const double eta_intrinsic = eta_from_db(config.intrinsic_loss_db);
    for (const auto& g : geometry.samples) {
        LossSample s;
        s.t_s = g.t_s;
        s.elevation_rad = g.elevation_rad;
        s.eta_geometric = geometric_transmittance(g.slant_range_km, config);
        s.eta_atmospheric =
            atmospheric_transmittance(std::max(g.elevation_rad, 1e-9), config.atmosphere);
        s.eta_intrinsic = eta_intrinsic;
        s.eta_total = std::max(s.eta_geometric * s.eta_atmospheric * s.eta_intrinsic, kEtaFloor);
        s.loss_total_db = db_from_eta(s.eta_total);
        profile.samples.push_back(s);
    }
    return profile;
}

LossProfile ingest_loss_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open loss CSV: " + path);

    LossProfile profile;
    profile.source = ProfileSource::ingested;
    std::string line;
    long line_no = 0;
    bool have_header = false;
    bool with_breakdown = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_csv_line(line);
        if (!have_header) {
            if (fields.size() != 2 && fields.size() != 5)
                throw ParseError("expected header t_s,loss_db[,geometric_db,atmospheric_db,intrinsic_db]",
                                 line_no);
            if (fields[0] != "t_s" || fields[1] != "loss_db")
                throw ParseError("unexpected header '" + line + "'", line_no);
            with_breakdown = fields.size() == 5;
            have_header = true;
            continue;
        }
        if (fields.size() != (with_breakdown ? 5u : 2u))
            throw ParseError("wrong number of columns", line_no);

        LossSample s;
        s.t_s = parse_double(fields[0], line_no);
        const double loss_db = parse_double(fields[1], line_no);
        if (loss_db < 0.0) throw LossOutOfRange("loss_db must be >= 0", line_no);
        if (!profile.samples.empty() && s.t_s <= profile.samples.back().t_s)
            throw NonMonotonicTime("time column must be strictly increasing", line_no);
        s.elevation_rad = std::nan("");
        s.eta_total = eta_from_db(loss_db);
        s.loss_total_db = loss_db;
        if (with_breakdown) {
            const double geo = parse_double(fields[2], line_no);
            const double atm = parse_double(fields[3], line_no);
            const double intr = parse_double(fields[4], line_no);
            if (std::fabs(geo + atm + intr - loss_db) > 1e-6)
                throw ParseError("breakdown columns do not sum to loss_db", line_no);
            s.eta_geometric = eta_from_db(geo);
            s.eta_atmospheric = eta_from_db(atm);
            s.eta_intrinsic = eta_from_db(intr);
        } else {
            s.eta_geometric = s.eta_total;
            s.eta_atmospheric = 1.0;
            s.eta_intrinsic = 1.0;
        }
        profile.samples.push_back(s);
    }
    if (!have_header || profile.samples.empty())
        throw ParseError("loss CSV has no data rows", line_no == 0 ? 1 : line_no);
    return profile;
}

void export_loss_csv(const LossProfile& profile, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write loss CSV: " + path);
    out << "t_s,loss_db,geometric_db,atmospheric_db,intrinsic_db\n";
    char buf[256];
    for (const auto& s : profile.samples) {
        const double geo = db_from_eta(s.eta_geometric);
        const double atm = db_from_eta(s.eta_atmospheric);
        const double intr = db_from_eta(s.eta_intrinsic);
        // the total column is written as the exact sum so that re-ingestion
        // passes the breakdown consistency check bit-for-bit
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g\n", s.t_s,
                      geo + atm + intr, geo, atm, intr);
        out << buf;
    }
}

TableAtmosphere load_atmosphere_table_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open atmosphere table CSV: " + path);
    TableAtmosphere table;
    std::string line;
    long line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_csv_line(line);
        if (!have_header) {
            if (fields.size() != 2 || fields[0] != "elevation_deg" || fields[1] != "transmittance")
                throw ParseError("expected header elevation_deg,transmittance", line_no);
            have_header = true;
            continue;
        }
        if (fields.size() != 2) throw ParseError("wrong number of columns", line_no);
        TableAtmosphere::Row row;
        row.elevation_deg = parse_double(fields[0], line_no);
        row.transmittance = parse_double(fields[1], line_no);
        if (!(row.transmittance > 0.0 && row.transmittance <= 1.0))
            throw ParseError("transmittance must be in (0,1]", line_no);
        if (!table.rows.empty() && row.elevation_deg <= table.rows.back().elevation_deg)
            throw ParseError("elevation column must be strictly increasing", line_no);
        table.rows.push_back(row);
    }
    if (table.rows.empty()) throw ParseError("atmosphere table has no rows", 1);
    return table;
}

}  // namespace satq::channel
