#include "satq/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "satq/errors.hpp"

namespace satq::report {

namespace {
std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    return out;
}
}  // namespace

void write_qkd_csv(const sim::PassReport& report, const std::string& path) {
    auto out = open_out(path);
    out << "t_s,elevation_deg,loss_db,skl_bits,skr_hz,qber_z,qber_x,mu1,mu2,p_mu1,p_za\n";
    for (const auto& w : report.qkd) {
        const double elev_deg = w.elevation_rad * 180.0 / std::numbers::pi;
        out << fmt(w.t_s) << ',' << fmt(elev_deg) << ',' << fmt(w.loss_db) << ','
            << fmt(w.analysis.skl) << ',' << fmt(w.analysis.skr_hz) << ','
            << fmt(w.analysis.qber_z) << ',' << fmt(w.analysis.qber_x) << ','
            << fmt(w.params.mu1) << ',' << fmt(w.params.mu2) << ',' << fmt(w.params.p_mu1) << ','
            << fmt(w.params.p_za) << '\n';
    }
}

void write_qkpc_csv(const sim::PassReport& report, const std::string& path) {
    auto out = open_out(path);
    out << "t_s,loss_db,qkpc_rate_bps,mu_opt,q_opt,c_p,r_dw\n";
    for (const auto& w : report.qkpc) {
        out << fmt(w.t_s) << ',' << fmt(w.loss_db) << ',' << fmt(w.result.rate_bps) << ','
            << fmt(w.result.mu_opt) << ',' << fmt(w.result.q_opt) << ',' << fmt(w.result.c_p)
            << ',' << fmt(w.result.r_dw) << '\n';
    }
}

void write_summary_json(const sim::PassReport& report, const std::string& path) {
    nlohmann::ordered_json j;
    const auto& s = report.summary;
    j["total_skl_bits"] = s.total_skl_bits;
    j["qkd_window_s"] = s.qkd_window_s;
    j["peak_skr_hz"] = s.peak_skr_hz;
    j["min_qber_z"] = s.min_qber_z;
    j["qkd_cutoff_loss_db"] = s.qkd_cutoff_loss_db;
    j["total_private_bits"] = s.total_private_bits;
    j["qkpc_rate_plateau_bps"] = s.qkpc_rate_plateau_bps;
    j["pass_duration_s"] = s.pass_duration_s;
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

void write_aperture_csv(const std::vector<sim::ApertureSweepRow>& rows, const std::string& path) {
    auto out = open_out(path);
    out << "d_t_m,zenith_loss_db,skr_hz\n";
    for (const auto& r : rows)
        out << fmt(r.d_t_m) << ',' << fmt(r.zenith_loss_db) << ',' << fmt(r.skr_hz) << '\n';
}

void write_svg_chart(const std::vector<Series>& series, const std::string& x_label,
                     const std::string& y_label, const std::string& path) {
    const int width = 720, height = 440;
    const int left = 70, right = 20, top = 20, bottom = 50;

    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            if (first) {
                xmin = xmax = s.x[i];
                ymin = ymax = s.y[i];
                first = false;
            }
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;

    auto px = [&](double x) {
        return left + (x - xmin) / (xmax - xmin) * (width - left - right);
    };
    auto py = [&](double y) {
        return height - bottom - (y - ymin) / (ymax - ymin) * (height - top - bottom);
    };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    auto out = open_out(path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "' font-family='sans-serif' font-size='12'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    // axes
    out << "<line x1='" << left << "' y1='" << top << "' x2='" << left << "' y2='"
        << height - bottom << "' stroke='black'/>\n";
    out << "<line x1='" << left << "' y1='" << height - bottom << "' x2='" << width - right
        << "' y2='" << height - bottom << "' stroke='black'/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 5.0;
        const double yv = ymin + (ymax - ymin) * i / 5.0;
        out << "<text x='" << px(xv) << "' y='" << height - bottom + 18
            << "' text-anchor='middle'>" << fmt(xv) << "</text>\n";
        out << "<text x='" << left - 8 << "' y='" << py(yv) + 4 << "' text-anchor='end'>"
            << fmt(yv) << "</text>\n";
        out << "<line x1='" << px(xv) << "' y1='" << height - bottom << "' x2='" << px(xv)
            << "' y2='" << height - bottom + 4 << "' stroke='black'/>\n";
        out << "<line x1='" << left - 4 << "' y1='" << py(yv) << "' x2='" << left << "' y2='"
            << py(yv) << "' stroke='black'/>\n";
    }
    out << "<text x='" << (left + width - right) / 2 << "' y='" << height - 12
        << "' text-anchor='middle'>" << x_label << "</text>\n";
    out << "<text x='16' y='" << (top + height - bottom) / 2
        << "' text-anchor='middle' transform='rotate(-90 16 " << (top + height - bottom) / 2
        << ")'>" << y_label << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        out << "<polyline fill='none' stroke='" << colors[s % 5] << "' stroke-width='1.5' points='";
        for (std::size_t i = 0; i < series[s].x.size(); ++i) {
            if (!std::isfinite(series[s].x[i]) || !std::isfinite(series[s].y[i])) continue;
            out << px(series[s].x[i]) << ',' << py(series[s].y[i]) << ' ';
        }
        out << "'/>\n";
        out << "<text x='" << width - right - 8 << "' y='" << top + 16 + 16 * s
            << "' text-anchor='end' fill='" << colors[s % 5] << "'>" << series[s].label
            << "</text>\n";
    }
    out << "</svg>\n";
}

void write_pass_plots(const sim::PassReport& report, const std::string& out_dir) {
    Series skr{"SKR (Hz)", {}, {}};
    Series qber{"QBER_Z", {}, {}};
    Series loss{"loss (dB)", {}, {}};
    Series mu1{"mu1", {}, {}}, mu2{"mu2", {}, {}}, pmu1{"p_mu1", {}, {}}, pza{"p_za", {}, {}};
    for (const auto& w : report.qkd) {
        skr.x.push_back(w.t_s);
        skr.y.push_back(w.analysis.skr_hz);
        qber.x.push_back(w.t_s);
        qber.y.push_back(w.analysis.qber_z);
        if (std::isfinite(w.elevation_rad)) {
            const double deg = w.elevation_rad * 180.0 / std::numbers::pi;
            loss.x.push_back(deg);
            loss.y.push_back(w.loss_db);
        }
        mu1.x.push_back(w.loss_db);
        mu1.y.push_back(w.params.mu1);
        mu2.x.push_back(w.loss_db);
        mu2.y.push_back(w.params.mu2);
        pmu1.x.push_back(w.loss_db);
        pmu1.y.push_back(w.params.p_mu1);
        pza.x.push_back(w.loss_db);
        pza.y.push_back(w.params.p_za);
    }
    Series qkpc_rate{"QKPC rate (bps)", {}, {}};
    for (const auto& w : report.qkpc) {
        qkpc_rate.x.push_back(w.t_s);
        qkpc_rate.y.push_back(w.result.rate_bps);
    }
    write_svg_chart({skr}, "time (s)", "secret key rate (Hz)", out_dir + "/skr_vs_time.svg");
    write_svg_chart({qber}, "time (s)", "QBER_Z", out_dir + "/qber_vs_time.svg");
    if (!loss.x.empty())
        write_svg_chart({loss}, "elevation (deg)", "total loss (dB)",
                        out_dir + "/loss_vs_elevation.svg");
    write_svg_chart({mu1, mu2}, "total loss (dB)", "intensity",
                    out_dir + "/intensities_vs_loss.svg");
    write_svg_chart({pmu1, pza}, "total loss (dB)", "probability",
                    out_dir + "/probabilities_vs_loss.svg");
    write_svg_chart({qkpc_rate}, "time (s)", "private rate (bps)",
                    out_dir + "/qkpc_rate_vs_time.svg");
}

}  // namespace satq::report
