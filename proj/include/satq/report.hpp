#pragma once

#include <string>
#include <vector>

#include "satq/passsim.hpp"

namespace satq::report {

// Writers produce byte-identical output for identical inputs.
void write_qkd_csv(const sim::PassReport& report, const std::string& path);
void write_qkpc_csv(const sim::PassReport& report, const std::string& path);
void write_summary_json(const sim::PassReport& report, const std::string& path);
void write_aperture_csv(const std::vector<sim::ApertureSweepRow>& rows, const std::string& path);

// Minimal SVG line charts (rate vs time, loss vs elevation, parameter
// trends); numeric CSVs remain the contract, these are a convenience.
void write_pass_plots(const sim::PassReport& report, const std::string& out_dir);

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};
void write_svg_chart(const std::vector<Series>& series, const std::string& x_label,
                     const std::string& y_label, const std::string& path);

}  // namespace satq::report
