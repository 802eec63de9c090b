#pragma once

#include <limits>
#include <string>
#include <vector>

namespace gkpqpc {

// Minimal self-contained SVG 1.1 line chart. Plots are a convenience output;
// the CSV/JSON tables remain the contract.
struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  // Optional dashed vertical reference line (e.g. the hashing bound); NaN
  // disables it.
  double reference_x = std::numeric_limits<double>::quiet_NaN();
  std::string reference_label;
  int width = 720;
  int height = 480;
};

std::string render_line_chart(const std::vector<PlotSeries>& series, const PlotOptions& options);

void write_line_chart(const std::string& path, const std::vector<PlotSeries>& series,
                      const PlotOptions& options);

}  // namespace gkpqpc
