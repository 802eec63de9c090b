#include "gkpqpc/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gkpqpc {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double nice_step(double span, int target_ticks) {
  const double raw = span / std::max(1, target_ticks);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double mult : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= mult * mag * 1.0000001) return mult * mag;
  }
  return 10.0 * mag;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_line_chart(const std::vector<PlotSeries>& series, const PlotOptions& opt) {
  if (series.empty()) throw std::invalid_argument("render_line_chart: no series");
  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const PlotSeries& s : series) {
    if (s.x.size() != s.y.size())
      throw std::invalid_argument("render_line_chart: series size mismatch");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double y = s.y[i];
      if (opt.log_y && !(y > 0.0)) continue;
      x_min = std::min(x_min, s.x[i]);
      x_max = std::max(x_max, s.x[i]);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  }
  if (!(x_min <= x_max)) throw std::invalid_argument("render_line_chart: no plottable points");
  if (std::isfinite(opt.reference_x)) {
    x_min = std::min(x_min, opt.reference_x);
    x_max = std::max(x_max, opt.reference_x);
  }
  if (x_min == x_max) { x_min -= 0.5; x_max += 0.5; }
  if (y_min == y_max) { y_min -= 0.5; y_max += 0.5; }

  double ty_min = y_min, ty_max = y_max;
  if (opt.log_y) {
    ty_min = std::log10(y_min);
    ty_max = std::log10(y_max);
    if (ty_min == ty_max) { ty_min -= 0.5; ty_max += 0.5; }
  }

  const int ml = 70, mr = 20, mt = 40, mb = 55;
  const double pw = opt.width - ml - mr, ph = opt.height - mt - mb;
  auto sx = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * pw; };
  auto sy = [&](double y) {
    const double t = opt.log_y ? std::log10(y) : y;
    return mt + (ty_max - t) / (ty_max - ty_min) * ph;
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opt.width
      << "\" height=\"" << opt.height << "\" viewBox=\"0 0 " << opt.width << ' ' << opt.height
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << fmt(pw) << "\" height=\""
      << fmt(ph) << "\" fill=\"none\" stroke=\"#444\"/>\n";

  // x ticks
  const double xstep = nice_step(x_max - x_min, 8);
  for (double x = std::ceil(x_min / xstep) * xstep; x <= x_max + 1e-12; x += xstep) {
    const double px = sx(x);
    svg << "<line x1=\"" << fmt(px) << "\" y1=\"" << mt + ph << "\" x2=\"" << fmt(px)
        << "\" y2=\"" << fmt(mt + ph + 5) << "\" stroke=\"#444\"/>\n"
        << "<text x=\"" << fmt(px) << "\" y=\"" << fmt(mt + ph + 18)
        << "\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\">" << fmt(x)
        << "</text>\n";
  }
  // y ticks
  if (opt.log_y) {
    for (int e = static_cast<int>(std::floor(ty_min)); e <= static_cast<int>(std::ceil(ty_max));
         ++e) {
      const double y = std::pow(10.0, e);
      if (y < y_min * 0.999 || y > y_max * 1.001) continue;
      const double py = sy(y);
      svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << fmt(py) << "\" x2=\"" << ml << "\" y2=\""
          << fmt(py) << "\" stroke=\"#444\"/>\n"
          << "<text x=\"" << ml - 8 << "\" y=\"" << fmt(py + 4)
          << "\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">1e" << e
          << "</text>\n";
    }
  } else {
    const double ystep = nice_step(y_max - y_min, 6);
    for (double y = std::ceil(y_min / ystep) * ystep; y <= y_max + 1e-12; y += ystep) {
      const double py = sy(y);
      svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << fmt(py) << "\" x2=\"" << ml << "\" y2=\""
          << fmt(py) << "\" stroke=\"#444\"/>\n"
          << "<text x=\"" << ml - 8 << "\" y=\"" << fmt(py + 4)
          << "\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">" << fmt(y)
          << "</text>\n";
    }
  }

  if (std::isfinite(opt.reference_x)) {
    const double px = sx(opt.reference_x);
    svg << "<line x1=\"" << fmt(px) << "\" y1=\"" << mt << "\" x2=\"" << fmt(px) << "\" y2=\""
        << fmt(mt + ph) << "\" stroke=\"#888\" stroke-dasharray=\"6,4\"/>\n";
    if (!opt.reference_label.empty()) {
      svg << "<text x=\"" << fmt(px + 4) << "\" y=\"" << mt + 14
          << "\" font-size=\"11\" font-family=\"sans-serif\" fill=\"#555\">"
          << escape(opt.reference_label) << "</text>\n";
    }
  }

  for (std::size_t si = 0; si < series.size(); ++si) {
    const PlotSeries& s = series[si];
    const char* color = kPalette[si % (sizeof kPalette / sizeof kPalette[0])];
    std::ostringstream pts;
    bool open = false;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (opt.log_y && !(s.y[i] > 0.0)) continue;  // drop zero counts on log plots
      if (open) pts << ' ';
      pts << fmt(sx(s.x[i])) << ',' << fmt(sy(s.y[i]));
      open = true;
    }
    if (open) {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\""
          << pts.str() << "\"/>\n";
    }
    const double lx = ml + 12, ly = mt + 16 + 16.0 * si;
    svg << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\"" << fmt(lx + 22)
        << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << fmt(lx + 28) << "\" y=\"" << fmt(ly)
        << "\" font-size=\"11\" font-family=\"sans-serif\">" << escape(s.label) << "</text>\n";
  }

  svg << "<text x=\"" << opt.width / 2 << "\" y=\"20\" font-size=\"14\" text-anchor=\"middle\""
      << " font-family=\"sans-serif\">" << escape(opt.title) << "</text>\n";
  svg << "<text x=\"" << opt.width / 2 << "\" y=\"" << opt.height - 10
      << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\">"
      << escape(opt.x_label) << "</text>\n";
  svg << "<text x=\"16\" y=\"" << opt.height / 2
      << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\""
      << " transform=\"rotate(-90 16 " << opt.height / 2 << ")\">" << escape(opt.y_label)
      << "</text>\n</svg>\n";
  return svg.str();
}

void write_line_chart(const std::string& path, const std::vector<PlotSeries>& series,
                      const PlotOptions& options) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open for writing: " + path);
  out << render_line_chart(series, options);
  if (!out) throw std::ios_base::failure("write failed: " + path);
}

}  // namespace gkpqpc
