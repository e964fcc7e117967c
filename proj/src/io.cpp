#include "roisac/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace roisac::io {
namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

} // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  return fmt(v, "%.12g");
}

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("table row width does not match the header");
  rows.push_back(std::move(row));
}

std::string csv_to_string(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw std::invalid_argument("table row width does not match the header");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_number(row[c]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::filesystem::path& path, const Table& table) {
  write_text_file(path, csv_to_string(table));
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << content;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

std::string render_line_chart(const ChartSpec& spec) {
  constexpr double W = 760.0, H = 480.0;
  constexpr double ML = 72.0, MR = 24.0, MT = 44.0, MB = 56.0;
  const double pw = W - ML - MR;
  const double ph = H - MT - MB;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : spec.series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (std::isnan(s.x[i]) || std::isnan(s.y[i])) continue;
      if (spec.log_y && s.y[i] <= 0.0) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      const double yv = spec.log_y ? std::log10(s.y[i]) : s.y[i];
      ymin = std::min(ymin, yv);
      ymax = std::max(ymax, yv);
    }
  }
  if (!(xmin <= xmax)) { xmin = 0.0; xmax = 1.0; ymin = 0.0; ymax = 1.0; }
  if (xmax - xmin < 1e-12) { xmin -= 0.5; xmax += 0.5; }
  if (ymax - ymin < 1e-12) { ymin -= 0.5; ymax += 0.5; }

  auto px = [&](double x) { return ML + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) {
    const double yv = spec.log_y ? std::log10(y) : y;
    return MT + ph - (yv - ymin) / (ymax - ymin) * ph;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
      << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n"
      << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">" << spec.title << "</text>\n";

  constexpr int kTicks = 5;
  for (int t = 0; t <= kTicks; ++t) {
    const double fx = xmin + (xmax - xmin) * t / kTicks;
    const double gx = px(fx);
    svg << "<line x1=\"" << gx << "\" y1=\"" << MT << "\" x2=\"" << gx << "\" y2=\""
        << MT + ph << "\" stroke=\"#dddddd\"/>\n"
        << "<text x=\"" << gx << "\" y=\"" << MT + ph + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt(fx, "%.4g") << "</text>\n";

    const double fy = ymin + (ymax - ymin) * t / kTicks;
    const double gy = MT + ph - ph * t / kTicks;
    svg << "<line x1=\"" << ML << "\" y1=\"" << gy << "\" x2=\"" << ML + pw << "\" y2=\""
        << gy << "\" stroke=\"#dddddd\"/>\n"
        << "<text x=\"" << ML - 6 << "\" y=\"" << gy + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt(spec.log_y ? std::pow(10.0, fy) : fy, "%.3g") << "</text>\n";
  }
  svg << "<rect x=\"" << ML << "\" y=\"" << MT << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"#333333\"/>\n"
      << "<text x=\"" << ML + pw / 2 << "\" y=\"" << H - 16
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << spec.x_label << "</text>\n"
      << "<text x=\"18\" y=\"" << MT + ph / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 18 " << MT + ph / 2 << ")\">" << spec.y_label << "</text>\n";

  for (std::size_t si = 0; si < spec.series.size(); ++si) {
    const auto& s = spec.series[si];
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::string points;
    auto flush = [&]() {
      if (!points.empty()) {
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\""
            << points << "\"/>\n";
        points.clear();
      }
    };
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      const bool bad = std::isnan(s.x[i]) || std::isnan(s.y[i]) || (spec.log_y && s.y[i] <= 0.0);
      if (bad) { flush(); continue; }
      points += fmt(px(s.x[i]), "%.2f") + "," + fmt(py(s.y[i]), "%.2f") + " ";
      svg << "<circle cx=\"" << fmt(px(s.x[i]), "%.2f") << "\" cy=\"" << fmt(py(s.y[i]), "%.2f")
          << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    }
    flush();
    const double ly = MT + 16.0 + 18.0 * static_cast<double>(si);
    svg << "<line x1=\"" << ML + pw - 150 << "\" y1=\"" << ly << "\" x2=\"" << ML + pw - 126
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"1.8\"/>\n"
        << "<text x=\"" << ML + pw - 120 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

} // namespace roisac::io
