#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace roisac::io {

// %.12g rendering shared by every writer so reruns stay byte-identical.
// NaN prints as "nan" and is the sentinel for not-applicable cells.
std::string format_number(double v);

struct Table {
  std::vector<std::string> columns; // header cells, units included in the name
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
};

std::string csv_to_string(const Table& table);
void write_csv(const std::filesystem::path& path, const Table& table);

void write_text_file(const std::filesystem::path& path, const std::string& content);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y; // NaN breaks the polyline
};

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  std::vector<Series> series;
};

// Self-contained SVG line chart, no external renderer involved.
std::string render_line_chart(const ChartSpec& spec);

} // namespace roisac::io
