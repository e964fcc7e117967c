#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "roisac/io.hpp"

using namespace roisac;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("numbers render with stable precision") {
  CHECK(io::format_number(0.0) == "0");
  CHECK(io::format_number(1.5) == "1.5");
  CHECK(io::format_number(-3.25e-7) == "-3.25e-07");
  CHECK(io::format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(io::format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("tables render to csv with one header line") {
  io::Table t;
  t.columns = {"a", "b_m", "c"};
  t.add_row({1.0, 2.5, std::numeric_limits<double>::quiet_NaN()});
  t.add_row({-1.0, 0.0, 4e9});
  CHECK(io::csv_to_string(t) == "a,b_m,c\n1,2.5,nan\n-1,0,4000000000\n");
}

TEST_CASE("row width mismatches are rejected") {
  io::Table t;
  t.columns = {"a", "b"};
  CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(t.add_row({1.0, 2.0, 3.0}), std::invalid_argument);
  t.rows.push_back({1.0});
  CHECK_THROWS_AS(io::csv_to_string(t), std::invalid_argument);
}

TEST_CASE("csv writing creates parent directories and round-trips bytes") {
  const auto dir = std::filesystem::temp_directory_path() / "roisac_io_test";
  std::filesystem::remove_all(dir);
  const auto path = dir / "nested" / "data.csv";

  io::Table t;
  t.columns = {"x", "y"};
  t.add_row({1.0, 2.0});
  io::write_csv(path, t);
  REQUIRE(std::filesystem::exists(path));
  CHECK(slurp(path) == io::csv_to_string(t));

  // Rewriting yields identical bytes.
  io::write_csv(path, t);
  CHECK(slurp(path) == io::csv_to_string(t));
  std::filesystem::remove_all(dir);
}

TEST_CASE("line charts are self-contained svg with every series") {
  io::ChartSpec spec;
  spec.title = "response";
  spec.x_label = "input";
  spec.y_label = "output";
  spec.series.push_back({"measured", {0.0, 1.0, 2.0}, {0.5, 0.7, 0.65}});
  spec.series.push_back({"model", {0.0, 1.0, 2.0}, {0.5, 0.68, 0.66}});

  const std::string svg = io::render_line_chart(spec);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("measured") != std::string::npos);
  CHECK(svg.find("model") != std::string::npos);
  CHECK(svg.find("response") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("circle") != std::string::npos);
  CHECK(svg.find("http://") == svg.find("http://www.w3.org/2000/svg")); // no external refs
}

TEST_CASE("nan samples break the polyline instead of corrupting it") {
  io::ChartSpec spec;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  spec.series.push_back({"gappy", {0.0, 1.0, 2.0, 3.0}, {1.0, nan, 2.0, 3.0}});
  const std::string svg = io::render_line_chart(spec);
  CHECK(svg.find("nan") == std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("log charts skip nonpositive values") {
  io::ChartSpec spec;
  spec.log_y = true;
  spec.series.push_back({"ber", {0.0, 4.0, 8.0}, {1e-2, 0.0, 1e-5}});
  const std::string svg = io::render_line_chart(spec);
  CHECK(svg.find("nan") == std::string::npos);
  CHECK(svg.find("inf") == std::string::npos);
}

TEST_CASE("degenerate chart inputs still produce valid svg") {
  io::ChartSpec flat;
  flat.series.push_back({"point", {1.0}, {2.0}});
  const std::string one = io::render_line_chart(flat);
  CHECK(one.find("<svg") == 0);
  CHECK(one.find("nan") == std::string::npos);

  io::ChartSpec empty;
  const std::string none = io::render_line_chart(empty);
  CHECK(none.find("<svg") == 0);
  CHECK(none.find("</svg>") != std::string::npos);
}
