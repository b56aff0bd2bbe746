// rdgap: io.hpp
// Parsing of command-line literals and emission of CSV, SVG and manifests.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rdgap/spectrum.hpp"

namespace rdgap {

inline constexpr const char* kVersion = "0.1.0";

/// `a:b:step` -> a, a+step, ... up to b inclusive (1e-9 slack on the count);
/// values rounded to 12 significant digits so 0.005 steps print cleanly.
std::vector<double> parse_grid(std::string_view text);

/// `v1:w1,v2:w2,...`, `flat`, `semiflat:<fraction>` or `@path.csv`
/// (rows of value,weight; a non-numeric first row is taken as a header).
Spectrum parse_spectrum(std::string_view literal);

/// RFC 4180 field quoting: fields containing comma, quote, CR or LF are
/// wrapped in quotes with inner quotes doubled.
std::string csv_field(std::string_view field);
std::string csv_row(const std::vector<std::string>& fields);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
};

/// Standalone SVG document: axes, ticks, one polyline per series, legend.
std::string render_svg(const Plot& plot);

std::string xml_escape(std::string_view text);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

}  // namespace rdgap
