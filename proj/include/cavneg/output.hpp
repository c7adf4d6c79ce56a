#pragma once

// CSV and SVG emission. Files are written to a temporary sibling and renamed.

#include <filesystem>
#include <string>
#include <vector>

namespace cavneg {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// 12 significant digits, '.' decimal separator regardless of locale.
std::string format_number(double x);

/// Header line plus rows, LF line endings.
std::string to_csv(const CsvTable& table);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Line plot with linear axes, one polyline per series.
std::string to_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                   const std::vector<PlotSeries>& series);

/// $CAVNEG_OUT_DIR if set and non-empty, else the current directory.
std::filesystem::path output_directory();

/// `path` if absolute; otherwise output_directory() / (path or fallback).
std::filesystem::path resolve_output(const std::string& path, const std::string& fallback);

/// Writes via temp file + rename, creating parent directories. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace cavneg
