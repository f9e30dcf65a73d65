#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace qtrack::cli {

/// One curve of a panel.  x and y must have equal length.
struct Series {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
};

/// One plotting area: a titled box with shared axes for all its series.
struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;        ///< decade scale; values are clamped to log_floor
  double log_floor = 1e-9;
  bool equal_aspect = false; ///< same units per pixel on both axes
  std::vector<Series> series;
};

/// Renders the panels stacked vertically into a standalone SVG file.  Long
/// series are decimated for display; endpoints are always kept.
void write_svg(const std::filesystem::path& file, const std::vector<Panel>& panels);

}  // namespace qtrack::cli
