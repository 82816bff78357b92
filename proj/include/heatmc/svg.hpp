#pragma once

#include <span>
#include <string>

#include "heatmc/field.hpp"

namespace heatmc::svg {

struct PlotOptions {
  std::string title;
  std::string x_label = "iteration";
  std::string y_label;
  int width = 640;
  int height = 400;
  /// Polylines longer than this are decimated (first and last points kept).
  std::size_t max_points = 4000;
};

/// Standalone SVG document with axes, ticks and a single polyline.
std::string line_plot(std::span<const double> x, std::span<const double> y, const PlotOptions& opts);

/// Cell heatmap of a field, row 0 at the bottom, with a colour bar.
std::string heatmap(const ConductivityField& f, const std::string& title, int cell_px = 18);

/// XML text escaping for &, <, >, ", '.
std::string escape(const std::string& text);

}  // namespace heatmc::svg
