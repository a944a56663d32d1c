#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "apal/experiment.hpp"

namespace apal {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  std::optional<double> y_min;
  std::optional<double> y_max;
  std::vector<Series> series;
};

// Self-contained SVG line chart. On a log axis, points with y <= 0 are dropped.
std::string render_svg(const PlotSpec& spec);

// Writes fig_<name>_<mode>_n<N>.svg for every (mode, N) in rows: error,
// error-log and success for all modes, plus entropy and generror for exact
// modes. A mode present at several N also gets overlay figures whose N tag
// joins the sizes with '-'. Returns the paths written.
std::vector<std::filesystem::path> emit_figures(const std::vector<MetricsRow>& rows,
                                                const std::filesystem::path& out_dir);

}  // namespace apal
