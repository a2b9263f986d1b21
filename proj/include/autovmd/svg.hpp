#pragma once

#include <json.hpp>

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace autovmd::svg {

//! [lo, hi] widened by 5% of the span on each side. A zero span widens by
//! 5% of |lo| (or 0.05 if lo is 0).
std::pair<double, double> padded_range(double lo, double hi);

struct Series
{
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool dashed = false;
};

struct Plot
{
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

//! Standalone SVG document. Axis ranges are the padded data ranges and are
//! recorded as data-x-min/data-x-max/data-y-min/data-y-max attributes.
std::string render(const Plot& plot);

//! Writes overlay.svg, trace.svg and mode_<k>.svg for a run record. Throws
//! MissingTraces when the record has no residual trace.
std::vector<std::filesystem::path> write_plots(const nlohmann::json& record,
                                               const std::filesystem::path& dir);

} // namespace autovmd::svg
