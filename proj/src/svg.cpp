#include "autovmd/svg.hpp"

#include "autovmd/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace autovmd::svg {

namespace {

constexpr double width = 720, height = 400;
constexpr double left = 70, right = 20, top = 40, bottom = 50;

std::string esc(const std::string& s)
{
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

void write_file(const std::filesystem::path& p, const std::string& text)
{
  std::ofstream out(p);
  require(out.good(), ErrorCode::IoError, "cannot write " + p.string());
  out << text;
}

} // namespace

std::pair<double, double> padded_range(double lo, double hi)
{
  double span = hi - lo;
  if (span <= 0)
    span = lo != 0 ? std::abs(lo) : 1.0;
  return {lo - 0.05 * span, hi + 0.05 * span};
}

std::string render(const Plot& plot)
{
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : plot.series)
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
        continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (!std::isfinite(x0)) {
    x0 = y0 = 0;
    x1 = y1 = 1;
  }
  const auto [xa, xb] = padded_range(x0, x1);
  const auto [ya, yb] = padded_range(y0, y1);
  const double pw = width - left - right, ph = height - top - bottom;
  auto px = [&](double x) { return left + (x - xa) / (xb - xa) * pw; };
  auto py = [&](double y) { return top + (yb - y) / (yb - ya) * ph; };

  std::ostringstream os;
  os.precision(10);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" data-x-min=\"" << xa << "\" data-x-max=\"" << xb << "\" data-y-min=\"" << ya
     << "\" data-y-max=\"" << yb << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << esc(plot.title)
     << "</text>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os.precision(4);
  for (int t = 0; t <= 4; ++t) {
    const double fx = xa + (xb - xa) * t / 4.0, fy = ya + (yb - ya) * t / 4.0;
    os << "<text x=\"" << px(fx) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\" font-size=\"11\">"
       << fx << "</text>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << py(fy) + 4 << "\" text-anchor=\"end\" font-size=\"11\">" << fy
       << "</text>\n";
  }
  os << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 8 << "\" text-anchor=\"middle\" font-size=\"12\">"
     << esc(plot.x_label) << "</text>\n";
  os << "<text x=\"14\" y=\"" << top + ph / 2 << "\" font-size=\"12\" transform=\"rotate(-90 14 "
     << top + ph / 2 << ")\" text-anchor=\"middle\">" << esc(plot.y_label) << "</text>\n";
  os.precision(7);
  for (const auto& s : plot.series) {
    os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.2\"";
    if (s.dashed)
      os << " stroke-dasharray=\"5,3\"";
    os << " points=\"";
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
      if (std::isfinite(s.x[i]) && std::isfinite(s.y[i]))
        os << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::vector<std::filesystem::path> write_plots(const nlohmann::json& record,
                                               const std::filesystem::path& dir)
{
  const auto& base = record.value("baseline", nlohmann::json::object());
  require(base.contains("residual_trace") && base["residual_trace"].is_array() &&
            !base["residual_trace"].empty(),
          ErrorCode::MissingTraces, "run record has no residual trace");
  require(record.contains("spectrum"), ErrorCode::MissingTraces, "run record has no spectrum");

  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;

  const auto f = record["spectrum"]["values"].get<std::vector<double>>();
  const auto g = base["g_star"].get<std::vector<double>>();
  const double h = record["spectrum"]["grid_spacing"].get<double>();
  std::size_t left_pad = 0;
  if (!record["spectrum"]["extension"].is_null())
    left_pad = record["spectrum"]["extension"]["left_pad"].get<std::size_t>();
  std::vector<double> x(f.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = (static_cast<double>(i) - static_cast<double>(left_pad)) * h;

  Plot overlay{"spectrum and supporting baseline", "normalized frequency", "magnitude",
               {{x, f, "#1f77b4", false}, {x, g, "#d62728", true}}};
  written.push_back(dir / "overlay.svg");
  write_file(written.back(), render(overlay));

  const auto tr = base["residual_trace"].get<std::vector<double>>();
  std::vector<double> it(tr.size()), lg(tr.size());
  for (std::size_t i = 0; i < tr.size(); ++i) {
    it[i] = static_cast<double>(i + 1);
    lg[i] = tr[i] > 0 ? std::log10(tr[i]) : std::numeric_limits<double>::quiet_NaN();
  }
  Plot trace{"relative change per iteration", "iteration", "log10 residual", {{it, lg, "#2ca02c", false}}};
  written.push_back(dir / "trace.svg");
  write_file(written.back(), render(trace));

  if (record.contains("vmd")) {
    const auto modes = record["vmd"]["modes"].get<std::vector<std::vector<double>>>();
    const double rate = record["input"].value("sample_rate", 1.0);
    for (std::size_t k = 0; k < modes.size(); ++k) {
      std::vector<double> t(modes[k].size());
      for (std::size_t i = 0; i < t.size(); ++i)
        t[i] = static_cast<double>(i) / rate;
      Plot p{"mode " + std::to_string(k + 1), "t", "u", {{t, modes[k], "#9467bd", false}}};
      written.push_back(dir / ("mode_" + std::to_string(k + 1) + ".svg"));
      write_file(written.back(), render(p));
    }
  }
  return written;
}

} // namespace autovmd::svg
