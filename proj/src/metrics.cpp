#include "autovmd/metrics.hpp"

#include "autovmd/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace autovmd {

namespace {

void same_length(std::span<const double> a, std::span<const double> b, const char* who)
{
  require(a.size() == b.size(), ErrorCode::LengthMismatch,
          std::string(who) + ": lengths " + std::to_string(a.size()) + " and " +
            std::to_string(b.size()) + " differ");
}

double sum_sq(std::span<const double> v)
{
  double s = 0.0;
  for (double x : v)
    s += x * x;
  return s;
}

} // namespace

double correlation_coefficient(std::span<const double> x, std::span<const double> y)
{
  same_length(x, y, "correlation_coefficient");
  require(x.size() >= 2, ErrorCode::EmptyInput, "correlation_coefficient: need at least 2 samples");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  require(sxx > 0 || syy > 0, ErrorCode::DegenerateInput, "correlation_coefficient: both inputs constant");
  if (sxx == 0 || syy == 0)
    return 0.0;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double power_ratio(std::span<const double> residual, std::span<const double> source)
{
  same_length(residual, source, "power_ratio");
  const double s = sum_sq(source);
  require(s > 0, ErrorCode::ZeroSource, "power_ratio: source is identically zero");
  return sum_sq(residual) / s;
}

double max_center_diff(std::span<const double> ours, std::span<const double> reference)
{
  require(ours.size() == reference.size(), ErrorCode::LengthMismatch,
          "count mismatch: " + std::to_string(ours.size()) + " vs " + std::to_string(reference.size()));
  require(!ours.empty(), ErrorCode::EmptyInput, "max_center_diff: empty lists");
  std::vector<double> a(ours.begin(), ours.end()), b(reference.begin(), reference.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double relative_recon_error(std::span<const double> source, std::span<const double> recon)
{
  same_length(source, recon, "relative_recon_error");
  const double s = sum_sq(source);
  require(s > 0, ErrorCode::ZeroSource, "relative_recon_error: source is identically zero");
  double e = 0.0;
  for (std::size_t i = 0; i < source.size(); ++i)
    e += (source[i] - recon[i]) * (source[i] - recon[i]);
  return std::sqrt(e / s);
}

EvalReport evaluate(std::string experiment, std::span<const double> source,
                    const std::vector<std::vector<double>>& modes)
{
  std::vector<double> recon(source.size(), 0.0), residual(source.size());
  for (const auto& u : modes) {
    require(u.size() == source.size(), ErrorCode::LengthMismatch, "evaluate: mode length differs");
    for (std::size_t i = 0; i < u.size(); ++i)
      recon[i] += u[i];
  }
  for (std::size_t i = 0; i < source.size(); ++i)
    residual[i] = source[i] - recon[i];
  EvalReport r;
  r.experiment = std::move(experiment);
  r.mode_count = modes.size();
  r.cc = correlation_coefficient(recon, source);
  r.pr = power_ratio(residual, source);
  r.recon_rel_err = relative_recon_error(source, recon);
  return r;
}

std::string csv_header(const EvalReport&)
{
  return "experiment,K,CC,PR,recon_rel_err,max_center_diff";
}

std::string csv_row(const EvalReport& r)
{
  std::ostringstream os;
  os.precision(10);
  os << r.experiment << ',' << r.mode_count << ',' << r.cc << ',' << r.pr << ',' << r.recon_rel_err << ',';
  if (r.max_center_diff)
    os << *r.max_center_diff;
  return os.str();
}

} // namespace autovmd
