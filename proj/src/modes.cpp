#include "autovmd/modes.hpp"

#include "autovmd/error.hpp"
#include "autovmd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace autovmd {

KdeEstimate kde_density(std::span<const double> values, double bandwidth, std::size_t eval_count)
{
  require(!values.empty(), ErrorCode::EmptyInput, "kde: no values");
  require(bandwidth > 0 && std::isfinite(bandwidth), ErrorCode::NonPositiveBandwidth,
          "kde: bandwidth must be positive");
  require(eval_count >= 32, ErrorCode::BadConfig, "kde: need at least 32 evaluation points");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it - 3 * bandwidth;
  const double hi = *hi_it + 3 * bandwidth;

  KdeEstimate k;
  k.bandwidth = bandwidth;
  k.eval_points.resize(eval_count);
  const double step = (hi - lo) / static_cast<double>(eval_count - 1);
  for (std::size_t j = 0; j < eval_count; ++j)
    k.eval_points[j] = lo + step * static_cast<double>(j);
  k.eval_points.back() = hi;
  k.density.resize(eval_count);
  kernels::parallel::gaussian_kde(values, bandwidth, k.eval_points, k.density);
  return k;
}

namespace {

double quantile(std::vector<double> sorted, double q)
{
  // linear interpolation between order statistics
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(i);
  if (i + 1 >= sorted.size())
    return sorted.back();
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

} // namespace

double silverman_bandwidth(std::span<const double> values, double floor)
{
  const std::size_t m = values.size();
  if (m < 2)
    return floor;
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(m);
  double ss = 0.0;
  for (double v : values)
    ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(m - 1));

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
  const double spread = iqr > 0 ? std::min(sd, iqr / 1.34) : sd;
  const double bw = 0.9 * spread * std::pow(static_cast<double>(m), -0.2);
  return std::max(bw, floor);
}

double best_threshold(const KdeEstimate& kde)
{
  require(!kde.density.empty() && kde.density.size() == kde.eval_points.size(),
          ErrorCode::EmptyInput, "best_threshold: empty density");
  std::size_t best = 0;
  for (std::size_t j = 1; j < kde.density.size(); ++j)
    if (kde.density[j] > kde.density[best])
      best = j;
  return kde.eval_points[best];
}

std::vector<double> ModeSet::centers() const
{
  std::vector<double> c;
  c.reserve(modes.size());
  for (const auto& m : modes)
    c.push_back(m.center_cps);
  return c;
}

std::vector<double> original_residual(std::span<const double> f, std::span<const double> g_star,
                                      const Spectrum& spectrum)
{
  require(f.size() == g_star.size() && f.size() == spectrum.grid_count(), ErrorCode::LengthMismatch,
          "residual: f, g and spectrum lengths differ");
  std::vector<double> r(f.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = f[i] - g_star[i];
  if (spectrum.extension)
    return restrict_to_original(r, *spectrum.extension);
  return r;
}

ModeSet extract_modes(std::span<const double> f, std::span<const double> g_star, double t_star,
                      const Spectrum& spectrum, const ModeConfig& config)
{
  const auto r = original_residual(f, g_star, spectrum);
  const std::size_t n = r.size();
  ModeSet out;
  out.threshold = t_star;
  if (n < 2)
    return out;
  const double h = 1.0 / static_cast<double>(n - 1);

  std::vector<double> rr(n);
  for (std::size_t i = 0; i < n; ++i)
    rr[i] = std::max(0.0, r[i] - t_star);
  const double total = std::accumulate(rr.begin(), rr.end(), 0.0);
  const double peak = *std::max_element(rr.begin(), rr.end());
  if (total <= 0.0)
    return out;

  // runs of positive residual, merged across gaps of <= bridge_gap zeros
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < n;) {
    if (rr[i] <= 0.0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && rr[j + 1] > 0.0)
      ++j;
    if (!runs.empty() && i - runs.back().second - 1 <= config.bridge_gap)
      runs.back().second = j;
    else
      runs.emplace_back(i, j);
    i = j + 1;
  }

  for (const auto& [i, j] : runs) {
    double mass = 0.0, moment = 0.0, top = 0.0;
    std::size_t top_at = i;
    for (std::size_t k = i; k <= j; ++k) {
      mass += rr[k];
      moment += static_cast<double>(k) * h * rr[k];
      if (rr[k] > top) {
        top = rr[k];
        top_at = k;
      }
    }
    if (j - i + 1 < config.min_width || mass < config.mass_floor * total ||
        top < config.peak_floor * peak)
      continue;
    const double x = config.center == CenterEstimator::Centroid ? moment / mass
                                                               : static_cast<double>(top_at) * h;
    out.modes.push_back({static_cast<double>(i) * h, static_cast<double>(j) * h,
                         x * spectrum.nyquist_map, mass});
  }
  return out;
}

ModeSet detect_modes(std::span<const double> f, std::span<const double> g_star,
                     const Spectrum& spectrum, const ModeConfig& config)
{
  const auto r = original_residual(f, g_star, spectrum);
  const double bw = config.bandwidth > 0 ? config.bandwidth : silverman_bandwidth(r);
  const auto kde = kde_density(r, bw, config.kde_points);
  auto modes = extract_modes(f, g_star, best_threshold(kde), spectrum, config);
  modes.bandwidth = bw;
  return modes;
}

} // namespace autovmd
