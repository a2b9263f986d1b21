#pragma once

#include "autovmd/spectrum.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace autovmd {

struct KdeEstimate
{
  std::vector<double> eval_points;
  std::vector<double> density;
  double bandwidth = 0.0;
};

//! Gaussian-kernel density on eval_count uniform points over
//! [min - 3 bw, max + 3 bw]. Throws EmptyInput, NonPositiveBandwidth, BadConfig.
KdeEstimate kde_density(std::span<const double> values, double bandwidth,
                        std::size_t eval_count = 512);

//! 0.9 min(sd, IQR / 1.34) m^(-1/5), falling back to sd when the IQR is 0,
//! and never below `floor`.
double silverman_bandwidth(std::span<const double> values, double floor = 1e-3);

//! Eval point with the largest density; ties go to the smaller point.
double best_threshold(const KdeEstimate& kde);

enum class CenterEstimator
{
  Centroid,
  Argmax
};

struct ModeConfig
{
  std::size_t min_width = 2;     // nodes
  double mass_floor = 1e-3;      // fraction of total residual mass
  double peak_floor = 0.01;      // fraction of the largest residual value
  std::size_t bridge_gap = 1;    // zero nodes allowed inside one mode
  CenterEstimator center = CenterEstimator::Centroid;
  std::size_t kde_points = 512;
  double bandwidth = 0.0;        // <= 0: Silverman
};

struct Mode
{
  double lo = 0.0;         // normalized axis, original grid
  double hi = 0.0;
  double center_cps = 0.0; // cycles/sample
  double mass = 0.0;
};

struct ModeSet
{
  std::vector<Mode> modes;
  double threshold = 0.0;
  double bandwidth = 0.0;

  std::size_t count() const { return modes.size(); }
  std::vector<double> centers() const;
};

//! Residual f - g restricted to the original grid of `spectrum`.
std::vector<double> original_residual(std::span<const double> f, std::span<const double> g_star,
                                      const Spectrum& spectrum);

//! Modes of max(0, f - g - t_star) on the original axis.
ModeSet extract_modes(std::span<const double> f, std::span<const double> g_star, double t_star,
                      const Spectrum& spectrum, const ModeConfig& config = {});

//! Threshold by KDE argmax over the residual, then extract_modes.
ModeSet detect_modes(std::span<const double> f, std::span<const double> g_star,
                     const Spectrum& spectrum, const ModeConfig& config = {});

} // namespace autovmd
