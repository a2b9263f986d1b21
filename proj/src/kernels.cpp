#include "autovmd/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

namespace autovmd::kernels {

namespace {

inline double kde_point(std::span<const double> samples, double inv_h, double norm, double t)
{
  double acc = 0.0;
  for (double r : samples) {
    const double z = (t - r) * inv_h;
    acc += std::exp(-0.5 * z * z);
  }
  return acc * norm;
}

inline double kde_norm(std::size_t m, double h)
{
  return 1.0 / (static_cast<double>(m) * h * std::sqrt(2.0 * std::numbers::pi));
}

} // namespace

namespace serial {

void gaussian_kde(std::span<const double> samples, double bandwidth,
                  std::span<const double> eval_points, std::span<double> density)
{
  assert(eval_points.size() == density.size());
  const double inv_h = 1.0 / bandwidth;
  const double norm = kde_norm(samples.size(), bandwidth);
  for (std::size_t j = 0; j < eval_points.size(); ++j)
    density[j] = kde_point(samples, inv_h, norm, eval_points[j]);
}

void wiener_filter(std::span<const cplx> numer, std::span<const double> freqs,
                   double center, double alpha, std::span<cplx> out)
{
  assert(numer.size() == freqs.size() && out.size() == freqs.size());
  for (std::size_t j = 0; j < freqs.size(); ++j) {
    const double d = freqs[j] - center;
    out[j] = numer[j] / (1.0 + 2.0 * alpha * d * d);
  }
}

void projected_ascent(std::span<double> mult, std::span<const double> direction, double step)
{
  assert(mult.size() == direction.size());
  for (std::size_t i = 0; i < mult.size(); ++i)
    mult[i] = std::max(0.0, mult[i] + step * direction[i]);
}

} // namespace serial

namespace parallel {

void gaussian_kde(std::span<const double> samples, double bandwidth,
                  std::span<const double> eval_points, std::span<double> density)
{
  assert(eval_points.size() == density.size());
  const double inv_h = 1.0 / bandwidth;
  const double norm = kde_norm(samples.size(), bandwidth);
  const long n = static_cast<long>(eval_points.size());
  const long work = n * static_cast<long>(samples.size());
#pragma omp parallel for schedule(static) if (work >= parallel_threshold)
  for (long j = 0; j < n; ++j)
    density[j] = kde_point(samples, inv_h, norm, eval_points[j]);
}

void wiener_filter(std::span<const cplx> numer, std::span<const double> freqs,
                   double center, double alpha, std::span<cplx> out)
{
  assert(numer.size() == freqs.size() && out.size() == freqs.size());
  const long n = static_cast<long>(freqs.size());
#pragma omp parallel for schedule(static) if (n >= parallel_threshold)
  for (long j = 0; j < n; ++j) {
    const double d = freqs[j] - center;
    out[j] = numer[j] / (1.0 + 2.0 * alpha * d * d);
  }
}

void projected_ascent(std::span<double> mult, std::span<const double> direction, double step)
{
  assert(mult.size() == direction.size());
  const long n = static_cast<long>(mult.size());
#pragma omp parallel for schedule(static) if (n >= parallel_threshold)
  for (long i = 0; i < n; ++i)
    mult[i] = std::max(0.0, mult[i] + step * direction[i]);
}

} // namespace parallel

} // namespace autovmd::kernels
