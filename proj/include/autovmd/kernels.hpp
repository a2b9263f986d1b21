#pragma once

// Data-parallel inner loops. Each kernel has a serial reference and an
// OpenMP version; both evaluate every output element with the same
// floating-point operation order, so their results are bit-identical.

#include <complex>
#include <span>

namespace autovmd::kernels {

using cplx = std::complex<double>;

namespace serial {

//! density[j] = 1/(m h) * sum_i exp(-((t_j - r_i)/h)^2 / 2) / sqrt(2 pi)
void gaussian_kde(std::span<const double> samples, double bandwidth,
                  std::span<const double> eval_points, std::span<double> density);

//! out[j] = numer[j] / (1 + 2 alpha (freqs[j] - center)^2)
void wiener_filter(std::span<const cplx> numer, std::span<const double> freqs,
                   double center, double alpha, std::span<cplx> out);

//! mult[i] = max(0, mult[i] + step * direction[i])
void projected_ascent(std::span<double> mult, std::span<const double> direction, double step);

} // namespace serial

namespace parallel {

void gaussian_kde(std::span<const double> samples, double bandwidth,
                  std::span<const double> eval_points, std::span<double> density);

void wiener_filter(std::span<const cplx> numer, std::span<const double> freqs,
                   double center, double alpha, std::span<cplx> out);

void projected_ascent(std::span<double> mult, std::span<const double> direction, double step);

} // namespace parallel

//! Problem size below which the parallel kernels run on one thread.
inline constexpr long parallel_threshold = 2048;

} // namespace autovmd::kernels
