#include "autovmd/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>

namespace autovmd::fft {

namespace {

// fftw planning is not thread-safe; execution is.
std::mutex& planner_mutex()
{
  static std::mutex m;
  return m;
}

struct PlanDeleter
{
  void operator()(fftw_plan_s* p) const
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

struct BufferDeleter
{
  void operator()(void* p) const { fftw_free(p); }
};
template <typename T>
using Buffer = std::unique_ptr<T[], BufferDeleter>;

template <typename T>
Buffer<T> alloc(std::size_t n)
{
  return Buffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1))));
}

std::vector<cplx> complex_dft(std::span<const cplx> x, int sign)
{
  const int n = static_cast<int>(x.size());
  if (n == 0)
    return {};
  auto in = alloc<fftw_complex>(x.size());
  auto out = alloc<fftw_complex>(x.size());
  Plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_1d(n, in.get(), out.get(), sign, FFTW_ESTIMATE));
  }
  for (int i = 0; i < n; ++i) {
    in[i][0] = x[i].real();
    in[i][1] = x[i].imag();
  }
  fftw_execute(plan.get());
  std::vector<cplx> y(x.size());
  for (int i = 0; i < n; ++i)
    y[i] = {out[i][0], out[i][1]};
  return y;
}

} // namespace

std::vector<cplx> rfft(std::span<const double> x)
{
  const int n = static_cast<int>(x.size());
  if (n == 0)
    return {};
  const int bins = n / 2 + 1;
  auto in = alloc<double>(x.size());
  auto out = alloc<fftw_complex>(static_cast<std::size_t>(bins));
  Plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_r2c_1d(n, in.get(), out.get(), FFTW_ESTIMATE));
  }
  std::copy(x.begin(), x.end(), in.get());
  fftw_execute(plan.get());
  std::vector<cplx> y(static_cast<std::size_t>(bins));
  for (int i = 0; i < bins; ++i)
    y[i] = {out[i][0], out[i][1]};
  return y;
}

std::vector<cplx> forward(std::span<const cplx> x)
{
  return complex_dft(x, FFTW_FORWARD);
}

std::vector<cplx> inverse(std::span<const cplx> x)
{
  auto y = complex_dft(x, FFTW_BACKWARD);
  const double scale = y.empty() ? 1.0 : 1.0 / static_cast<double>(y.size());
  for (auto& v : y)
    v *= scale;
  return y;
}

} // namespace autovmd::fft
