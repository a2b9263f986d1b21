#include "autovmd/vmd.hpp"

#include "autovmd/error.hpp"
#include "autovmd/fft.hpp"
#include "autovmd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace autovmd {

void validate(const VmdConfig& c)
{
  require(c.mode_count >= 1, ErrorCode::BadConfig, "vmd: mode_count must be at least 1");
  require(c.omega_init.size() == c.mode_count, ErrorCode::BadConfig,
          "vmd: omega_init must have mode_count entries");
  require(std::is_sorted(c.omega_init.begin(), c.omega_init.end()), ErrorCode::BadConfig,
          "vmd: omega_init must be ascending");
  for (double w : c.omega_init)
    require(w >= 0 && w <= 0.5, ErrorCode::BadConfig, "vmd: omega_init outside [0, 0.5]");
  require(c.alpha_penalty > 0 && std::isfinite(c.alpha_penalty), ErrorCode::BadConfig,
          "vmd: alpha_penalty must be positive");
  require(c.tau >= 0 && std::isfinite(c.tau), ErrorCode::BadConfig, "vmd: tau must be >= 0");
  require(c.tol > 0, ErrorCode::BadConfig, "vmd: tol must be positive");
  require(c.max_iter >= 1, ErrorCode::BadConfig, "vmd: max_iter must be at least 1");
}

std::vector<double> uniform_omega(std::size_t mode_count)
{
  std::vector<double> w(mode_count);
  for (std::size_t k = 0; k < mode_count; ++k)
    w[k] = 0.5 * static_cast<double>(k) / static_cast<double>(mode_count);
  return w;
}

std::vector<cplx> update_mode(const VmdState& state, std::size_t k, std::span<const cplx> f_hat,
                              double alpha_penalty)
{
  require(k < state.u_hat.size(), ErrorCode::IndexOutOfRange,
          "vmd: mode index " + std::to_string(k) + " out of range");
  const std::size_t nb = f_hat.size();
  require(state.lambda_hat.size() == nb && state.bin_freqs.size() == nb, ErrorCode::ShapeMismatch,
          "vmd: spectrum shapes differ");
  std::vector<cplx> numer(nb);
  for (std::size_t j = 0; j < nb; ++j) {
    cplx others = 0.0;
    for (std::size_t i = 0; i < state.u_hat.size(); ++i)
      if (i != k)
        others += state.u_hat[i][j];
    numer[j] = f_hat[j] - others + 0.5 * state.lambda_hat[j];
  }
  std::vector<cplx> out(nb);
  kernels::parallel::wiener_filter(numer, state.bin_freqs, state.omega[k], alpha_penalty, out);
  return out;
}

double update_omega(std::span<const cplx> u_hat_k, std::span<const double> bin_freqs, double previous)
{
  require(u_hat_k.size() == bin_freqs.size(), ErrorCode::ShapeMismatch, "vmd: spectrum shapes differ");
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < u_hat_k.size(); ++j) {
    const double p = std::norm(u_hat_k[j]);
    num += bin_freqs[j] * p;
    den += p;
  }
  if (den == 0.0)
    return previous;
  return num / den;
}

std::vector<cplx> update_multiplier(std::span<const cplx> lambda_hat, std::span<const cplx> f_hat,
                                    const std::vector<std::vector<cplx>>& u_hats, double tau)
{
  const std::size_t nb = f_hat.size();
  require(lambda_hat.size() == nb, ErrorCode::ShapeMismatch, "vmd: multiplier shape differs");
  for (const auto& u : u_hats)
    require(u.size() == nb, ErrorCode::ShapeMismatch, "vmd: mode shape differs");
  std::vector<cplx> out(lambda_hat.begin(), lambda_hat.end());
  if (tau == 0.0)
    return out;
  for (std::size_t j = 0; j < nb; ++j) {
    cplx sum = 0.0;
    for (const auto& u : u_hats)
      sum += u[j];
    out[j] += tau * (f_hat[j] - sum);
  }
  return out;
}

std::vector<double> mirror_extend(std::span<const double> x)
{
  const std::size_t t = x.size();
  const std::size_t half = t / 2;
  std::vector<double> out;
  out.reserve(2 * t);
  for (std::size_t i = half; i-- > 0;)
    out.push_back(x[i]);
  out.insert(out.end(), x.begin(), x.end());
  for (std::size_t i = t; i-- > half;)
    out.push_back(x[i]);
  return out;
}

VmdResult decompose(const RawSignal& signal, const VmdConfig& config)
{
  validate(signal);
  validate(config);
  const std::size_t t = signal.samples.size();
  const std::size_t kk = config.mode_count;
  require(t >= 4 * kk, ErrorCode::BadConfig, "vmd: signal shorter than 4 K samples");

  const auto ext = mirror_extend(signal.samples);
  const std::size_t m = ext.size(); // 2 t
  const auto f_hat = fft::rfft(ext);  // bins 0 .. t
  const std::size_t nb = f_hat.size();

  VmdState st;
  st.u_hat.assign(kk, std::vector<cplx>(nb, 0.0));
  st.omega = config.omega_init;
  st.lambda_hat.assign(nb, 0.0);
  st.bin_freqs.resize(nb);
  for (std::size_t j = 0; j < nb; ++j)
    st.bin_freqs[j] = static_cast<double>(j) / static_cast<double>(m);
  st.locked.assign(kk, false);
  if (config.dc_lock)
    for (std::size_t k = 0; k < kk; ++k)
      if (st.omega[k] < 1.0 / static_cast<double>(t)) {
        st.omega[k] = 0.0;
        st.locked[k] = true;
      }

  VmdResult res;
  while (st.iteration < config.max_iter) {
    double diff = 0.0;
    for (std::size_t k = 0; k < kk; ++k) {
      auto next = update_mode(st, k, f_hat, config.alpha_penalty);
      double dn = 0.0, un = 0.0;
      for (std::size_t j = 0; j < nb; ++j) {
        dn += std::norm(next[j] - st.u_hat[k][j]);
        un += std::norm(st.u_hat[k][j]);
      }
      if (dn > 0.0)
        diff += un > 0.0 ? dn / un : INFINITY;
      st.u_hat[k] = std::move(next);
      if (!st.locked[k])
        st.omega[k] = update_omega(st.u_hat[k], st.bin_freqs, st.omega[k]);
    }
    st.lambda_hat = update_multiplier(st.lambda_hat, f_hat, st.u_hat, config.tau);
    ++st.iteration;
    if (diff < config.tol) {
      res.converged = true;
      break;
    }
  }
  res.iterations = st.iteration;

  std::vector<std::size_t> order(kk);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return st.omega[a] < st.omega[b]; });

  res.residual = signal.samples;
  const std::size_t crop = t / 2;
  for (std::size_t k : order) {
    std::vector<cplx> full(m, 0.0);
    for (std::size_t j = 0; j < nb; ++j)
      full[j] = st.u_hat[k][j];
    for (std::size_t j = 1; j < nb; ++j)
      if (m - j >= nb)
        full[m - j] = std::conj(st.u_hat[k][j]);
    // bins 0 and m/2 are their own mirror images
    full[0] = full[0].real();
    if (m % 2 == 0)
      full[m / 2] = full[m / 2].real();
    const auto time = fft::inverse(full);
    double max_re = 0.0, max_im = 0.0;
    std::vector<double> u(t);
    for (std::size_t i = 0; i < t; ++i) {
      const cplx v = time[crop + i];
      u[i] = v.real();
      max_re = std::max(max_re, std::abs(v.real()));
      max_im = std::max(max_im, std::abs(v.imag()));
      res.residual[i] -= u[i];
    }
    if (max_re > 0.0)
      res.imag_leakage = std::max(res.imag_leakage, max_im / max_re);
    res.modes.push_back(std::move(u));
    res.omega_final.push_back(st.omega[k]);
  }
  return res;
}

} // namespace autovmd
