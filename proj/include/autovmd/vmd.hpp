#pragma once

#include "autovmd/spectrum.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace autovmd {

using cplx = std::complex<double>;

struct VmdConfig
{
  std::size_t mode_count = 1;
  std::vector<double> omega_init; // cycles/sample, ascending
  double alpha_penalty = 2000.0;
  double tau = 0.0;
  double tol = 1e-7;
  std::size_t max_iter = 1000;
  bool dc_lock = true;
};

//! Throws BadConfig on an invalid field.
void validate(const VmdConfig& config);

//! Evenly spaced starting centers 0.5 k / K, k = 0 .. K-1.
std::vector<double> uniform_omega(std::size_t mode_count);

struct VmdState
{
  std::vector<std::vector<cplx>> u_hat; // K half spectra
  std::vector<double> omega;
  std::vector<cplx> lambda_hat;
  std::vector<double> bin_freqs; // cycles/sample of each half-spectrum bin
  std::vector<bool> locked;
  std::size_t iteration = 0;
};

struct VmdResult
{
  std::vector<std::vector<double>> modes;
  std::vector<double> omega_final;
  std::vector<double> residual;
  std::size_t iterations = 0;
  bool converged = false;
  //! Largest max|imag u_k| / max|u_k| before the real part was taken.
  double imag_leakage = 0.0;
};

//! (f_hat - sum_{i != k} u_hat_i + lambda_hat / 2) / (1 + 2 alpha (w - w_k)^2).
std::vector<cplx> update_mode(const VmdState& state, std::size_t k, std::span<const cplx> f_hat,
                              double alpha_penalty);

//! Spectral centroid of |u_hat_k|^2. Returns `previous` for an all-zero mode.
double update_omega(std::span<const cplx> u_hat_k, std::span<const double> bin_freqs,
                    double previous);

//! lambda_hat + tau (f_hat - sum_k u_hat_k).
std::vector<cplx> update_multiplier(std::span<const cplx> lambda_hat, std::span<const cplx> f_hat,
                                    const std::vector<std::vector<cplx>>& u_hats, double tau);

//! Mirror extension: reversed first half, the signal, reversed second half.
std::vector<double> mirror_extend(std::span<const double> x);

VmdResult decompose(const RawSignal& signal, const VmdConfig& config);

} // namespace autovmd
