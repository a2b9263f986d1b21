#include "autovmd/banded.hpp"

#include "autovmd/error.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <utility>

namespace autovmd {

BandedMatrix::BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku)
  : n_(n)
  , kl_(kl)
  , ku_(ku)
  , width_(2 * kl + ku + 1)
  , data_(n * width_, 0.0)
{
}

bool BandedMatrix::in_band(std::size_t i, std::size_t j) const
{
  return i < n_ && j < n_ && j + kl_ >= i && j <= i + ku_;
}

double BandedMatrix::operator()(std::size_t i, std::size_t j) const
{
  if (i >= n_ || j >= n_ || j + kl_ < i || j > i + ku_ + kl_)
    return 0.0;
  return raw(i, j);
}

double& BandedMatrix::at(std::size_t i, std::size_t j)
{
  assert(in_band(i, j));
  return raw(i, j);
}

std::vector<double> BandedMatrix::multiply(std::span<const double> x) const
{
  assert(x.size() == n_);
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t lo = i > kl_ ? i - kl_ : 0;
    const std::size_t hi = std::min(n_ - 1, i + ku_);
    double acc = 0.0;
    for (std::size_t j = lo; j <= hi; ++j)
      acc += raw(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

BandedLU::BandedLU(BandedMatrix a)
  : lu_(std::move(a))
  , pivots_(lu_.n_)
{
  const std::size_t n = lu_.n_;
  const std::size_t kl = lu_.kl_;
  const std::size_t reach = lu_.kl_ + lu_.ku_;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t last_row = std::min(n - 1, k + kl);
    const std::size_t last_col = std::min(n - 1, k + reach);

    std::size_t p = k;
    double best = std::abs(lu_.raw(k, k));
    for (std::size_t i = k + 1; i <= last_row; ++i)
      if (std::abs(lu_.raw(i, k)) > best) {
        best = std::abs(lu_.raw(i, k));
        p = i;
      }
    if (!(best > 0.0) || !std::isfinite(best))
      raise(ErrorCode::SingularSystem, "zero pivot at column " + std::to_string(k));
    pivots_[k] = p;
    if (p != k)
      for (std::size_t j = k; j <= last_col; ++j)
        std::swap(lu_.raw(k, j), lu_.raw(p, j));

    const double inv = 1.0 / lu_.raw(k, k);
    for (std::size_t i = k + 1; i <= last_row; ++i) {
      const double l = lu_.raw(i, k) * inv;
      lu_.raw(i, k) = l;
      if (l == 0.0)
        continue;
      for (std::size_t j = k + 1; j <= last_col; ++j)
        lu_.raw(i, j) -= l * lu_.raw(k, j);
    }
  }
}

std::vector<double> BandedLU::solve(std::span<const double> b) const
{
  const std::size_t n = lu_.n_;
  require(b.size() == n, ErrorCode::LengthMismatch, "rhs length does not match matrix size");
  const std::size_t kl = lu_.kl_;
  const std::size_t reach = lu_.kl_ + lu_.ku_;
  std::vector<double> x(b.begin(), b.end());

  for (std::size_t k = 0; k < n; ++k) {
    if (pivots_[k] != k)
      std::swap(x[k], x[pivots_[k]]);
    const std::size_t last_row = std::min(n - 1, k + kl);
    for (std::size_t i = k + 1; i <= last_row; ++i)
      x[i] -= lu_.raw(i, k) * x[k];
  }
  for (std::size_t k = n; k-- > 0;) {
    const std::size_t last_col = std::min(n - 1, k + reach);
    double acc = x[k];
    for (std::size_t j = k + 1; j <= last_col; ++j)
      acc -= lu_.raw(k, j) * x[j];
    x[k] = acc / lu_.raw(k, k);
  }
  return x;
}

} // namespace autovmd
