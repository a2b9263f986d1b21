#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace autovmd {

//! Square band matrix with `kl` sub- and `ku` super-diagonals. Storage keeps
//! `kl` extra super-diagonals for the fill-in produced by row pivoting.
class BandedMatrix
{
public:
  BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku);

  std::size_t size() const { return n_; }
  std::size_t lower() const { return kl_; }
  std::size_t upper() const { return ku_; }

  bool in_band(std::size_t i, std::size_t j) const;
  double operator()(std::size_t i, std::size_t j) const;
  //! Requires in_band(i, j).
  double& at(std::size_t i, std::size_t j);

  std::vector<double> multiply(std::span<const double> x) const;

private:
  friend class BandedLU;
  double& raw(std::size_t i, std::size_t j) { return data_[i * width_ + (j + kl_ - i)]; }
  double raw(std::size_t i, std::size_t j) const { return data_[i * width_ + (j + kl_ - i)]; }

  std::size_t n_, kl_, ku_, width_;
  std::vector<double> data_;
};

//! LU factorization with partial pivoting, band structure preserved.
class BandedLU
{
public:
  //! Throws SingularSystem on a zero or non-finite pivot.
  explicit BandedLU(BandedMatrix a);

  std::vector<double> solve(std::span<const double> b) const;

private:
  BandedMatrix lu_;
  std::vector<std::size_t> pivots_;
};

} // namespace autovmd
