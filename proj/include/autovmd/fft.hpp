#pragma once

#include <complex>
#include <span>
#include <vector>

namespace autovmd::fft {

using cplx = std::complex<double>;

//! One-sided transform of a real sequence: bins 0..n/2 inclusive.
std::vector<cplx> rfft(std::span<const double> x);

//! Unnormalized forward complex DFT.
std::vector<cplx> forward(std::span<const cplx> x);

//! Inverse complex DFT, scaled by 1/n.
std::vector<cplx> inverse(std::span<const cplx> x);

} // namespace autovmd::fft
