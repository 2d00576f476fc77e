#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace bbmlab::fft {

using Complex = std::complex<double>;

/// Unnormalized forward DFT: out_k = sum_j in_j e^{-2 pi i j k / n}.
void forward(std::span<const Complex> in, std::span<Complex> out);

/// Inverse DFT carrying the 1/n factor.
void inverse(std::span<const Complex> in, std::span<Complex> out);

std::vector<Complex> forward_real(std::span<const double> samples);

/// Real part of the inverse DFT (exact inverse when `modes` is Hermitian).
std::vector<double> inverse_real(std::span<const Complex> modes);

/// (c_k + conj(c_{-k})) / 2, the modes of Re(inverse(c)).
std::vector<Complex> hermitian_part(std::span<const Complex> modes);

}  // namespace bbmlab::fft
