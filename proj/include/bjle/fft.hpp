#pragma once

#include <complex>
#include <span>
#include <vector>

namespace bjle::fft {

// Forward DFT of a real vector, packed half spectrum: entries f = 0..n/2 of
// X_f = sum_t x_t e^{-2 pi i f t / n}; the rest follows by conjugate
// symmetry. Length must be a power of two. The out overload reuses the
// buffer's capacity.
std::vector<std::complex<double>> forward_real(std::span<const double> x);
void forward_real(std::span<const double> x, std::vector<std::complex<double>>& out);

// Unnormalized inverse DFT (FFTW convention: inverse(forward(x)) = n * x) of
// a packed half spectrum of size n/2 + 1 into a length-n real buffer. The
// spectrum buffer is destroyed. n = out.size() must be a power of two.
void inverse_real_unnormalized(std::span<std::complex<double>> half_spectrum,
                               std::span<double> out);

bool is_power_of_two(std::size_t n);

// Smallest power of two >= n (n >= 1).
std::size_t next_power_of_two(std::size_t n);

}  // namespace bjle::fft
