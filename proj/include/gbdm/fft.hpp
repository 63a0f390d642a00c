#ifndef GBDM_FFT_HPP
#define GBDM_FFT_HPP

#include <complex>
#include <vector>

namespace gbdm {

// In-place radix-2 FFT, X_k = sum_j x_j e^{-2*pi*i*j*k/N}. N must be a
// power of two. `inverse` computes the unnormalized conjugate transform;
// divide by N to invert.
void fft_pow2(std::vector<std::complex<double>>& x, bool inverse);

bool is_pow2(std::size_t n);

}  // namespace gbdm

#endif
