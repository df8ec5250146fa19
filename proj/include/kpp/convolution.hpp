#pragma once

#include <complex>
#include <vector>

namespace kpp {

// Iterative radix-2 FFT, in place. Size must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse);

// Full linear convolution c[k] = sum_p a[p] b[k-p], via zero-padded cyclic FFT.
std::vector<double> linear_convolve_fft(const std::vector<double>& a,
                                        const std::vector<double>& b);

}  // namespace kpp
