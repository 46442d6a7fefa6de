#pragma once

#include <complex>
#include <vector>

namespace ssp {

/// In-place iterative radix-2 FFT; size must be a power of two.
/// inverse = true applies the conjugate transform and the 1/N factor.
void fft_radix2(std::vector<std::complex<double>>& data, bool inverse);

bool is_power_of_two(std::size_t n);

} // namespace ssp
