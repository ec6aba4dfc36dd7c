#pragma once

#include <complex>
#include <span>
#include <vector>

namespace edscorr::detail {

// Unnormalized DFT of arbitrary length: out[k] = sum_j in[j] e^{sign 2 pi i jk/n}.
std::vector<std::complex<double>> dft(std::span<const std::complex<double>> in,
                                      int sign);

}  // namespace edscorr::detail
