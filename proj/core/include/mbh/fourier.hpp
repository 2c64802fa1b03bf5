#pragma once

#include <complex>
#include <span>
#include <vector>

namespace mbh {

// theta_j = -pi + 2 pi j / M, j = 0..M-1.
std::vector<double> boundary_angles(int m);

// h_n = (1/M) sum_j s_j e^{-i n theta_j} for n = -N..N+1 with M = 2N+2.
// Entry k of the result holds mode n = k - N.  The Nyquist bin (frequency
// M/2) is assigned to n = N+1.  Throws InvalidArgument for odd or zero M.
std::vector<std::complex<double>> boundary_modes(std::span<const std::complex<double>> samples);
std::vector<std::complex<double>> boundary_modes(std::span<const double> samples);

}  // namespace mbh
