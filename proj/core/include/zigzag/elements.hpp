#pragma once

#include "zigzag/special_functions.hpp"

#include <complex>
#include <vector>

namespace zigzag {

// <m| D(eta) |n> for the displacement operator D(eta) = exp(eta*adag - conj(eta)*a).
// Assembled in log space so deep off-diagonal elements underflow gracefully
// instead of overflowing the factorial prefactors.
std::complex<double> displacement_element(int m, int n, std::complex<double> eta,
                                          const LogFactorialTable& table = default_log_factorials());

// <m| exp(g1*Kp) exp(g0*K0) exp(g1*Km) |k> for the two-photon ladder
// Kp = adag^2/2, Km = a^2/2, K0 = (n_hat + 1/2)/2.  Zero for opposite
// parities.  The direct factorized sum cancels catastrophically once both
// indices are deep, so the element is taken from squeeze_row below.  g0 must
// carry the continuously unwrapped imaginary part supplied by the scalar
// frame, since exp(g0/4) is branch-sensitive.
std::complex<double> squeeze_element(int m, int k, std::complex<double> g1,
                                     std::complex<double> g0,
                                     const LogFactorialTable& table = default_log_factorials());

// Row m of the same factorization over k = 0..k_max.  Conjugating the number
// operator through the propagator closes a fixed-m three-term recurrence in
// k whose k-2 coefficient vanishes at the parity boundary, so each row
// starts from its exact closed boundary entry and never consumes another
// row: absolute accuracy stays near machine precision times the row maximum
// at any depth the ln-factorial table admits.  Past the support band, where
// the forward sweep loses the decaying solution, the tail is regenerated by
// a backward sweep matched to the last reliable forward entry, so far-tail
// entries keep full relative accuracy until they underflow to zero.
std::vector<std::complex<double>> squeeze_row(int m, int k_max, std::complex<double> g1,
                                              std::complex<double> g0,
                                              const LogFactorialTable& table = default_log_factorials());

} // namespace zigzag
