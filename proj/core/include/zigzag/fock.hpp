#pragma once

#include "zigzag/lattice.hpp"

#include <Eigen/Dense>
#include <complex>

namespace zigzag {

// Truncated boson operators on the first `dim` number states.  Products of
// truncated matrices reproduce the untruncated algebra only away from the
// truncation edge; the interior-block caveat is the caller's to respect.

// Hard ceiling shared by every dense matrix factory and exponential here.
inline constexpr int max_oracle_dim = 1024;

Eigen::MatrixXd lowering_op(int dim);
Eigen::MatrixXd raising_op(int dim);

// Two-photon ladder: raise = adag^2/2, lower = a^2/2, number = (n_hat + 1/2)/2.
Eigen::MatrixXd two_photon_raise(int dim);
Eigen::MatrixXd two_photon_lower(int dim);
Eigen::MatrixXd two_photon_number(int dim);

// raise + chi * number + lower; the generator whose exponential the squeeze
// factorization represents.
Eigen::MatrixXd ladder_generator(double chi, int dim);

// Full single-excitation generator of the lattice: diagonal ramp lambda*n
// plus both square-root coupling ladders.  Real symmetric; exp(i*Z*G) is the
// exact evolution of the hard-truncated model.
Eigen::MatrixXd lattice_generator(const LatticeParams& p, int dim);

// exp(i*t*G) for Hermitian G through an eigendecomposition.  Unitary by
// construction up to solver roundoff.  Throws resource_error past the
// dimension ceiling and invalid_parameter when G is not Hermitian.
Eigen::MatrixXcd matrix_exp_oracle(const Eigen::MatrixXcd& G, double t);

// Plain Taylor exponential for banded arguments whose powers stay bounded
// (nilpotent ladders and small-norm combinations).  Throws resource_error
// when the series has not settled after a generous term cap.
Eigen::MatrixXcd matrix_exp_nilpotent(const Eigen::MatrixXcd& A);

// exp(eta*adag - conj(eta)*a) assembled through the Hermitian oracle; the
// reference implementation the closed-form matrix elements are tested against.
Eigen::MatrixXcd displacement_matrix(std::complex<double> eta, int dim);

} // namespace zigzag
