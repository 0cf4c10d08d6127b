#pragma once

#include "zigzag/lattice.hpp"

#include <complex>

namespace zigzag {

using cplx = std::complex<double>;

// Scalar functions that carry the whole Z-dependence of the closed-form
// evolution: the displaced-frame offset beta, the accumulated displacement
// eta, the global phase exponent nu (purely imaginary for real parameters),
// and the squeeze pair (g1, g0) that factorizes the two-photon propagator
// exp(g1*Kp) exp(g0*K0) exp(g1*Km).  g0 carries a continuously unwrapped
// imaginary part so that fractional powers of exp(g0) are single-valued
// along the evolution.
struct ScalarFrame {
    double beta = 0.0;
    cplx eta{0.0, 0.0};
    cplx nu{0.0, 0.0};
    cplx g1{0.0, 0.0};
    cplx g0{0.0, 0.0};
    std::complex<double> gamma{0.0, 0.0};
};

// Solution of the one-parameter disentangling problem
//   exp(i*eta_rate*Z*(Kp + chi*K0 + Km)) = exp(i*f*Kp) exp(i*g*K0) exp(i*h*Km)
// with f = h by symmetry of the generator.
struct DisentangleFns {
    cplx f{0.0, 0.0};
    cplx g{0.0, 0.0};
    cplx h{0.0, 0.0};
};

// Frame scalars away from the critical manifold.  Throw dispatch_error in the
// Critical regime, where the limits below apply instead.
cplx eval_eta(const LatticeParams& p, double Z);
cplx eval_nu(const LatticeParams& p, double Z);
std::pair<cplx, cplx> eval_g1_g0(const LatticeParams& p, double Z);

// Gamma -> 0 limit of eval_eta; only valid in the Critical regime.
cplx eval_eta_critical(const LatticeParams& p, double Z);

// Regime-dispatching frame builder used by the amplitude evaluators.
ScalarFrame scalar_frame(const LatticeParams& p, double Z);

// Closed-form disentangling functions; the |chi| = 2 degenerate branch is
// selected within a relative tolerance of 1e-12.
DisentangleFns disentangle(double chi, double eta_rate, double Z);

} // namespace zigzag
