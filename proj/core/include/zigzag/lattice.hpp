#pragma once

#include <complex>
#include <utility>

namespace zigzag {

// Physical description of a semi-infinite zigzag waveguide array in which
// both the propagation-constant ramp and the two coupling ladders follow
// from the waveguide geometry.  Distances shrink logarithmically with site
// index so that the exponential distance law of the evanescent coupling
// produces square-root ladders.
struct PhysicalLattice {
    double mu = 0.0;     // propagation constant of site 0
    double alpha0 = 0.0; // per-site increment of the propagation constant
    double C = 1.0;      // coupling scale, > 0
    double kappa = 1.0;  // evanescent decay length, > 0
    double d1 = 1.0;     // first-neighbour spacing at site 1
    double d2 = 1.0;     // second-neighbour spacing at site 2
};

// Dimensionless model parameters.  The evolution variable is Z = C*z and
// lambda = alpha0 / C is the normalized gradient.
struct LatticeParams {
    double lambda = 0.0; // gradient, >= 0
    double alpha1 = 1.0; // first-neighbour coupling weight
    double alpha2 = 0.0; // second-neighbour coupling weight
    int n0 = 0;          // initially excited site
    int n_sites = 1;     // truncation window for reported amplitudes
};

enum class RegimeKind {
    Hyperbolic,    // 4*alpha2^2 > lambda^2
    Trigonometric, // 4*alpha2^2 < lambda^2
    Critical,      // equal within tolerance
};

// Regime classification plus the branch frequency gamma with
// gamma^2 = 4*alpha2^2 - lambda^2 (principal square root, so gamma is either
// real positive, purely imaginary with positive imaginary part, or zero).
struct Regime {
    RegimeKind kind = RegimeKind::Hyperbolic;
    std::complex<double> gamma{0.0, 0.0};
};

// Relative width of the band treated as exactly critical.
inline constexpr double regime_tolerance = 1e-12;

// Throws invalid_parameter / out_of_scope when the fields violate their
// documented domain.  Every evaluation entry point calls this first.
void validate(const LatticeParams& p);

// Maps a physical lattice and propagation distance z to (lambda, Z).
// Throws invalid_parameter when C or kappa are not positive.
std::pair<double, double> to_dimensionless(const PhysicalLattice& lat, double z);

// First- and second-neighbour coupling strengths of site n, computed from
// the exponential distance law; equal to C*sqrt(n) and C*sqrt(n*(n-1)).
// Sites below the array edge couple with strength zero.
std::pair<double, double> coupling_profile(const PhysicalLattice& lat, int n);

Regime classify_regime(const LatticeParams& p);

} // namespace zigzag
