#pragma once

#include "zigzag/lattice.hpp"
#include "zigzag/scalars.hpp"

#include <complex>
#include <span>
#include <vector>

namespace zigzag {

// Field amplitudes over the truncated site window at one propagation distance,
// for light injected at site n0.
struct AmplitudeRow {
    double Z = 0.0;
    int n0 = 0;
    std::vector<std::complex<double>> amps;
};

// Closed-form field amplitude at every site in [0, n_sites).  Dispatches on
// the parameter class: pure first-neighbour coupling (alpha2 = 0), pure
// second-neighbour ladder (alpha1 = 0), critical manifold, and the general
// displaced-squeezed evolution.
AmplitudeRow amplitude(const LatticeParams& p, double Z);

// Same evaluation restricted to chosen sites; the per-site cost is identical,
// so single-site observables (return intensity) avoid the full row.
std::vector<std::complex<double>> amplitude_at_sites(const LatticeParams& p, double Z,
                                                     std::span<const int> sites);

// Photon-number distribution of the displaced-squeezed number state that the
// gradient-free lattice evolves into: |<m| S(xi) D(disp) |n0>|^2 per site m,
// evaluated through the explicit hyperbolic-scalar form valid only at
// lambda = 0 with both couplings active.  Must coincide with the squared
// magnitude of amplitude(); the paths share only the displacement-element
// kernel and the log-factorial table.
std::vector<double> dsn_distribution(const LatticeParams& p, double Z);

// Summation policy of the adaptive intermediate-index sum.
struct SumPolicy {
    double rel_floor = 1e-14; // tail threshold relative to the running partial
    int consecutive = 5;      // negligible terms required to stop
    int ceiling_factor = 4;   // hard ceiling = factor * n_sites
};

} // namespace zigzag
