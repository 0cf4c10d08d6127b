#pragma once

#include "zigzag/lattice.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace zigzag {

// Embedded Runge-Kutta-Fehlberg 4(5) settings.  The pair advances with the
// fifth-order solution and controls the step from the embedded fourth-order
// defect under the mixed absolute/relative norm.
struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    double initial_step = 1e-3;
    double max_step = 0.25;
    double min_step = 1e-12; // below this an accepted step cannot be formed
};

// Field snapshot at one recorded propagation distance.
struct FieldState {
    double Z = 0.0;
    std::vector<std::complex<double>> amps;
};

struct IntegrationResult {
    std::vector<FieldState> states; // one per requested grid point, in order
    std::size_t steps_accepted = 0;
    std::size_t steps_rejected = 0;
    // Max deviation of the squared norm from its initial value over accepted
    // steps; the truncated generator is Hermitian, so this is pure solver error.
    double max_norm_drift = 0.0;
};

// Right-hand side of the truncated coupled-mode system,
//   dPsi_m/dZ = i [ lambda*m*Psi_m
//                   + alpha1 (sqrt(m) Psi_{m-1} + sqrt(m+1) Psi_{m+1})
//                   + alpha2 (sqrt(m(m-1)) Psi_{m-2} + sqrt((m+1)(m+2)) Psi_{m+2}) ],
// with hard walls at both ends of [0, n_sites).  Exposed for direct testing
// against the dense generator.
std::vector<std::complex<double>> coupled_mode_rhs(const LatticeParams& p,
                                                   std::span<const std::complex<double>> psi);

// Integrates the system from Z = 0 with a unit excitation at site n0,
// recording the state at each entry of z_grid (which must be non-negative
// and strictly increasing).  Throws stiffness_error if the controller cannot
// form a step above config.min_step.
IntegrationResult integrate(const LatticeParams& p, const IntegratorConfig& config,
                            std::span<const double> z_grid);

// Same machinery from an arbitrary initial state (used by the linearity and
// oracle cross-checks).
IntegrationResult integrate_from(const LatticeParams& p, const IntegratorConfig& config,
                                 std::span<const std::complex<double>> initial,
                                 std::span<const double> z_grid);

// Max over recorded states of the intensity in the last `tail_width` sites;
// certifies that the truncation window was wide enough for a comparison
// against the semi-infinite closed form.
double truncation_check(const IntegrationResult& result, int tail_width = 5);

} // namespace zigzag
