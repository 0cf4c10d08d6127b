#pragma once

#include "zigzag/lattice.hpp"
#include "zigzag/ode.hpp"

#include <string>
#include <vector>

namespace zigzag {

// Everything a harness run needs.  Field defaults follow the standard
// reproduction recipe (Z in [0,3], 601 rows, 200 sites).
struct RunConfig {
    LatticeParams params{.lambda = 0.0, .alpha1 = 1.0, .alpha2 = 0.0, .n0 = 0, .n_sites = 200};
    double z_max = 3.0;
    int z_steps = 600; // rows = z_steps + 1 including Z = 0
    double tol = 1e-5; // compare-mode failure threshold on intensities
    std::string out_dir = ".";
    IntegratorConfig integrator{};
    std::vector<double> alpha1_values; // sweep mode abscissae
    bool plot = false;                 // also emit a plot script
};

// Loads a flat JSON object whose keys mirror the CLI flags (dashes and
// underscores interchangeable): lambda, alpha1, alpha2, n0, n-sites, z-max,
// z-steps, tol, out, rel-tol, abs-tol, alpha1-values, plot.  Unknown keys and
// wrong types are invalid_parameter errors that name the key.
RunConfig load_config(const std::string& path);

// Same parser over an in-memory document (exposed for tests).
RunConfig parse_config(const std::string& text);

} // namespace zigzag
