#pragma once

#include "zigzag/config.hpp"
#include "zigzag/intensity_map.hpp"
#include "zigzag/lattice.hpp"
#include "zigzag/ode.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zigzag {

// steps+1 equispaced points from 0 to z_max inclusive; the single point {0}
// when z_max is 0.
std::vector<double> uniform_grid(double z_max, int steps);

// Closed-form intensity over the full site window at each grid point.
IntensityMap analytic_intensity(const LatticeParams& p, std::span<const double> grid);

// Direct integration of the truncated system, plus the solver diagnostics a
// comparison needs to be trusted.
struct NumericRun {
    IntensityMap map;
    std::size_t steps_accepted = 0;
    std::size_t steps_rejected = 0;
    double max_norm_drift = 0.0;
    double edge_leak = 0.0; // truncation_check over the run
};
NumericRun numeric_intensity(const LatticeParams& p, const IntegratorConfig& cfg,
                             std::span<const double> grid);

// Photon-statistics route (lambda = 0 only); same map layout.
IntensityMap dsn_intensity(const LatticeParams& p, std::span<const double> grid);

// Single-column map of |amplitude at n0|^2 on a uniform grid of spacing dz.
IntensityMap return_intensity_scan(const LatticeParams& p, double z_max, double dz);

struct PeakLocation {
    double Z = 0.0;
    double height = 0.0;
};

// Revival-period readout of one return-intensity column.
struct PeriodEstimate {
    std::optional<double> formula;  // applicable closed-form period, if any
    std::optional<double> measured; // mean spacing of the dominant maxima
    std::vector<PeakLocation> peaks;
};

// Closed-form oscillation period: 2*pi/lambda for a pure first-neighbour
// lattice, pi/|gamma| in the trigonometric regime, none otherwise.
std::optional<double> bloch_period_formula(const LatticeParams& p);

// Peak detection on the site-n0 column: local maxima (left grid boundary
// included) with prominence >= 0.05 and height >= half the column maximum,
// refined by quadratic interpolation.  measured is the mean spacing of the
// accepted peaks; formula is left for bloch_period_formula, since the map
// alone does not carry the lattice parameters.
PeriodEstimate bloch_period(const IntensityMap& map, int n0);

struct DoublingRow {
    double alpha1 = 0.0;
    std::optional<double> measured;
    std::optional<double> ratio; // measured over the base-parameter formula value
};

// Dominant revival period versus first-neighbour strength; the rows are
// independent jobs fanned out over a small worker pool.
std::vector<DoublingRow> period_doubling_scan(const LatticeParams& base,
                                              std::span<const double> alpha1_values,
                                              double z_max, double dz);

// Self-contained plotting script (python + matplotlib) reading the CSV by
// relative name.  style is "heatmap" or "slice".
std::string plot_script(const std::string& csv_name, const std::string& style);

enum class RunMode { Analytic, Numeric, Compare, Sweep, Dsn, Period };

// Executes one mode, writing intensity.csv / meta.json / report.json /
// sweep.csv / period.json / plot.py under cfg.out_dir as applicable.
// Returns the process exit code: 0 on success, 3 when compare mode exceeds
// cfg.tol.  Out-of-scope parameters and misapplied modes surface as the
// exceptions the library throws; the CLI maps them to exit code 2.
int run_mode(RunMode mode, const RunConfig& cfg);

} // namespace zigzag
