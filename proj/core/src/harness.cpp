#include "zigzag/harness.hpp"
#include "zigzag/amplitude.hpp"
#include "zigzag/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <future>
#include <limits>
#include <numbers>
#include <string>

#ifndef ZIGZAG_VERSION
#define ZIGZAG_VERSION "0.0.0"
#endif

namespace zigzag {

namespace {

using nlohmann::json;

std::vector<int> full_window(const LatticeParams& p)
{
    std::vector<int> sites(std::size_t(p.n_sites));
    for (int m = 0; m < p.n_sites; ++m)
        sites[std::size_t(m)] = m;
    return sites;
}

// ---- peak detection ----------------------------------------------------

// Topographic prominence of sample i among y: height above the higher of the
// two minima separating it from higher terrain (or from the data edge when no
// higher terrain exists on a side).
double prominence_of(std::span<const double> y, std::size_t i)
{
    constexpr double none = -std::numeric_limits<double>::infinity();
    double left = std::numeric_limits<double>::infinity();
    for (std::size_t j = i; j-- > 0;) {
        if (y[j] > y[i])
            break;
        left = std::min(left, y[j]);
    }
    double right = std::numeric_limits<double>::infinity();
    for (std::size_t j = i + 1; j < y.size(); ++j) {
        if (y[j] > y[i])
            break;
        right = std::min(right, y[j]);
    }
    const double ref = std::max(std::isinf(left) ? none : left,
                                std::isinf(right) ? none : right);
    return std::isinf(ref) ? y[i] : y[i] - ref;
}

std::vector<PeakLocation> dominant_peaks(std::span<const double> z, std::span<const double> y)
{
    constexpr double min_prominence = 0.05;
    constexpr double dominance = 0.5; // fraction of the column maximum

    const std::size_t n = y.size();
    if (n < 2)
        return {};
    const double y_max = *std::max_element(y.begin(), y.end());

    std::vector<PeakLocation> peaks;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const bool local_max = (i == 0 || y[i] >= y[i - 1]) && y[i] > y[i + 1];
        if (!local_max)
            continue;
        if (y[i] < dominance * y_max || prominence_of(y, i) < min_prominence)
            continue;

        double z_peak = z[i];
        if (i > 0) {
            // Quadratic refinement, valid only where the grid is locally uniform.
            const double hl = z[i] - z[i - 1];
            const double hr = z[i + 1] - z[i];
            if (std::abs(hr - hl) <= 1e-9 * std::max(hl, hr)) {
                const double denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
                if (denom < 0.0) {
                    const double offset = 0.5 * hl * (y[i - 1] - y[i + 1]) / denom;
                    z_peak += std::clamp(offset, -hl, hl);
                }
            }
        }
        peaks.push_back({z_peak, y[i]});
    }
    return peaks;
}

// ---- plot scripts --------------------------------------------------------

const char* const heatmap_py = R"PY(#!/usr/bin/env python3
"""Heatmap of an intensity map: site index across, propagation distance up."""
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def load(path):
    with open(path, newline="") as fh:
        header = fh.readline().strip().split(",")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    sites = np.array([int(c.split("_", 1)[1]) for c in header[1:]])
    return sites, data[:, 0], data[:, 1:]


def main():
    path = sys.argv[1] if len(sys.argv) > 1 else "CSV_NAME"
    sites, z, intensity = load(path)
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    mesh = ax.pcolormesh(sites, z, intensity, shading="nearest", cmap="magma")
    fig.colorbar(mesh, ax=ax, label="intensity")
    ax.set_xlabel("site")
    ax.set_ylabel("Z")
    fig.tight_layout()
    out = path.rsplit(".", 1)[0] + ".png"
    fig.savefig(out, dpi=160)
    print(out)


if __name__ == "__main__":
    main()
)PY";

const char* const slice_py = R"PY(#!/usr/bin/env python3
"""Single slice of an intensity map: a site profile at fixed Z (--z) or the
trace of one site along Z (--site)."""
import argparse

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def load(path):
    with open(path, newline="") as fh:
        header = fh.readline().strip().split(",")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    sites = np.array([int(c.split("_", 1)[1]) for c in header[1:]])
    return sites, data[:, 0], data[:, 1:]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("csv", nargs="?", default="CSV_NAME")
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--z", type=float, help="site profile at the nearest grid Z")
    group.add_argument("--site", type=int, help="trace of this site along Z")
    args = parser.parse_args()

    sites, z, intensity = load(args.csv)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    if args.site is not None:
        (col,) = np.nonzero(sites == args.site)
        if col.size == 0:
            raise SystemExit(f"site {args.site} not in {args.csv}")
        ax.plot(z, intensity[:, col[0]])
        ax.set_xlabel("Z")
        tag = f"site{args.site}"
    else:
        row = int(np.argmin(np.abs(z - args.z)))
        ax.plot(sites, intensity[row, :], marker="o", markersize=2.5)
        ax.set_xlabel("site")
        tag = f"z{z[row]:g}"
    ax.set_ylabel("intensity")
    fig.tight_layout()
    out = args.csv.rsplit(".", 1)[0] + f"_{tag}.png"
    fig.savefig(out, dpi=160)
    print(out)


if __name__ == "__main__":
    main()
)PY";

// ---- JSON helpers --------------------------------------------------------

json params_json(const LatticeParams& p)
{
    return {{"lambda", p.lambda}, {"alpha1", p.alpha1}, {"alpha2", p.alpha2},
            {"n0", p.n0},         {"n_sites", p.n_sites}};
}

json meta_json(const char* mode, const RunConfig& cfg)
{
    json meta = params_json(cfg.params);
    meta["mode"] = mode;
    meta["z_max"] = cfg.z_max;
    meta["z_steps"] = cfg.z_steps;
    meta["tol"] = cfg.tol;
    meta["rel_tol"] = cfg.integrator.rel_tol;
    meta["abs_tol"] = cfg.integrator.abs_tol;
    meta["version"] = ZIGZAG_VERSION;
    return meta;
}

void write_json(const std::filesystem::path& path, const json& doc)
{
    write_text_atomic(path.string(), doc.dump(2) + "\n");
}

json period_json(const PeriodEstimate& est)
{
    json doc;
    doc["formula"] = est.formula ? json(*est.formula) : json(nullptr);
    doc["measured"] = est.measured ? json(*est.measured) : json(nullptr);
    doc["peaks"] = json::array();
    for (const PeakLocation& pk : est.peaks)
        doc["peaks"].push_back({{"Z", pk.Z}, {"height", pk.height}});
    return doc;
}

void check_run_config(const RunConfig& cfg)
{
    validate(cfg.params);
    if (!std::isfinite(cfg.z_max) || cfg.z_max < 0.0)
        throw invalid_parameter("z_max must be finite and >= 0");
    if (cfg.z_steps < 1)
        throw invalid_parameter("z_steps must be >= 1");
    if (!(cfg.tol > 0.0))
        throw invalid_parameter("tol must be > 0");
}

} // namespace

// ---- maps ----------------------------------------------------------------

std::vector<double> uniform_grid(double z_max, int steps)
{
    if (!std::isfinite(z_max) || z_max < 0.0)
        throw invalid_parameter("z_max must be finite and >= 0");
    if (steps < 1)
        throw invalid_parameter("grid needs at least one step");
    if (z_max == 0.0)
        return {0.0};
    std::vector<double> grid(std::size_t(steps) + 1);
    for (int j = 0; j <= steps; ++j)
        grid[std::size_t(j)] = z_max * double(j) / double(steps);
    return grid;
}

IntensityMap analytic_intensity(const LatticeParams& p, std::span<const double> grid)
{
    IntensityMap map;
    map.z.assign(grid.begin(), grid.end());
    map.sites = full_window(p);
    map.values.reserve(map.rows() * map.cols());
    for (double Z : grid) {
        const AmplitudeRow row = amplitude(p, Z);
        for (const cplx& a : row.amps)
            map.values.push_back(std::norm(a));
    }
    return map;
}

NumericRun numeric_intensity(const LatticeParams& p, const IntegratorConfig& cfg,
                             std::span<const double> grid)
{
    const IntegrationResult res = integrate(p, cfg, grid);

    NumericRun run;
    run.map.z.assign(grid.begin(), grid.end());
    run.map.sites = full_window(p);
    run.map.values.reserve(run.map.rows() * run.map.cols());
    for (const FieldState& st : res.states)
        for (const std::complex<double>& a : st.amps)
            run.map.values.push_back(std::norm(a));
    run.steps_accepted = res.steps_accepted;
    run.steps_rejected = res.steps_rejected;
    run.max_norm_drift = res.max_norm_drift;
    run.edge_leak = truncation_check(res);
    return run;
}

IntensityMap dsn_intensity(const LatticeParams& p, std::span<const double> grid)
{
    IntensityMap map;
    map.z.assign(grid.begin(), grid.end());
    map.sites = full_window(p);
    map.values.reserve(map.rows() * map.cols());
    for (double Z : grid) {
        const std::vector<double> row = dsn_distribution(p, Z);
        map.values.insert(map.values.end(), row.begin(), row.end());
    }
    return map;
}

IntensityMap return_intensity_scan(const LatticeParams& p, double z_max, double dz)
{
    validate(p);
    if (!std::isfinite(z_max) || z_max < 0.0)
        throw invalid_parameter("z_max must be finite and >= 0");

    IntensityMap map;
    map.sites = {p.n0};
    if (z_max == 0.0) {
        map.z = {0.0};
    } else {
        if (!(dz > 0.0))
            throw invalid_parameter("scan spacing dz must be > 0");
        const int steps = std::max(1, int(std::lround(z_max / dz)));
        map.z.resize(std::size_t(steps) + 1);
        for (int j = 0; j <= steps; ++j)
            map.z[std::size_t(j)] = z_max * double(j) / double(steps);
    }

    const std::array<int, 1> sites{p.n0};
    map.values.reserve(map.z.size());
    for (double Z : map.z)
        map.values.push_back(std::norm(amplitude_at_sites(p, Z, sites)[0]));
    return map;
}

// ---- period readout --------------------------------------------------------

std::optional<double> bloch_period_formula(const LatticeParams& p)
{
    validate(p);
    if (p.alpha2 == 0.0) {
        if (p.lambda > 0.0)
            return 2.0 * std::numbers::pi / p.lambda;
        return std::nullopt; // ungraded first-neighbour lattice never refocuses
    }
    const Regime r = classify_regime(p);
    if (r.kind == RegimeKind::Trigonometric)
        return std::numbers::pi / r.gamma.imag();
    return std::nullopt; // hyperbolic stretch or critical point: no revival
}

PeriodEstimate bloch_period(const IntensityMap& map, int n0)
{
    const auto col = std::find(map.sites.begin(), map.sites.end(), n0);
    if (col == map.sites.end())
        throw invalid_parameter("intensity map does not cover site " + std::to_string(n0));
    const std::size_t c = std::size_t(col - map.sites.begin());

    std::vector<double> column(map.rows());
    for (std::size_t r = 0; r < map.rows(); ++r)
        column[r] = map.at(r, c);

    PeriodEstimate est;
    est.peaks = dominant_peaks(map.z, column);
    if (est.peaks.size() >= 2)
        est.measured = (est.peaks.back().Z - est.peaks.front().Z) /
                       double(est.peaks.size() - 1);
    return est;
}

std::vector<DoublingRow> period_doubling_scan(const LatticeParams& base,
                                              std::span<const double> alpha1_values,
                                              double z_max, double dz)
{
    validate(base);
    const std::optional<double> base_period = bloch_period_formula(base);

    auto one = [&base, z_max, dz, &base_period](double a1) {
        LatticeParams p = base;
        p.alpha1 = a1;
        DoublingRow row;
        row.alpha1 = a1;
        const IntensityMap scan = return_intensity_scan(p, z_max, dz);
        row.measured = bloch_period(scan, p.n0).measured;
        if (row.measured && base_period)
            row.ratio = *row.measured / *base_period;
        return row;
    };

    // Independent jobs; a small fan-out keeps the scan responsive on
    // multicore hosts without oversubscribing single-core ones.
    std::vector<std::future<DoublingRow>> jobs;
    jobs.reserve(alpha1_values.size());
    for (double a1 : alpha1_values)
        jobs.push_back(std::async(std::launch::async, one, a1));

    std::vector<DoublingRow> rows;
    rows.reserve(alpha1_values.size());
    for (auto& job : jobs)
        rows.push_back(job.get());
    return rows;
}

std::string plot_script(const std::string& csv_name, const std::string& style)
{
    std::string text;
    if (style == "heatmap")
        text = heatmap_py;
    else if (style == "slice")
        text = slice_py;
    else
        throw invalid_parameter("plot style must be 'heatmap' or 'slice', got '" + style + "'");

    const std::string token = "CSV_NAME";
    const std::size_t at = text.find(token);
    text.replace(at, token.size(), csv_name);
    return text;
}

// ---- mode driver -----------------------------------------------------------

int run_mode(RunMode mode, const RunConfig& cfg)
{
    namespace fs = std::filesystem;
    check_run_config(cfg);
    fs::create_directories(cfg.out_dir);
    const fs::path out(cfg.out_dir);
    const std::vector<double> grid = uniform_grid(cfg.z_max, cfg.z_steps);

    switch (mode) {
    case RunMode::Analytic: {
        const IntensityMap map = analytic_intensity(cfg.params, grid);
        write_intensity_csv((out / "intensity.csv").string(), map);
        write_json(out / "meta.json", meta_json("analytic", cfg));
        if (cfg.plot)
            write_text_atomic((out / "plot.py").string(), plot_script("intensity.csv", "heatmap"));
        return 0;
    }
    case RunMode::Numeric: {
        const NumericRun run = numeric_intensity(cfg.params, cfg.integrator, grid);
        write_intensity_csv((out / "intensity.csv").string(), run.map);
        json meta = meta_json("numeric", cfg);
        meta["steps_accepted"] = run.steps_accepted;
        meta["steps_rejected"] = run.steps_rejected;
        meta["max_norm_drift"] = run.max_norm_drift;
        meta["edge_leak"] = run.edge_leak;
        write_json(out / "meta.json", meta);
        if (cfg.plot)
            write_text_atomic((out / "plot.py").string(), plot_script("intensity.csv", "heatmap"));
        return 0;
    }
    case RunMode::Compare: {
        const IntensityMap analytic = analytic_intensity(cfg.params, grid);
        const NumericRun numeric = numeric_intensity(cfg.params, cfg.integrator, grid);
        const ComparisonReport rep = compare_maps(analytic, numeric.map);
        write_intensity_csv((out / "intensity_analytic.csv").string(), analytic);
        write_intensity_csv((out / "intensity_numeric.csv").string(), numeric.map);

        PeriodEstimate est = bloch_period(analytic, cfg.params.n0);
        est.formula = bloch_period_formula(cfg.params);

        json report;
        report["max_abs_err"] = rep.max_abs_err;
        report["l2_err"] = rep.l2_err;
        report["worst_z"] = rep.worst_z;
        report["worst_site"] = rep.worst_site;
        report["row_max_err"] = rep.row_max_err;
        report["norm_drift"] = numeric.max_norm_drift;
        report["edge_leak"] = numeric.edge_leak;
        report["truncation_certified"] = numeric.edge_leak < 1e-8;
        report["tol"] = cfg.tol;
        const bool passed = rep.max_abs_err <= cfg.tol;
        report["passed"] = passed;
        report["period_estimates"] = json::array();
        if (est.formula)
            report["period_estimates"].push_back({{"method", "formula"}, {"Z_p", *est.formula}});
        if (est.measured)
            report["period_estimates"].push_back({{"method", "measured"}, {"Z_p", *est.measured}});
        write_json(out / "report.json", report);
        write_json(out / "meta.json", meta_json("compare", cfg));
        if (cfg.plot)
            write_text_atomic((out / "plot.py").string(),
                              plot_script("intensity_analytic.csv", "heatmap"));
        return passed ? 0 : 3;
    }
    case RunMode::Dsn: {
        const IntensityMap map = dsn_intensity(cfg.params, grid);
        write_intensity_csv((out / "intensity.csv").string(), map);
        write_json(out / "meta.json", meta_json("dsn", cfg));
        if (cfg.plot)
            write_text_atomic((out / "plot.py").string(), plot_script("intensity.csv", "heatmap"));
        return 0;
    }
    case RunMode::Period: {
        const double dz = cfg.z_max > 0.0 ? cfg.z_max / double(cfg.z_steps) : 0.0;
        const IntensityMap scan = return_intensity_scan(cfg.params, cfg.z_max, dz);
        PeriodEstimate est = bloch_period(scan, cfg.params.n0);
        est.formula = bloch_period_formula(cfg.params);
        write_intensity_csv((out / "intensity.csv").string(), scan);
        write_json(out / "period.json", period_json(est));
        write_json(out / "meta.json", meta_json("period", cfg));
        if (cfg.plot)
            write_text_atomic((out / "plot.py").string(), plot_script("intensity.csv", "slice"));
        return 0;
    }
    case RunMode::Sweep: {
        if (cfg.alpha1_values.empty())
            throw invalid_parameter("sweep mode needs alpha1-values (config key "
                                    "'alpha1-values' or --alpha1-list)");
        const double dz = cfg.z_max > 0.0 ? cfg.z_max / double(cfg.z_steps) : 0.0;
        const std::vector<DoublingRow> rows =
            period_doubling_scan(cfg.params, cfg.alpha1_values, cfg.z_max, dz);

        std::string csv = "alpha1,measured_period,period_ratio\n";
        char buf[96];
        for (const DoublingRow& row : rows) {
            std::snprintf(buf, sizeof buf, "%.17g,", row.alpha1);
            csv += buf;
            if (row.measured) {
                std::snprintf(buf, sizeof buf, "%.17g", *row.measured);
                csv += buf;
            }
            csv += ',';
            if (row.ratio) {
                std::snprintf(buf, sizeof buf, "%.17g", *row.ratio);
                csv += buf;
            }
            csv += '\n';
        }
        write_text_atomic((out / "sweep.csv").string(), csv);
        write_json(out / "meta.json", meta_json("sweep", cfg));
        return 0;
    }
    }
    throw dispatch_error("unhandled run mode");
}

} // namespace zigzag
