#include "zigzag/config.hpp"
#include "zigzag/errors.hpp"
#include "zigzag/harness.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

// CLI values parsed alongside an optional config file; only flags the user
// actually passed override the file.
struct Overrides {
    std::optional<double> lambda, alpha1, alpha2, z_max, tol, rel_tol, abs_tol;
    std::optional<int> n0, n_sites, z_steps;
    std::optional<std::string> out;
    std::vector<double> alpha1_list;
    bool plot = false;
    std::string config_path;
};

void add_common(CLI::App* sub, Overrides& ov)
{
    sub->add_option("--lambda", ov.lambda, "normalized gradient, >= 0");
    sub->add_option("--alpha1", ov.alpha1, "first-neighbour coupling weight");
    sub->add_option("--alpha2", ov.alpha2, "second-neighbour coupling weight");
    sub->add_option("--n0", ov.n0, "injection site");
    sub->add_option("--n-sites", ov.n_sites, "reported site window");
    sub->add_option("--z-max", ov.z_max, "final propagation distance");
    sub->add_option("--z-steps", ov.z_steps, "grid steps (rows = steps + 1)");
    sub->add_option("--config", ov.config_path, "flat JSON config file")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", ov.out, "output directory");
    sub->add_option("--tol", ov.tol, "compare-mode failure threshold");
    sub->add_option("--rel-tol", ov.rel_tol, "integrator relative tolerance");
    sub->add_option("--abs-tol", ov.abs_tol, "integrator absolute tolerance");
    sub->add_flag("--plot", ov.plot, "also write a plot script");
}

zigzag::RunConfig merge(const Overrides& ov)
{
    zigzag::RunConfig cfg;
    if (!ov.config_path.empty())
        cfg = zigzag::load_config(ov.config_path);

    if (ov.lambda)
        cfg.params.lambda = *ov.lambda;
    if (ov.alpha1)
        cfg.params.alpha1 = *ov.alpha1;
    if (ov.alpha2)
        cfg.params.alpha2 = *ov.alpha2;
    if (ov.n0)
        cfg.params.n0 = *ov.n0;
    if (ov.n_sites)
        cfg.params.n_sites = *ov.n_sites;
    if (ov.z_max)
        cfg.z_max = *ov.z_max;
    if (ov.z_steps)
        cfg.z_steps = *ov.z_steps;
    if (ov.tol)
        cfg.tol = *ov.tol;
    if (ov.rel_tol)
        cfg.integrator.rel_tol = *ov.rel_tol;
    if (ov.abs_tol)
        cfg.integrator.abs_tol = *ov.abs_tol;
    if (ov.out)
        cfg.out_dir = *ov.out;
    if (!ov.alpha1_list.empty())
        cfg.alpha1_values = ov.alpha1_list;
    if (ov.plot)
        cfg.plot = true;
    return cfg;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"semi-infinite zigzag waveguide array: closed-form and direct "
                 "simulation of graded-lattice light transport"};
    app.require_subcommand(1);
    Overrides ov;

    CLI::App* analytic = app.add_subcommand("analytic", "closed-form intensity map");
    CLI::App* numeric = app.add_subcommand("numeric", "adaptive Runge-Kutta intensity map");
    CLI::App* compare = app.add_subcommand("compare", "closed form vs integrator, with report");
    CLI::App* sweep = app.add_subcommand("sweep", "revival period vs first-neighbour weight");
    CLI::App* dsn = app.add_subcommand("dsn", "photon-statistics route (lambda = 0)");
    CLI::App* period = app.add_subcommand("period", "revival period readout at the injection site");
    for (CLI::App* sub : {analytic, numeric, compare, sweep, dsn, period})
        add_common(sub, ov);
    sweep->add_option("--alpha1-list", ov.alpha1_list, "comma-separated first-neighbour weights")
        ->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    zigzag::RunMode mode;
    if (analytic->parsed())
        mode = zigzag::RunMode::Analytic;
    else if (numeric->parsed())
        mode = zigzag::RunMode::Numeric;
    else if (compare->parsed())
        mode = zigzag::RunMode::Compare;
    else if (sweep->parsed())
        mode = zigzag::RunMode::Sweep;
    else if (dsn->parsed())
        mode = zigzag::RunMode::Dsn;
    else
        mode = zigzag::RunMode::Period;

    try {
        return zigzag::run_mode(mode, merge(ov));
    } catch (const zigzag::out_of_scope& e) {
        std::cerr << "out of scope: " << e.what() << '\n';
        return 2;
    } catch (const zigzag::dispatch_error& e) {
        std::cerr << "not applicable: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
