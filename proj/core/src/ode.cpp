#include "zigzag/ode.hpp"
#include "zigzag/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace zigzag {

namespace {

using cplx = std::complex<double>;
using vec = std::vector<cplx>;

// Classic Fehlberg 4(5) pair.  The system is autonomous, so the stage
// abscissae are not needed; only the stage weights, the fifth-order advance
// weights, and the embedded-defect weights appear.
constexpr double stage_w[6][5] = {
    {},
    {1.0 / 4.0},
    {3.0 / 32.0, 9.0 / 32.0},
    {1932.0 / 2197.0, -7200.0 / 2197.0, 7296.0 / 2197.0},
    {439.0 / 216.0, -8.0, 3680.0 / 513.0, -845.0 / 4104.0},
    {-8.0 / 27.0, 2.0, -3544.0 / 2565.0, 1859.0 / 4104.0, -11.0 / 40.0},
};
constexpr double advance_w[6] = {16.0 / 135.0, 0.0, 6656.0 / 12825.0,
                                 28561.0 / 56430.0, -9.0 / 50.0, 2.0 / 55.0};
constexpr double defect_w[6] = {1.0 / 360.0, 0.0, -128.0 / 4275.0,
                                -2197.0 / 75240.0, 1.0 / 50.0, 2.0 / 55.0};

// Square-root coupling ladders, tabulated once per integration.
struct CouplingTables {
    double lambda;
    std::vector<double> c1; // c1[m] = alpha1 * sqrt(m), m in [0, dim]
    std::vector<double> c2; // c2[m] = alpha2 * sqrt(m*(m-1)), m in [0, dim+1]

    CouplingTables(const LatticeParams& p, std::size_t dim)
        : lambda(p.lambda), c1(dim + 1), c2(dim + 2)
    {
        for (std::size_t m = 0; m <= dim; ++m)
            c1[m] = p.alpha1 * std::sqrt(double(m));
        for (std::size_t m = 0; m <= dim + 1; ++m)
            c2[m] = m >= 2 ? p.alpha2 * std::sqrt(double(m) * double(m - 1)) : 0.0;
    }

    void rhs(const vec& psi, vec& out) const
    {
        const std::size_t dim = psi.size();
        for (std::size_t m = 0; m < dim; ++m) {
            cplx acc = (lambda * double(m)) * psi[m];
            if (m >= 1)
                acc += c1[m] * psi[m - 1];
            if (m + 1 < dim)
                acc += c1[m + 1] * psi[m + 1];
            if (m >= 2)
                acc += c2[m] * psi[m - 2];
            if (m + 2 < dim)
                acc += c2[m + 2] * psi[m + 2];
            out[m] = cplx{-acc.imag(), acc.real()}; // multiply by i
        }
    }
};

double squared_norm(const vec& y)
{
    double s = 0.0;
    for (const cplx& v : y)
        s += std::norm(v);
    return s;
}

void check_config(const IntegratorConfig& c)
{
    if (!(c.rel_tol > 0.0) || !(c.abs_tol > 0.0))
        throw invalid_parameter("integrator tolerances must be > 0");
    if (!(c.initial_step > 0.0) || !(c.max_step > 0.0) || !(c.min_step > 0.0))
        throw invalid_parameter("integrator step bounds must be > 0");
}

void check_grid(std::span<const double> grid)
{
    if (grid.empty())
        throw invalid_parameter("integration grid must not be empty");
    if (!(grid.front() >= 0.0))
        throw invalid_parameter("integration grid must start at Z >= 0");
    for (std::size_t j = 1; j < grid.size(); ++j)
        if (!(grid[j] > grid[j - 1]))
            throw invalid_parameter("integration grid must be strictly increasing");
}

IntegrationResult run_integration(const LatticeParams& p, const IntegratorConfig& cfg,
                                  const vec& initial, std::span<const double> grid)
{
    check_config(cfg);
    check_grid(grid);
    if (initial.empty())
        throw invalid_parameter("initial state must have at least one site");

    const std::size_t dim = initial.size();
    const CouplingTables tables(p, dim);

    IntegrationResult result;
    result.states.reserve(grid.size());

    vec y = initial;
    vec k[6], y_stage(dim), y_next(dim), defect(dim);
    for (auto& ki : k)
        ki.assign(dim, cplx{});

    const double norm0 = squared_norm(y);
    double Z = 0.0;
    std::size_t gi = 0;
    if (grid.front() == 0.0) {
        result.states.push_back({0.0, y});
        ++gi;
    }

    double h = std::min(cfg.initial_step, cfg.max_step);
    while (gi < grid.size()) {
        const double target = grid[gi];
        double h_try = h;
        bool lands = false;
        if (Z + h_try >= target) {
            h_try = target - Z;
            lands = true;
        }
        if (lands && h_try < cfg.min_step) {
            // Residual gap below the step floor: the state cannot change
            // measurably across it, so reuse the current state.
            result.states.push_back({target, y});
            ++gi;
            continue;
        }

        tables.rhs(y, k[0]);
        for (int s = 1; s < 6; ++s) {
            for (std::size_t m = 0; m < dim; ++m) {
                cplx acc = y[m];
                for (int q = 0; q < s; ++q)
                    acc += (h_try * stage_w[s][q]) * k[q][m];
                y_stage[m] = acc;
            }
            tables.rhs(y_stage, k[s]);
        }

        double err_sq = 0.0;
        for (std::size_t m = 0; m < dim; ++m) {
            cplx adv{};
            cplx dfc{};
            for (int s = 0; s < 6; ++s) {
                adv += advance_w[s] * k[s][m];
                dfc += defect_w[s] * k[s][m];
            }
            y_next[m] = y[m] + h_try * adv;
            defect[m] = h_try * dfc;
            const double scale =
                cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[m]), std::abs(y_next[m]));
            const double r = std::abs(defect[m]) / scale;
            err_sq += r * r;
        }
        const double err_norm = std::sqrt(err_sq / double(dim));

        double factor;
        if (!std::isfinite(err_norm))
            factor = 0.2;
        else if (err_norm == 0.0)
            factor = 5.0;
        else
            factor = std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);

        if (std::isfinite(err_norm) && err_norm <= 1.0) {
            ++result.steps_accepted;
            Z = lands ? target : Z + h_try;
            std::swap(y, y_next);
            result.max_norm_drift =
                std::max(result.max_norm_drift, std::abs(squared_norm(y) - norm0));
            if (lands) {
                result.states.push_back({target, y});
                ++gi;
                // keep the pre-clamp proposal; the landing step says nothing
                // about the natural scale
            } else {
                h = std::min(h_try * factor, cfg.max_step);
            }
        } else {
            ++result.steps_rejected;
            h = h_try * factor;
            if (h < cfg.min_step)
                throw stiffness_error("step controller underflowed (error estimate " +
                                      std::to_string(err_norm) + ")", Z);
        }
    }
    return result;
}

} // namespace

std::vector<cplx> coupled_mode_rhs(const LatticeParams& p, std::span<const cplx> psi)
{
    validate(p);
    if (psi.empty())
        throw invalid_parameter("state must have at least one site");
    const CouplingTables tables(p, psi.size());
    vec in(psi.begin(), psi.end());
    vec out(psi.size());
    tables.rhs(in, out);
    return out;
}

IntegrationResult integrate(const LatticeParams& p, const IntegratorConfig& config,
                            std::span<const double> z_grid)
{
    validate(p);
    vec initial(std::size_t(p.n_sites), cplx{});
    initial[std::size_t(p.n0)] = 1.0;
    return run_integration(p, config, initial, z_grid);
}

IntegrationResult integrate_from(const LatticeParams& p, const IntegratorConfig& config,
                                 std::span<const cplx> initial,
                                 std::span<const double> z_grid)
{
    validate(p);
    return run_integration(p, config, vec(initial.begin(), initial.end()), z_grid);
}

double truncation_check(const IntegrationResult& result, int tail_width)
{
    if (tail_width < 1)
        throw invalid_parameter("tail width must be >= 1");
    double worst = 0.0;
    for (const FieldState& st : result.states) {
        const std::size_t dim = st.amps.size();
        const std::size_t first = dim > std::size_t(tail_width) ? dim - std::size_t(tail_width) : 0;
        double mass = 0.0;
        for (std::size_t m = first; m < dim; ++m)
            mass += std::norm(st.amps[m]);
        worst = std::max(worst, mass);
    }
    return worst;
}

} // namespace zigzag
