#include "zigzag/amplitude.hpp"
#include "zigzag/elements.hpp"
#include "zigzag/errors.hpp"

#include <cmath>
#include <numeric>

namespace zigzag {

namespace {

using std::complex;

constexpr SumPolicy policy{};

// Shared adaptive intermediate sum: sum_k factor(m,k) * d_{k,n0}(disp) with k
// restricted to the parity of m.  The product of the two windows is bimodal,
// so negligible tail terms are counted only once k has passed both the row
// diagonal and the displacement window's upper turning point; beyond that
// every factor is in super-exponential decay and the product is monotone.
template <typename Factor>
cplx adaptive_site_sum(int m, int n0, cplx disp, int k_ceiling,
                       const LogFactorialTable& table, Factor&& factor)
{
    const double edge = std::abs(disp) + std::sqrt(double(n0 + 1));
    const int stop_floor = std::max(m, int(edge * edge) + 20);

    cplx partial{0.0, 0.0};
    int consec = 0;
    for (int k = m & 1; k <= k_ceiling; k += 2) {
        const cplx f = factor(m, k);
        cplx term{0.0, 0.0};
        if (f != cplx{0.0, 0.0})
            term = f * displacement_element(k, n0, disp, table);
        partial += term;
        const double mag = std::abs(term);
        const bool negligible =
            mag < policy.rel_floor * (std::abs(partial) + 1e-30) || mag < 1e-280;
        if (k >= stop_floor && negligible) {
            if (++consec >= policy.consecutive)
                break;
        } else {
            consec = 0;
        }
    }
    return partial;
}

// alpha2 = 0: a displaced frame removes the gradient entirely and the state
// stays a coherently displaced number state.  The removable singularity of
// the global phase at lambda -> 0 is substituted by its leading term.
std::vector<cplx> first_neighbour_row(const LatticeParams& p, double Z,
                                      std::span<const int> sites)
{
    const double a1 = p.alpha1;
    const double lam = p.lambda;

    cplx disp;
    double drift_phase;
    if (lam < 1e-6) {
        disp = cplx{0.5 * a1 * lam * Z * Z, a1 * Z};
        drift_phase = -a1 * a1 * lam * Z * Z * Z / 6.0;
    } else {
        const double half = std::sin(0.5 * lam * Z);
        disp = (a1 / lam) * cplx{2.0 * half * half, std::sin(lam * Z)};
        drift_phase = -(a1 * a1 / (lam * lam)) * (lam * Z - std::sin(lam * Z));
    }

    const auto& table = default_log_factorials();
    std::vector<cplx> out;
    out.reserve(sites.size());
    for (int m : sites) {
        const double phase = drift_phase + lam * double(m) * Z;
        out.push_back(std::exp(cplx{0.0, phase}) *
                      displacement_element(m, p.n0, disp, table));
    }
    return out;
}

// alpha1 = 0: only the two-photon ladder acts and the propagator reduces to
// the squeeze factorization alone.
std::vector<cplx> ladder_only_row(const LatticeParams& p, double Z,
                                  std::span<const int> sites)
{
    const ScalarFrame fr = scalar_frame(p, Z);
    const cplx pref = std::exp(-0.5 * fr.nu);
    const auto& table = default_log_factorials();

    std::vector<cplx> out;
    out.reserve(sites.size());
    for (int m : sites)
        out.push_back(pref * squeeze_element(m, p.n0, fr.g1, fr.g0, table));
    return out;
}

std::vector<cplx> general_row(const LatticeParams& p, double Z,
                              std::span<const int> sites)
{
    const ScalarFrame fr = scalar_frame(p, Z);
    const cplx pref = std::exp(-0.5 * fr.nu);
    const cplx disp = -fr.eta; // the propagator carries the inverse displacement
    const auto& table = default_log_factorials();
    const int k_ceiling = policy.ceiling_factor * p.n_sites;
    if (std::size_t(k_ceiling) > table.n_max())
        throw resource_error("n_sites too large for the shared ln-factorial table");

    std::vector<cplx> out;
    out.reserve(sites.size());
    for (int m : sites) {
        // One stable row of the squeeze factor serves the whole k-sum.
        const std::vector<cplx> row = squeeze_row(m, k_ceiling, fr.g1, fr.g0, table);
        const cplx sum = adaptive_site_sum(
            m, p.n0, disp, k_ceiling, table,
            [&](int, int kk) { return row[std::size_t(kk)]; });
        out.push_back(pref * sum);
    }
    return out;
}

} // namespace

std::vector<cplx> amplitude_at_sites(const LatticeParams& p, double Z,
                                     std::span<const int> sites)
{
    validate(p);
    for (int m : sites)
        if (m < 0)
            throw invalid_parameter("site indices must be >= 0");

    if (p.alpha2 == 0.0)
        return first_neighbour_row(p, Z, sites);
    if (p.alpha1 == 0.0)
        return ladder_only_row(p, Z, sites);
    return general_row(p, Z, sites);
}

AmplitudeRow amplitude(const LatticeParams& p, double Z)
{
    validate(p);
    std::vector<int> sites(std::size_t(p.n_sites));
    std::iota(sites.begin(), sites.end(), 0);

    AmplitudeRow row;
    row.Z = Z;
    row.n0 = p.n0;
    row.amps = amplitude_at_sites(p, Z, sites);
    return row;
}

std::vector<double> dsn_distribution(const LatticeParams& p, double Z)
{
    validate(p);
    if (p.lambda != 0.0)
        throw dispatch_error("dsn_distribution applies only at lambda = 0; use "
                             "amplitude() for graded lattices");
    if (p.alpha2 == 0.0)
        throw dispatch_error("dsn_distribution needs the two-photon coupling; "
                             "alpha2 = 0 is handled by amplitude()");

    // Explicit hyperbolic scalars of the gradient-free lattice: the squeeze
    // pair is (i*tanh(u), -2*ln cosh(u)) with u = 2*alpha2*Z, the ladder sum
    // weight is x = -2i/sinh(u), and the displacement is the literal
    // (alpha1/(2 alpha2)) * (2 sinh^2(alpha2 Z) - i sinh(2 alpha2 Z)).
    const double u = 2.0 * p.alpha2 * Z;
    const double sh_half = std::sinh(p.alpha2 * Z);
    const cplx eta = (p.alpha1 / (2.0 * p.alpha2)) *
                     cplx{2.0 * sh_half * sh_half, -std::sinh(u)};
    const cplx disp = -eta;

    const auto& table = default_log_factorials();
    const int k_ceiling = policy.ceiling_factor * p.n_sites;
    if (std::size_t(k_ceiling) > table.n_max())
        throw resource_error("n_sites too large for the shared ln-factorial table");

    const double ln_cosh_u = std::log(std::cosh(u));

    // sqrt(m! k!) * (i tanh(u)/2)^{(m+k)/2} / sqrt(cosh u) * F(u, k, m) with
    // F the step-guarded parity sum over j of x^j / (((m-j)/2)! ((k-j)/2)! j!).
    auto dsn_factor = [&](int m, int k) -> cplx {
        if (!same_parity(m, k))
            return {0.0, 0.0};
        if (u == 0.0)
            return m == k ? cplx{1.0, 0.0} : cplx{0.0, 0.0};

        const double th = std::tanh(u);
        const cplx log_half_g1 = std::log(cplx{0.0, 0.5 * th});
        const cplx log_x = std::log(cplx{0.0, -2.0 / std::sinh(u)});
        const cplx fixed = 0.5 * double(table.extended(m) + table.extended(k)) +
                           (0.5 * double(m + k)) * log_half_g1 - 0.5 * ln_cosh_u;

        cplx acc{0.0, 0.0};
        double max_re = -745.0;
        std::vector<cplx> logs;
        for (int j = m & 1; j <= std::min(m, k); j += 2) {
            if (unit_step(m - j) * unit_step(k - j) == 0)
                continue; // unreachable by loop bounds; mirrors the guarded sum
            const cplx lt = fixed + double(j) * log_x -
                            double(table.extended(std::size_t((m - j) / 2)) +
                                   table.extended(std::size_t((k - j) / 2)) +
                                   table.extended(std::size_t(j)));
            logs.push_back(lt);
            max_re = std::max(max_re, lt.real());
        }
        if (max_re <= -745.0)
            return {0.0, 0.0};
        for (const cplx& lt : logs)
            acc += std::exp(lt - max_re);
        return std::exp(max_re) * acc;
    };

    std::vector<double> out;
    out.reserve(std::size_t(p.n_sites));
    for (int m = 0; m < p.n_sites; ++m) {
        const cplx amp = adaptive_site_sum(m, p.n0, disp, k_ceiling, table, dsn_factor);
        out.push_back(std::norm(amp));
    }
    return out;
}

} // namespace zigzag
