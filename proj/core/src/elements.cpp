#include "zigzag/elements.hpp"
#include "zigzag/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace zigzag {

namespace {

using cplx = std::complex<double>;

// Below this log-magnitude a term cannot influence any double-precision sum.
constexpr double dead_log = -745.0;

} // namespace

cplx displacement_element(int m, int n, cplx eta, const LogFactorialTable& table)
{
    if (m < 0 || n < 0)
        throw invalid_parameter("displacement element indices must be >= 0, got m = " +
                                std::to_string(m) + ", n = " + std::to_string(n));

    const double r2 = std::norm(eta);
    if (r2 == 0.0)
        return m == n ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
    // |eta| beyond ~1e154 overflows |eta|^2; the Gaussian prefactor then sits
    // far below the dead threshold for every table-representable index.
    if (!std::isfinite(r2))
        return {0.0, 0.0};

    // Both orientations share the pattern
    //   exp(-|eta|^2/2) * sqrt(lo!/hi!) * base^(hi-lo) * L_lo^{(hi-lo)}(|eta|^2)
    // with base = eta when m >= n and base = -conj(eta) otherwise.
    const int lo = std::min(m, n);
    const int hi = std::max(m, n);
    const cplx base = (m >= n) ? eta : -std::conj(eta);
    const int p = hi - lo;

    const double log_mag = -0.5 * r2 +
                           0.5 * static_cast<double>(table.extended(lo) - table.extended(hi)) +
                           double(p) * 0.5 * std::log(r2);
    if (log_mag < dead_log)
        return {0.0, 0.0};

    const double laguerre = assoc_laguerre(lo, p, r2);
    const double phase = double(p) * std::arg(base);
    return std::exp(log_mag) * laguerre * cplx{std::cos(phase), std::sin(phase)};
}

std::vector<cplx> squeeze_row(int m, int k_max, cplx g1, cplx g0,
                              const LogFactorialTable& table)
{
    if (m < 0 || k_max < 0)
        throw invalid_parameter("squeeze row indices must be >= 0, got m = " +
                                std::to_string(m) + ", k_max = " + std::to_string(k_max));
    if (std::size_t(m) > table.n_max() || std::size_t(k_max) > table.n_max())
        throw resource_error("squeeze row indices exceed the ln-factorial table depth " +
                             std::to_string(table.n_max()));

    std::vector<cplx> out(std::size_t(k_max) + 1, cplx{0.0, 0.0});
    if (g1 == cplx{0.0, 0.0}) {
        // Pure number-operator phase: only exp(g0*K0) survives.
        if (m <= k_max)
            out[std::size_t(m)] = std::exp(g0 * (0.5 * double(m) + 0.25));
        return out;
    }
    const int p = m & 1;
    if (k_max < p)
        return out;

    // Weak squeeze: every entry's factorized sum is dominated by its leading
    // term and falls off geometrically in the pair count, while the
    // recurrence below would divide the vanishing near-diagonal residual by
    // g1.  The regimes overlap by orders of magnitude, so the split loses
    // nothing.
    if (std::abs(g1) * std::sqrt(double(m + 1) * double(k_max + 1)) < 0.5) {
        const cplx log_half_g1 = std::log(0.5 * g1);
        for (int k = p; k <= k_max; k += 2) {
            cplx acc{0.0, 0.0};
            for (int j = (k > m) ? (k - m) / 2 : 0; 2 * j <= k; ++j) {
                const int n = k - 2 * j;   // surviving index between the factors
                const int i = (m - n) / 2; // pairs raised back up
                cplx z = double(j + i) * log_half_g1 + g0 * (0.5 * double(n) + 0.25);
                z += cplx{double(0.5L * (table.extended(std::size_t(k)) +
                                         table.extended(std::size_t(m))) -
                          table.extended(std::size_t(n)) - table.extended(std::size_t(j)) -
                          table.extended(std::size_t(i))),
                          0.0};
                const cplx term = std::exp(z);
                acc += term;
                if (std::abs(term) < 1e-18 * std::abs(acc))
                    break;
            }
            out[std::size_t(k)] = acc;
        }
        return out;
    }

    // Conjugating the number operator through the factorization closes the
    // fixed-m recurrence
    //   (m - C k - D) T_k = A sqrt(k(k-1)) T_{k-2} + B sqrt((k+1)(k+2)) T_{k+2}
    // with A = -g1 e^{-g0/2} mu, B = g1 e^{-g0}, C = 1 - 2 g1^2 e^{-g0},
    // D = -g1^2 e^{-g0} and mu = e^{g0/2} - g1^2 e^{-g0/2}.  Multiplied
    // through by e^{g0} (|e^{g0}| <= 1 in every regime) all coefficients stay
    // bounded.  sqrt(k(k-1)) vanishes at the parity boundary, so the row
    // self-starts from the closed boundary entry and never touches another
    // row; forward in k is the growing direction below the support band and
    // neutral inside it.
    const cplx eg = std::exp(g0);
    const cplx a_coef = -g1 * (eg - g1 * g1);
    const cplx c_coef = eg - 2.0 * g1 * g1;
    const cplx d_coef = -g1 * g1;

    // ln T_{m,p}: the closed squeezed-vacuum (p = 0) or one-photon (p = 1)
    // boundary entry.  It can sit thousands of ln units below double range,
    // so the walk carries the scale separately and re-attaches it per entry.
    const double half = 0.5 * double(m - p);
    const cplx ln_seed = (p == 0 ? 0.25 : 0.75) * g0 + half * std::log(0.5 * g1) +
                         cplx{double(0.5L * table.extended(std::size_t(m)) -
                                     table.extended(std::size_t(half))),
                              0.0};

    double sigma = ln_seed.real();
    cplx t_prev = std::exp(cplx{0.0, ln_seed.imag()});
    cplx t_cur = (double(m) * eg - c_coef * double(p) - d_coef) * t_prev /
                 (g1 * std::sqrt(double(p + 1) * double(p + 2)));

    // Forward recursion holds the true row only down to roughly the square
    // root of machine precision below the row maximum; past that dip the
    // paired growing solution takes over.  Arm on a sustained post-band
    // decay, stop once the dip regrows or falls out of reach, and remember
    // where the decay began so the tail can be regenerated below.
    double best_lt = -1e300;
    double dip_lt = 1e300;
    int peak_k = p;
    int dip_k = -1;
    int armed_k = -1;
    int low_run = 0;
    bool armed = false;
    bool stop = false;
    auto emit = [&](int k, cplx t) {
        const double mag = std::abs(t);
        const double lt = (mag == 0.0) ? -1e300 : sigma + std::log(mag);
        if (lt > best_lt) {
            best_lt = lt;
            peak_k = k;
        }
        if (lt >= dead_log && mag > 0.0)
            out[std::size_t(k)] = std::exp(lt) * (t / mag);
        if (lt < best_lt - 40.0) {
            stop = true;
            return;
        }
        if (!armed) {
            low_run = (lt < best_lt - 10.0) ? low_run + 1 : 0;
            armed = low_run >= 4;
            if (armed) {
                armed_k = k;
                dip_lt = lt;
                dip_k = k;
            }
            return;
        }
        if (lt < dip_lt) {
            dip_lt = lt;
            dip_k = k;
        } else if (lt > dip_lt + 3.0) {
            std::fill(out.begin() + dip_k, out.begin() + k + 1, cplx{0.0, 0.0});
            stop = true;
        }
    };

    emit(p, t_prev);
    if (p + 2 <= k_max)
        emit(p + 2, t_cur);

    for (int k = p + 2; !stop && k + 2 <= k_max; k += 2) {
        cplx t_next = ((double(m) * eg - c_coef * double(k) - d_coef) * t_cur -
                       a_coef * std::sqrt(double(k) * double(k - 1)) * t_prev) /
                      (g1 * std::sqrt(double(k + 1) * double(k + 2)));
        t_prev = t_cur;
        t_cur = t_next;
        const double mag = std::abs(t_cur);
        if (mag > 1e250) {
            t_prev /= mag;
            t_cur /= mag;
            sigma += std::log(mag);
        }
        emit(k + 2, t_cur);
    }

    if (!armed)
        return out;

    // Below the forward floor the decaying solution dominates the downward
    // direction, so the tail is regenerated by backward recursion from
    // arbitrary seeds planted past the dip.  The row is the minimal solution
    // of the recurrence, so the backward sweep tracks it through the band
    // edge as well; matching by least squares over a window reaching back
    // toward the band keeps the splice scale at the accuracy of the cleanest
    // forward entries instead of the contaminated arming column.  The window
    // never reaches below the row maximum: under the band the decaying
    // direction flips and the backward sweep no longer follows the row.  A
    // vanishing lower coefficient means a super-geometric tail already
    // flushed to zero.
    if (std::abs(eg - g1 * g1) <= 1e-12 * (std::abs(eg) + std::norm(g1)))
        return out;
    const int k_top = k_max - ((k_max - p) & 1);
    const int k_hi = std::min(k_top, dip_k + 120);
    const int k_lo = std::max({p, armed_k - 40, peak_k});
    if (k_hi < armed_k + 2)
        return out;

    std::vector<cplx> back(std::size_t((k_hi - k_lo) / 2) + 1, cplx{0.0, 0.0});
    cplx b_above{0.0, 0.0};
    cplx b_cur{1e-200, 0.0};
    back.back() = b_cur;
    for (int k = k_hi; k - 2 >= k_lo; k -= 2) {
        const cplx b_below = ((double(m) * eg - c_coef * double(k) - d_coef) * b_cur -
                              g1 * std::sqrt(double(k + 1) * double(k + 2)) * b_above) /
                             (a_coef * std::sqrt(double(k) * double(k - 1)));
        b_above = b_cur;
        b_cur = b_below;
        const double mag = std::abs(b_cur);
        if (mag > 1e250) {
            b_above /= mag;
            b_cur /= mag;
            for (auto& b : back)
                b /= mag;
        }
        back[std::size_t((k - 2 - k_lo) / 2)] = b_cur;
    }

    // Unit scale at the window keeps the quadratic forms below out of the
    // subnormal range the raw seed scale would push them into.
    double window_peak = 0.0;
    for (int k = k_lo; k <= armed_k; k += 2)
        window_peak = std::max(window_peak, std::abs(back[std::size_t((k - k_lo) / 2)]));
    if (window_peak == 0.0)
        return out;
    for (auto& b : back)
        b /= window_peak;

    cplx num{0.0, 0.0};
    double den = 0.0;
    for (int k = k_lo; k <= armed_k; k += 2) {
        const cplx f = out[std::size_t(k)];
        const cplx b = back[std::size_t((k - k_lo) / 2)];
        if (f == cplx{0.0, 0.0} || b == cplx{0.0, 0.0})
            continue;
        num += f * std::conj(b);
        den += std::norm(b);
    }
    if (den == 0.0)
        return out;

    const cplx ratio = num / den;

    // Forward contamination grows smoothly toward the arming column, so the
    // splice reaches back to the first window column where the forward value
    // visibly departs from the backward continuation.
    int splice_from = armed_k + 2;
    for (int k = k_lo + 2; k <= armed_k; k += 2) {
        const cplx f = out[std::size_t(k)];
        const cplx v = back[std::size_t((k - k_lo) / 2)] * ratio;
        if (std::abs(f - v) > 1e-12 * std::abs(f)) {
            splice_from = k;
            break;
        }
    }
    for (int k = splice_from; k <= k_hi; k += 2) {
        const cplx v = back[std::size_t((k - k_lo) / 2)] * ratio;
        out[std::size_t(k)] = (std::abs(v) < 1e-320) ? cplx{0.0, 0.0} : v;
    }
    if (k_hi + 1 <= k_max)
        std::fill(out.begin() + std::size_t(k_hi) + 1, out.end(), cplx{0.0, 0.0});
    return out;
}

cplx squeeze_element(int m, int k, cplx g1, cplx g0, const LogFactorialTable& table)
{
    if (m < 0 || k < 0)
        throw invalid_parameter("squeeze element indices must be >= 0, got m = " +
                                std::to_string(m) + ", k = " + std::to_string(k));
    if (!same_parity(m, k))
        return {0.0, 0.0};

    if (g1 == cplx{0.0, 0.0}) {
        // Pure number-operator phase: only exp(g0*K0) survives.
        if (m != k)
            return {0.0, 0.0};
        return std::exp(g0 * (0.5 * double(m) + 0.25));
    }

    return squeeze_row(m, k, g1, g0, table)[std::size_t(k)];
}

} // namespace zigzag
