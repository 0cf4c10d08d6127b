#include "zigzag/scalars.hpp"
#include "zigzag/errors.hpp"

#include <cmath>
#include <numbers>
#include <tuple>

namespace zigzag {

namespace {

constexpr double pi = std::numbers::pi;

// Largest |gamma|*Z for which the hyperbolic branch stays inside double range.
constexpr double max_hyperbolic_arg = 700.0;

double ln_cosh(double x)
{
    const double ax = std::abs(x);
    return ax + std::log1p(std::exp(-2.0 * ax)) - std::numbers::ln2;
}

// Continuous argument of w(Z) = cos(u) - i*(lambda/g)*sin(u), u = g*Z, the
// trigonometric-regime squeeze denominator.  w traces a clockwise ellipse
// around the origin (d arg/dZ = -lambda/|w|^2), so the principal argument
// must be extended by the accumulated winding.  k = round(u/pi) counts the
// half-turns and the residual angle stays in a single branch of tan.
double winding_argument(double u, double ratio)
{
    const double k = std::round(u / pi);
    const double v = u - k * pi;
    return -(k * pi + std::atan(ratio * std::tan(v)));
}

struct FrameInputs {
    double lambda;
    double a1;
    double a2;
    double denom; // lambda + 2*alpha2
};

FrameInputs frame_inputs(const LatticeParams& p)
{
    validate(p);
    return {p.lambda, p.alpha1, p.alpha2, p.lambda + 2.0 * p.alpha2};
}

void require_noncritical(const Regime& r, const char* fn)
{
    if (r.kind == RegimeKind::Critical)
        throw dispatch_error(std::string(fn) +
                             " is undefined in the critical regime; use the "
                             "critical-limit form (scalar_frame dispatches "
                             "automatically)");
}

} // namespace

cplx eval_eta(const LatticeParams& p, double Z)
{
    const auto in = frame_inputs(p);
    const Regime r = classify_regime(p);
    require_noncritical(r, "eval_eta");

    if (r.kind == RegimeKind::Hyperbolic) {
        const double g = r.gamma.real();
        if (std::abs(g * Z) > max_hyperbolic_arg)
            throw singular_point("hyperbolic evolution exceeds double range", Z);
        const double half = std::sinh(0.5 * g * Z);
        return {in.a1 * 2.0 * half * half / in.denom, -in.a1 * std::sinh(g * Z) / g};
    }
    const double g = r.gamma.imag();
    const double half = std::sin(0.5 * g * Z);
    return {-in.a1 * 2.0 * half * half / in.denom, -in.a1 * std::sin(g * Z) / g};
}

cplx eval_eta_critical(const LatticeParams& p, double Z)
{
    const auto in = frame_inputs(p);
    const Regime r = classify_regime(p);
    if (r.kind != RegimeKind::Critical)
        throw dispatch_error("eval_eta_critical applies only on the critical "
                             "manifold 4*alpha2^2 = lambda^2");
    return {0.0, -in.a1 * Z};
}

cplx eval_nu(const LatticeParams& p, double Z)
{
    const auto in = frame_inputs(p);
    const Regime r = classify_regime(p);
    require_noncritical(r, "eval_nu");

    const double drift = (2.0 * in.a1 * in.a1 + in.lambda * in.denom) / in.denom;
    double oscillating;
    if (r.kind == RegimeKind::Hyperbolic) {
        const double g = r.gamma.real();
        if (std::abs(g * Z) > max_hyperbolic_arg)
            throw singular_point("hyperbolic evolution exceeds double range", Z);
        oscillating = std::sinh(g * Z) / g;
    } else {
        const double g = r.gamma.imag();
        oscillating = std::sin(g * Z) / g;
    }
    // Purely imaginary by construction: the closed-form evolution is unitary
    // and the whole norm bookkeeping sits in the displacement elements.
    return {0.0, drift * Z - 2.0 * in.a1 * in.a1 * oscillating / in.denom};
}

std::pair<cplx, cplx> eval_g1_g0(const LatticeParams& p, double Z)
{
    const auto in = frame_inputs(p);
    const Regime r = classify_regime(p);
    require_noncritical(r, "eval_g1_g0");

    const cplx i_unit{0.0, 1.0};
    cplx g1, ln_w;
    if (r.kind == RegimeKind::Hyperbolic) {
        const double g = r.gamma.real();
        if (std::abs(g * Z) > max_hyperbolic_arg)
            throw singular_point("hyperbolic evolution exceeds double range", Z);
        const double t = std::tanh(g * Z);
        const cplx denom = cplx{g, 0.0} - i_unit * (in.lambda * t);
        if (std::abs(denom) == 0.0)
            throw singular_point("squeeze denominator vanished", Z);
        g1 = 2.0 * in.a2 * t * i_unit / denom;
        ln_w = cplx{ln_cosh(g * Z), 0.0} + std::log(cplx{1.0, -in.lambda * t / g});
    } else {
        const double g = r.gamma.imag();
        const double u = g * Z;
        const double s = std::sin(u);
        const double c = std::cos(u);
        const cplx denom{in.lambda * s, g * c};
        if (std::abs(denom) == 0.0)
            throw singular_point("squeeze denominator vanished", Z);
        g1 = -2.0 * in.a2 * s / denom;
        const double mag = std::hypot(c, in.lambda * s / g);
        ln_w = cplx{std::log(mag), winding_argument(u, in.lambda / g)};
    }
    return {g1, -2.0 * ln_w};
}

ScalarFrame scalar_frame(const LatticeParams& p, double Z)
{
    const auto in = frame_inputs(p);
    const Regime r = classify_regime(p);

    ScalarFrame fr;
    fr.gamma = r.gamma;
    fr.beta = (in.a1 == 0.0) ? 0.0 : in.a1 / in.denom;

    if (r.kind == RegimeKind::Critical) {
        fr.eta = eval_eta_critical(p, Z);
        fr.nu = {0.0, in.lambda * Z};
        const cplx w{1.0, -in.lambda * Z};
        fr.g1 = cplx{0.0, 2.0 * in.a2 * Z} / w;
        fr.g0 = -2.0 * std::log(w);
    } else {
        fr.eta = eval_eta(p, Z);
        fr.nu = eval_nu(p, Z);
        std::tie(fr.g1, fr.g0) = eval_g1_g0(p, Z);
    }

    if (!std::isfinite(fr.eta.real()) || !std::isfinite(fr.eta.imag()) ||
        !std::isfinite(fr.nu.imag()) || !std::isfinite(fr.g1.real()) ||
        !std::isfinite(fr.g1.imag()) || !std::isfinite(fr.g0.real()) ||
        !std::isfinite(fr.g0.imag()))
        throw singular_point("frame scalars left the representable range", Z);
    return fr;
}

DisentangleFns disentangle(double chi, double eta_rate, double Z)
{
    if (!std::isfinite(chi) || !std::isfinite(eta_rate) || !std::isfinite(Z))
        throw invalid_parameter("disentangle arguments must be finite");

    const cplx i_unit{0.0, 1.0};
    const double tol = 1e-12 * std::max(1.0, std::abs(chi));
    DisentangleFns out;

    if (std::abs(chi - 2.0) <= tol || std::abs(chi + 2.0) <= tol) {
        const double sign = chi > 0.0 ? 1.0 : -1.0;
        const double ez = eta_rate * Z;
        const cplx denom{1.0, -sign * ez};
        if (std::abs(denom) == 0.0)
            throw singular_point("degenerate disentangling branch singular", Z);
        out.f = ez / denom;
        out.g = sign * pi + 2.0 * i_unit * std::log(cplx{ez, sign});
        out.h = out.f;
        return out;
    }

    const cplx s = std::sqrt(cplx{chi * chi - 4.0, 0.0});
    const cplx theta = 0.5 * eta_rate * Z * s;
    const cplx st = std::sin(theta);
    const cplx ct = std::cos(theta);
    const cplx denom = chi * st + i_unit * s * ct;
    if (std::abs(denom) == 0.0)
        throw singular_point("disentangling denominator vanished", Z);
    out.f = 2.0 * i_unit * st / denom;
    out.g = 2.0 * i_unit * std::log(ct - i_unit * (chi / s) * st);
    out.h = out.f;

    if (!std::isfinite(out.f.real()) || !std::isfinite(out.f.imag()) ||
        !std::isfinite(out.g.real()) || !std::isfinite(out.g.imag()))
        throw singular_point("disentangling functions left the representable range", Z);
    return out;
}

} // namespace zigzag
