#include "zigzag/lattice.hpp"
#include "zigzag/errors.hpp"

#include <cmath>
#include <string>

namespace zigzag {

void validate(const LatticeParams& p)
{
    if (!std::isfinite(p.lambda) || !std::isfinite(p.alpha1) || !std::isfinite(p.alpha2))
        throw invalid_parameter("lattice parameters must be finite");
    if (p.lambda < 0.0)
        throw invalid_parameter("lambda must be >= 0, got " + std::to_string(p.lambda));
    if (p.n_sites < 1)
        throw invalid_parameter("n_sites must be >= 1, got " + std::to_string(p.n_sites));
    if (p.n0 < 0 || p.n0 >= p.n_sites)
        throw invalid_parameter("n0 must lie in [0, n_sites), got n0 = " +
                                std::to_string(p.n0) + " with n_sites = " +
                                std::to_string(p.n_sites));

    // The displaced frame divides by lambda + 2*alpha2, but it is only ever
    // constructed when the two-photon coupling participates; alpha2 = 0 with
    // lambda = 0 is the ordinary ungraded first-neighbour array.
    const double frame_denom = p.lambda + 2.0 * p.alpha2;
    const double scale = std::max({1.0, p.lambda, std::abs(2.0 * p.alpha2)});
    if (p.alpha1 != 0.0 && p.alpha2 != 0.0 &&
        std::abs(frame_denom) <= regime_tolerance * scale)
        throw out_of_scope("lambda + 2*alpha2 = 0 with alpha1 != 0: the displaced "
                           "frame is singular; this degenerate-gradient case is "
                           "not modeled");
}

std::pair<double, double> to_dimensionless(const PhysicalLattice& lat, double z)
{
    if (!(lat.C > 0.0))
        throw invalid_parameter("coupling scale C must be > 0, got " + std::to_string(lat.C));
    if (!(lat.kappa > 0.0))
        throw invalid_parameter("decay length kappa must be > 0, got " + std::to_string(lat.kappa));
    return {lat.alpha0 / lat.C, lat.C * z};
}

std::pair<double, double> coupling_profile(const PhysicalLattice& lat, int n)
{
    if (!(lat.C > 0.0))
        throw invalid_parameter("coupling scale C must be > 0, got " + std::to_string(lat.C));
    if (!(lat.kappa > 0.0))
        throw invalid_parameter("decay length kappa must be > 0, got " + std::to_string(lat.kappa));
    if (n < 0)
        throw invalid_parameter("site index must be >= 0, got " + std::to_string(n));

    // d(n) = d_ref - (kappa/2) * ln(arg) substituted into C * exp(-(d - d_ref)/kappa)
    // collapses to C * sqrt(arg); the sqrt form is exact, the exponential form is
    // what the tests cross-check against.
    const double c1 = (n >= 1) ? lat.C * std::sqrt(double(n)) : 0.0;
    const double c2 = (n >= 2) ? lat.C * std::sqrt(double(n) * double(n - 1)) : 0.0;
    return {c1, c2};
}

Regime classify_regime(const LatticeParams& p)
{
    validate(p);
    const double disc = 4.0 * p.alpha2 * p.alpha2 - p.lambda * p.lambda;
    const double scale = std::max({1.0, 4.0 * p.alpha2 * p.alpha2, p.lambda * p.lambda});

    Regime r;
    if (std::abs(disc) <= regime_tolerance * scale) {
        r.kind = RegimeKind::Critical;
        r.gamma = {0.0, 0.0};
    } else if (disc > 0.0) {
        r.kind = RegimeKind::Hyperbolic;
        r.gamma = {std::sqrt(disc), 0.0};
    } else {
        r.kind = RegimeKind::Trigonometric;
        r.gamma = {0.0, std::sqrt(-disc)};
    }
    return r;
}

} // namespace zigzag
