#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zigzag/errors.hpp"
#include "zigzag/lattice.hpp"
#include "zigzag/scalars.hpp"

#include <cmath>
#include <complex>
#include <vector>

using namespace zigzag;

namespace {

LatticeParams params(double lambda, double alpha1, double alpha2)
{
    return {.lambda = lambda, .alpha1 = alpha1, .alpha2 = alpha2, .n0 = 0, .n_sites = 8};
}

// Independent continuous-argument tracker: walks w(Z) in steps small enough
// that consecutive samples never jump by more than a quarter turn, summing the
// principal argument increments.  The closed-form winding count must agree.
double walked_argument(const LatticeParams& p, double Z)
{
    const double gi = classify_regime(p).gamma.imag();
    REQUIRE(gi > 0.0);
    const auto w_at = [&](double z) {
        return cplx{std::cos(gi * z), -(p.lambda / gi) * std::sin(gi * z)};
    };
    const int steps = int(std::ceil(Z / 0.05)) + 1;
    double theta = 0.0;
    cplx prev = w_at(0.0);
    for (int j = 1; j <= steps; ++j) {
        const cplx cur = w_at(Z * double(j) / double(steps));
        theta += std::arg(cur / prev);
        prev = cur;
    }
    return theta;
}

double field_gap(cplx got, cplx want) { return std::abs(got - want); }

} // namespace

TEST_CASE("unwrapped winding matches a walking argument tracker")
{
    for (const auto& [l, a2] : std::vector<std::pair<double, double>>{
             {2.0, 0.5}, {3.0, 0.2}, {1.1, 0.3}, {2.4, -0.9}}) {
        const LatticeParams p = params(l, 0.4, a2);
        for (double Z : {0.3, 1.7, 5.0, 13.4, 40.0}) {
            const cplx g0 = eval_g1_g0(p, Z).second;
            // g0 = -2 ln w, so the unwrapped argument of w is -Im(g0)/2.
            CHECK(std::abs(-0.5 * g0.imag() - walked_argument(p, Z)) < 1e-9);
        }
    }
}

TEST_CASE("pure gradient collapses the squeeze pair to a number phase")
{
    // alpha2 = 0 gives w = exp(-i*lambda*Z): no squeeze, linear winding.
    const LatticeParams p = params(1.5, 0.7, 0.0);
    for (double Z : {0.4, 2.9, 11.0}) {
        const auto [g1, g0] = eval_g1_g0(p, Z);
        CHECK(std::abs(g1) == 0.0);
        CHECK(std::abs(g0.real()) < 1e-12);
        CHECK(g0.imag() == doctest::Approx(2.0 * 1.5 * Z).epsilon(1e-12));
    }
}

TEST_CASE("short-distance expansions anchor every frame scalar")
{
    const double a1 = 0.7;
    for (const auto& [l, a2] : std::vector<std::pair<double, double>>{
             {0.8, 0.9}, {2.0, 0.5}, {0.3, -0.8}}) {
        const LatticeParams p = params(l, a1, a2);
        const double g2 = 4.0 * a2 * a2 - l * l; // signed gamma^2
        for (double Z : {1e-3, 5e-3}) {
            const ScalarFrame fr = scalar_frame(p, Z);

            const cplx eta_ref{a1 * (2.0 * a2 - l) * Z * Z / 2.0,
                               -a1 * (Z + g2 * Z * Z * Z / 6.0)};
            CHECK(field_gap(fr.eta, eta_ref) <= 20.0 * std::abs(a1) * (1.0 + g2 * g2) * std::pow(Z, 4));

            const cplx nu_ref{0.0, l * Z - a1 * a1 * (2.0 * a2 - l) * Z * Z * Z / 3.0};
            CHECK(field_gap(fr.nu, nu_ref) <=
                  40.0 * a1 * a1 * (1.0 + std::abs(g2)) * std::pow(Z, 5) + 1e-18);

            const double poly = std::pow(1.0 + l + std::sqrt(std::abs(g2)), 3);
            const cplx g1_ref{-2.0 * a2 * l * Z * Z, 2.0 * a2 * Z};
            CHECK(field_gap(fr.g1, g1_ref) <= 40.0 * poly * Z * Z * Z);

            const cplx g0_ref{-4.0 * a2 * a2 * Z * Z, 2.0 * l * Z};
            CHECK(field_gap(fr.g0, g0_ref) <= 60.0 * poly * Z * Z * Z);
        }
    }
}

TEST_CASE("global phase exponent is purely imaginary for real couplings")
{
    for (const auto& [l, a2] : std::vector<std::pair<double, double>>{
             {0.8, 0.9}, {2.0, 0.5}, {1.0, 0.5}, {0.0, 0.6}}) {
        const LatticeParams p = params(l, 0.9, a2);
        for (double Z : {0.2, 1.3, 2.8})
            CHECK(std::abs(scalar_frame(p, Z).nu.real()) <= 1e-15);
    }
}

TEST_CASE("critical branch is the two-sided limit of the general one")
{
    const double eps = 1e-9;
    const LatticeParams pc = params(1.0, 0.6, 0.5);
    const LatticeParams pp = params(1.0, 0.6, 0.5 * (1.0 + eps)); // hyperbolic side
    const LatticeParams pm = params(1.0, 0.6, 0.5 * (1.0 - eps)); // trigonometric side
    REQUIRE(classify_regime(pc).kind == RegimeKind::Critical);
    REQUIRE(classify_regime(pp).kind == RegimeKind::Hyperbolic);
    REQUIRE(classify_regime(pm).kind == RegimeKind::Trigonometric);

    for (double Z : {0.4, 1.7, 3.1}) {
        const ScalarFrame fc = scalar_frame(pc, Z);
        const ScalarFrame fp = scalar_frame(pp, Z);
        const ScalarFrame fm = scalar_frame(pm, Z);

        const auto fields = [](const ScalarFrame& f) {
            return std::vector<cplx>{f.eta, f.nu, f.g1, f.g0};
        };
        const auto c = fields(fc);
        const auto hi = fields(fp);
        const auto lo = fields(fm);
        for (std::size_t j = 0; j < c.size(); ++j) {
            const double scale = 1.0 + std::abs(c[j]);
            // Each side sits O(eps) from the limit ...
            CHECK(std::abs(hi[j] - c[j]) <= 1e-6 * scale);
            CHECK(std::abs(lo[j] - c[j]) <= 1e-6 * scale);
            // ... and the symmetrized residual cancels to O(eps^2), which only
            // happens if the critical branch is the true limit, not merely close.
            CHECK(std::abs(hi[j] + lo[j] - 2.0 * c[j]) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("critical displacement is exactly linear in Z")
{
    const LatticeParams pc = params(1.2, 0.8, 0.6);
    for (double Z : {0.1, 2.2}) {
        const cplx eta = eval_eta_critical(pc, Z);
        CHECK(eta.real() == 0.0);
        CHECK(eta.imag() == doctest::Approx(-0.8 * Z).epsilon(1e-15));
    }
    CHECK_THROWS_AS(eval_eta_critical(params(2.0, 0.8, 0.5), 1.0), dispatch_error);
}

TEST_CASE("noncritical evaluators refuse the critical manifold")
{
    const LatticeParams pc = params(1.0, 0.4, 0.5);
    CHECK_THROWS_AS(eval_eta(pc, 1.0), dispatch_error);
    CHECK_THROWS_AS(eval_nu(pc, 1.0), dispatch_error);
    CHECK_THROWS_AS(eval_g1_g0(pc, 1.0), dispatch_error);
    // The dispatching frame accepts it.
    CHECK_NOTHROW(scalar_frame(pc, 1.0));
}

TEST_CASE("disentangling functions reproduce the squeeze pair")
{
    // The same ladder evolution solved through the generic chi-parameterized
    // route must match the lattice-specific scalars: g1 = i*f and
    // exp(g0) = exp(i*g).
    for (const auto& [l, a2, Z] : std::vector<std::tuple<double, double, double>>{
             {2.0, 0.5, 0.9}, {0.8, 0.9, 1.3}, {0.0, 0.7, 0.6}, {1.4, -0.6, 1.1}, {3.0, 0.4, 2.2}}) {
        const LatticeParams p = params(l, 0.0, a2);
        const auto [g1, g0] = eval_g1_g0(p, Z);
        const DisentangleFns fns = disentangle(l / a2, 2.0 * a2, Z);

        CHECK(std::abs(cplx{0.0, 1.0} * fns.f - g1) <= 1e-11 * (1.0 + std::abs(g1)));
        const cplx lhs = std::exp(cplx{0.0, 1.0} * fns.g);
        const cplx rhs = std::exp(g0);
        CHECK(std::abs(lhs - rhs) <= 1e-11 * std::abs(rhs));
        CHECK(fns.h == fns.f);
    }
}

TEST_CASE("disentangling functions satisfy their defining flow equation")
{
    // df/dZ = rate * (1 + i*chi*f - f^2), checked with central differences on
    // both degenerate branches and a generic chi.
    const double h = 1e-5;
    for (const auto& [chi, rate] : std::vector<std::pair<double, double>>{
             {2.0, 0.8}, {-2.0, 0.6}, {3.5, 0.6}, {0.7, -0.9}}) {
        for (double Z : {0.3, 0.9, 1.7}) {
            const cplx fp = disentangle(chi, rate, Z + h).f;
            const cplx fm = disentangle(chi, rate, Z - h).f;
            const cplx f = disentangle(chi, rate, Z).f;
            const cplx derivative = (fp - fm) / (2.0 * h);
            const cplx flow = rate * (1.0 + cplx{0.0, chi} * f - f * f);
            CHECK(std::abs(derivative - flow) < 1e-8);
        }
    }
}

TEST_CASE("degenerate disentangling branch joins the general one continuously")
{
    for (double sign : {1.0, -1.0}) {
        const cplx f_deg = disentangle(sign * 2.0 * (1.0 + 1e-13), 0.8, 1.1).f;
        const cplx f_gen = disentangle(sign * 2.0 * (1.0 + 1e-9), 0.8, 1.1).f;
        CHECK(std::abs(f_deg - f_gen) < 1e-7);
    }
}

TEST_CASE("runaway hyperbolic growth raises a located singularity")
{
    const LatticeParams p = params(0.2, 0.5, 0.9); // gamma = sqrt(3.2)
    CHECK_NOTHROW(scalar_frame(p, 390.0));
    CHECK_THROWS_AS(scalar_frame(p, 392.0), singular_point);
    try {
        scalar_frame(p, 392.0);
    } catch (const singular_point& e) {
        CHECK(e.z() == doctest::Approx(392.0));
    }
}
