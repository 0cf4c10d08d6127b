#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zigzag/errors.hpp"
#include "zigzag/special_functions.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>

using namespace zigzag;

namespace {

// Walks from a toward b one representable double at a time; the step count is
// the ulp distance (capped, since a genuine mismatch would walk forever).
int ulps_apart(double a, double b)
{
    int n = 0;
    while (a != b && n < 64) {
        a = std::nextafter(a, b);
        ++n;
    }
    return n;
}

std::int64_t exact_binomial(std::int64_t n, std::int64_t k)
{
    if (k < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    std::int64_t acc = 1;
    for (std::int64_t j = 1; j <= k; ++j)
        acc = acc * (n - k + j) / j; // exact: the running product is C(n-k+j, j)
    return acc;
}

// Independent Laguerre oracle: the finite series
//   L_n^{(k)}(x) = sum_{j=0}^{n} (-1)^j C(n+k, n-j) x^j / j!
// evaluated in extended precision from exact integer binomials.  Returns the
// value and the sum of absolute terms, which sets the cancellation scale.
struct SeriesValue {
    double value;
    double scale;
};

SeriesValue laguerre_series(int n, int k, double x)
{
    long double acc = 0.0L;
    long double mag = 0.0L;
    long double xp = 1.0L; // x^j / j!
    for (int j = 0; j <= n; ++j) {
        const long double term = (j % 2 ? -1.0L : 1.0L) *
                                 static_cast<long double>(exact_binomial(n + k, n - j)) * xp;
        acc += term;
        mag += std::abs(term);
        xp *= static_cast<long double>(x) / static_cast<long double>(j + 1);
    }
    return {double(acc), double(mag)};
}

// Frozen references computed from exact integer factorials in unbounded
// arithmetic, rounded once to the nearest double.
constexpr double ln_fact_170 = 706.573062245787347110722262721298314676;
constexpr double ln_fact_300 = 1414.90584994506798854680849469202917651;
constexpr double ln_fact_4200 = 30845.0175562167408369616624352129824607;
constexpr double sqrt_ratio_170_5 = 2.45923694386897155272243361664430492053e+152;

} // namespace

TEST_CASE("log-factorial table matches exact integer factorials")
{
    const LogFactorialTable table(300);

    CHECK(table[0] == 0.0);
    CHECK(table[1] == 0.0);

    // Up to 20! the factorial is exactly representable in 64-bit integers, so
    // logl of the exact value is an independent reference.
    std::uint64_t fact = 1;
    for (std::size_t n = 2; n <= 20; ++n) {
        fact *= n;
        const double reference = double(std::log(static_cast<long double>(fact)));
        CHECK(ulps_apart(table[n], reference) <= 2);
    }

    CHECK(ulps_apart(table[170], ln_fact_170) <= 2);
    CHECK(ulps_apart(table[300], ln_fact_300) <= 2);
}

TEST_CASE("shared table covers the summation ceiling and guards its end")
{
    const LogFactorialTable& table = default_log_factorials();
    REQUIRE(table.n_max() >= 4200);
    CHECK(ulps_apart(table[4200], ln_fact_4200) <= 2);
    CHECK_THROWS_AS(table.extended(table.n_max() + 1), resource_error);
    CHECK_THROWS_AS((void)table[table.n_max() + 1], resource_error);
}

TEST_CASE("factorial square-root ratios survive ranges where the factorial overflows")
{
    const LogFactorialTable table(300);

    // 170! alone overflows double (ln = 706.6 > ln DBL_MAX = 709.8 / ... close
    // to the edge); the ratio against 5! is far past it, yet the extended
    // internal precision keeps the assembled result within a few ulps.
    CHECK(ulps_apart(table.sqrt_ratio_factorials(170, 5), sqrt_ratio_170_5) <= 8);

    CHECK(table.sqrt_ratio_factorials(37, 37) == 1.0);
    CHECK(ulps_apart(table.sqrt_ratio_factorials(171, 170), std::sqrt(171.0)) <= 4);
    CHECK(ulps_apart(table.sqrt_ratio_factorials(12, 7),
                     std::sqrt(8.0 * 9.0 * 10.0 * 11.0 * 12.0)) <= 4);
}

TEST_CASE("laguerre recurrence agrees with the exact binomial series")
{
    // Dyadic abscissae make the series terms exactly representable.
    const double xs[] = {0.0, 0.03125, 0.5, 1.0, 2.5, 7.25, 18.5};
    const int ks[] = {0, 1, 2, 5, 8};
    for (int n : {0, 1, 2, 3, 5, 8, 12, 20, 25})
        for (int k : ks)
            for (double x : xs) {
                const SeriesValue ref = laguerre_series(n, k, x);
                const double got = assoc_laguerre(n, k, x);
                CHECK(std::abs(got - ref.value) <= 1e-13 * (ref.scale + 1.0));
            }
}

TEST_CASE("laguerre pinned value")
{
    // L_4^{(2)}(1/2) = 2593/384, straight from the series.
    CHECK(assoc_laguerre(4, 2, 0.5) == doctest::Approx(6.752604166666667).epsilon(1e-14));
}

TEST_CASE("laguerre handles negative integer order")
{
    // For k = -q the leading q series terms drop out through vanishing
    // binomials; the oracle encodes that convention, the recurrence must too.
    for (double x : {0.25, 1.5, 4.0}) {
        const SeriesValue ref5 = laguerre_series(5, -2, x);
        CHECK(std::abs(assoc_laguerre(5, -2, x) - ref5.value) <= 1e-13 * (ref5.scale + 1.0));
        const SeriesValue ref7 = laguerre_series(7, -4, x);
        CHECK(std::abs(assoc_laguerre(7, -4, x) - ref7.value) <= 1e-13 * (ref7.scale + 1.0));
    }
}

TEST_CASE("laguerre tolerates heavy cancellation at large argument")
{
    const SeriesValue ref = laguerre_series(10, 0, 30.0);
    CHECK(std::abs(assoc_laguerre(10, 0, 30.0) - ref.value) <= 1e-12 * ref.scale);
}

TEST_CASE("step and parity helpers")
{
    CHECK(unit_step(-3) == 0);
    CHECK(unit_step(-1) == 0);
    CHECK(unit_step(0) == 1);
    CHECK(unit_step(7) == 1);

    CHECK(same_parity(2, 4) == 1);
    CHECK(same_parity(3, 3) == 1);
    CHECK(same_parity(0, 0) == 1);
    CHECK(same_parity(2, 3) == 0);
    CHECK(same_parity(5, 0) == 0);
}
