#include "zigzag/special_functions.hpp"
#include "zigzag/errors.hpp"

#include <cmath>
#include <string>

namespace zigzag {

LogFactorialTable::LogFactorialTable(std::size_t n_max)
    : values_(n_max + 1)
{
    values_[0] = 0.0L;
    for (std::size_t n = 1; n <= n_max; ++n)
        values_[n] = std::lgammal(static_cast<long double>(n) + 1.0L);
}

double LogFactorialTable::operator[](std::size_t n) const
{
    return static_cast<double>(extended(n));
}

long double LogFactorialTable::extended(std::size_t n) const
{
    if (n >= values_.size())
        throw resource_error("ln-factorial table holds indices up to " +
                             std::to_string(values_.size() - 1) + ", requested " +
                             std::to_string(n));
    return values_[n];
}

double LogFactorialTable::sqrt_ratio_factorials(std::size_t a, std::size_t b) const
{
    const long double half_diff = (extended(a) - extended(b)) / 2.0L;
    return static_cast<double>(std::exp(half_diff));
}

const LogFactorialTable& default_log_factorials()
{
    static const LogFactorialTable table(4200);
    return table;
}

double assoc_laguerre(int n, int k, double x)
{
    if (n < 0)
        throw invalid_parameter("Laguerre degree must be >= 0, got " + std::to_string(n));
    if (n + k < 0)
        throw invalid_parameter("Laguerre order must satisfy n + k >= 0, got n = " +
                                std::to_string(n) + ", k = " + std::to_string(k));

    if (n == 0)
        return 1.0;
    double lm1 = 1.0;
    double l = 1.0 + double(k) - x;
    for (int j = 2; j <= n; ++j) {
        const double next = ((double(2 * j - 1 + k) - x) * l - double(j - 1 + k) * lm1) / double(j);
        lm1 = l;
        l = next;
    }
    return l;
}

int unit_step(int x)
{
    return x >= 0 ? 1 : 0;
}

int same_parity(int m, int k)
{
    return ((m ^ k) & 1) == 0 ? 1 : 0;
}

} // namespace zigzag
