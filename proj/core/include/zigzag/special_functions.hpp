#pragma once

#include <cstddef>
#include <vector>

namespace zigzag {

// Table of ln(n!) kept in extended precision so that differences of entries
// (the only way the table is consumed) stay accurate after exponentiation.
class LogFactorialTable {
public:
    explicit LogFactorialTable(std::size_t n_max);

    std::size_t n_max() const noexcept { return values_.size() - 1; }

    // ln(n!) rounded to double.
    double operator[](std::size_t n) const;

    // ln(n!) at full internal precision.
    long double extended(std::size_t n) const;

    // sqrt(a! / b!) assembled as exp((ln a! - ln b!) / 2); accurate to a few
    // ulps even when a! alone would overflow.
    double sqrt_ratio_factorials(std::size_t a, std::size_t b) const;

private:
    std::vector<long double> values_;
};

// Shared table sized for the deepest index the amplitude sums can request
// (hard summation ceiling of 4 * n_sites with n_sites <= 1024).
const LogFactorialTable& default_log_factorials();

// Generalized Laguerre polynomial L_n^{(k)}(x) by the three-term recurrence
// in the degree.  Integer order k may be negative as long as n + k >= 0.
double assoc_laguerre(int n, int k, double x);

// 1 for x >= 0, else 0.
int unit_step(int x);

// 1 when m and k have equal parity, else 0.
int same_parity(int m, int k);

} // namespace zigzag
