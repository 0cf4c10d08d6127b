#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace zigzag {

// Dense record of |amplitude|^2 over a Z grid and a set of sites.  The site
// list is usually 0..n_sites-1 but may be any subset (single-site return
// intensity scans keep just one column).
struct IntensityMap {
    std::vector<double> z;      // row coordinates, strictly increasing
    std::vector<int> sites;     // column labels
    std::vector<double> values; // row-major, z.size() x sites.size()

    std::size_t rows() const noexcept { return z.size(); }
    std::size_t cols() const noexcept { return sites.size(); }
    double at(std::size_t r, std::size_t c) const { return values[r * sites.size() + c]; }
    std::span<const double> row(std::size_t r) const
    {
        return {values.data() + r * sites.size(), sites.size()};
    }
};

// Shape-checked elementwise comparison of two maps.
struct ComparisonReport {
    double max_abs_err = 0.0;
    double l2_err = 0.0;       // sqrt of the mean squared difference
    double worst_z = 0.0;
    int worst_site = 0;
    std::vector<double> row_max_err; // per-Z profile of the max difference
};

// Writes "Z,site_<s0>,site_<s1>,..." followed by one row per grid point, every
// number at full round-trip precision, through a temp file renamed into place.
void write_intensity_csv(const std::string& path, const IntensityMap& map);

IntensityMap read_intensity_csv(const std::string& path);

// Throws invalid_parameter when shapes or coordinates differ.
ComparisonReport compare_maps(const IntensityMap& a, const IntensityMap& b);

// Shared atomic text write (temp file in the same directory, then rename).
void write_text_atomic(const std::string& path, const std::string& content);

} // namespace zigzag
