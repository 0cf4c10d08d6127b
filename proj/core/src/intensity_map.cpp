#include "zigzag/intensity_map.hpp"
#include "zigzag/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

namespace zigzag {

namespace {

// %.17g survives a decimal round trip for every finite double.
std::string format_full(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void check_shape(const IntensityMap& map)
{
    if (map.values.size() != map.rows() * map.cols())
        throw invalid_parameter("intensity map payload does not match its grid shape");
    for (std::size_t r = 1; r < map.z.size(); ++r)
        if (!(map.z[r] > map.z[r - 1]))
            throw invalid_parameter("intensity map Z grid must be strictly increasing");
}

} // namespace

void write_text_atomic(const std::string& path, const std::string& content)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");

    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw resource_error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out)
            throw resource_error("short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec)
        throw resource_error("cannot move " + tmp.string() + " into place: " + ec.message());
}

void write_intensity_csv(const std::string& path, const IntensityMap& map)
{
    check_shape(map);

    std::ostringstream out;
    out << "Z";
    for (int s : map.sites)
        out << ",site_" << s;
    out << '\n';
    for (std::size_t r = 0; r < map.rows(); ++r) {
        out << format_full(map.z[r]);
        for (std::size_t c = 0; c < map.cols(); ++c)
            out << ',' << format_full(map.at(r, c));
        out << '\n';
    }
    write_text_atomic(path, out.str());
}

IntensityMap read_intensity_csv(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw resource_error("cannot open " + path);

    std::string line;
    if (!std::getline(in, line))
        throw invalid_parameter(path + ": empty intensity file");

    IntensityMap map;
    {
        std::istringstream header(line);
        std::string field;
        if (!std::getline(header, field, ',') || field != "Z")
            throw invalid_parameter(path + ": first header field must be Z");
        while (std::getline(header, field, ',')) {
            if (field.rfind("site_", 0) != 0)
                throw invalid_parameter(path + ": bad column label '" + field + "'");
            map.sites.push_back(std::stoi(field.substr(5)));
        }
    }
    if (map.sites.empty())
        throw invalid_parameter(path + ": no site columns");

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::istringstream row(line);
        std::string field;
        std::size_t col = 0;
        while (std::getline(row, field, ',')) {
            char* end = nullptr;
            const double v = std::strtod(field.c_str(), &end);
            // isfinite rejects overflow; subnormal underflow is legitimate data.
            if (end == field.c_str() || !std::isfinite(v))
                throw invalid_parameter(path + ": bad number '" + field + "' at line " +
                                        std::to_string(line_no));
            if (col == 0)
                map.z.push_back(v);
            else
                map.values.push_back(v);
            ++col;
        }
        if (col != map.sites.size() + 1)
            throw invalid_parameter(path + ": row at line " + std::to_string(line_no) +
                                    " has " + std::to_string(col) + " fields, expected " +
                                    std::to_string(map.sites.size() + 1));
    }
    check_shape(map);
    return map;
}

ComparisonReport compare_maps(const IntensityMap& a, const IntensityMap& b)
{
    check_shape(a);
    check_shape(b);
    if (a.rows() != b.rows() || a.sites != b.sites)
        throw invalid_parameter("intensity maps have different shapes or site sets");
    for (std::size_t r = 0; r < a.rows(); ++r)
        if (a.z[r] != b.z[r])
            throw invalid_parameter("intensity maps sample different Z grids");

    ComparisonReport rep;
    rep.row_max_err.assign(a.rows(), 0.0);
    double sum_sq = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            const double d = std::abs(a.at(r, c) - b.at(r, c));
            sum_sq += d * d;
            rep.row_max_err[r] = std::max(rep.row_max_err[r], d);
            if (d > rep.max_abs_err) {
                rep.max_abs_err = d;
                rep.worst_z = a.z[r];
                rep.worst_site = a.sites[c];
            }
        }
    }
    const std::size_t n = a.rows() * a.cols();
    rep.l2_err = n ? std::sqrt(sum_sq / double(n)) : 0.0;
    return rep;
}

} // namespace zigzag
