#include "zigzag/config.hpp"
#include "zigzag/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>

namespace zigzag {

namespace {

using nlohmann::json;

std::string canonical(std::string key)
{
    std::replace(key.begin(), key.end(), '_', '-');
    return key;
}

double as_number(const json& v, const std::string& key)
{
    if (!v.is_number())
        throw invalid_parameter("config key '" + key + "' must be a number");
    return v.get<double>();
}

int as_integer(const json& v, const std::string& key)
{
    const double d = as_number(v, key);
    if (d != std::floor(d))
        throw invalid_parameter("config key '" + key + "' must be an integer");
    return int(d);
}

RunConfig from_json(const json& doc)
{
    if (!doc.is_object())
        throw invalid_parameter("config must be a flat JSON object");

    RunConfig cfg;
    for (const auto& [raw_key, value] : doc.items()) {
        const std::string key = canonical(raw_key);
        if (key == "lambda")
            cfg.params.lambda = as_number(value, key);
        else if (key == "alpha1")
            cfg.params.alpha1 = as_number(value, key);
        else if (key == "alpha2")
            cfg.params.alpha2 = as_number(value, key);
        else if (key == "n0")
            cfg.params.n0 = as_integer(value, key);
        else if (key == "n-sites")
            cfg.params.n_sites = as_integer(value, key);
        else if (key == "z-max")
            cfg.z_max = as_number(value, key);
        else if (key == "z-steps")
            cfg.z_steps = as_integer(value, key);
        else if (key == "tol")
            cfg.tol = as_number(value, key);
        else if (key == "out") {
            if (!value.is_string())
                throw invalid_parameter("config key 'out' must be a string");
            cfg.out_dir = value.get<std::string>();
        } else if (key == "rel-tol")
            cfg.integrator.rel_tol = as_number(value, key);
        else if (key == "abs-tol")
            cfg.integrator.abs_tol = as_number(value, key);
        else if (key == "alpha1-values") {
            if (!value.is_array())
                throw invalid_parameter("config key 'alpha1-values' must be an array");
            cfg.alpha1_values.clear();
            for (const auto& item : value)
                cfg.alpha1_values.push_back(as_number(item, key));
        } else if (key == "plot") {
            if (!value.is_boolean())
                throw invalid_parameter("config key 'plot' must be a boolean");
            cfg.plot = value.get<bool>();
        } else {
            throw invalid_parameter("unknown config key '" + raw_key + "'");
        }
    }
    return cfg;
}

} // namespace

RunConfig parse_config(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw invalid_parameter(std::string("config is not valid JSON: ") + e.what());
    }
    return from_json(doc);
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw resource_error("cannot open config file " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return parse_config(text);
    } catch (const invalid_parameter& e) {
        throw invalid_parameter(path + ": " + e.what());
    }
}

} // namespace zigzag
