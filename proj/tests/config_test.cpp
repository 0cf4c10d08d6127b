#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "zigzag/config.hpp"
#include "zigzag/errors.hpp"

#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

using namespace zigzag;

TEST_CASE("full document sets every key")
{
    const RunConfig cfg = parse_config(R"({
        "lambda": 2.0,
        "alpha1": 0.1,
        "alpha2": 0.5,
        "n0": 10,
        "n-sites": 200,
        "z-max": 3.0,
        "z-steps": 600,
        "tol": 1e-6,
        "out": "results",
        "rel-tol": 1e-9,
        "abs-tol": 1e-11,
        "alpha1-values": [0.1, 1.0, 4.0, 8.0],
        "plot": true
    })");

    CHECK(cfg.params.lambda == 2.0);
    CHECK(cfg.params.alpha1 == 0.1);
    CHECK(cfg.params.alpha2 == 0.5);
    CHECK(cfg.params.n0 == 10);
    CHECK(cfg.params.n_sites == 200);
    CHECK(cfg.z_max == 3.0);
    CHECK(cfg.z_steps == 600);
    CHECK(cfg.tol == 1e-6);
    CHECK(cfg.out_dir == "results");
    CHECK(cfg.integrator.rel_tol == 1e-9);
    CHECK(cfg.integrator.abs_tol == 1e-11);
    REQUIRE(cfg.alpha1_values.size() == 4);
    CHECK(cfg.alpha1_values[2] == 4.0);
    CHECK(cfg.plot);
}

TEST_CASE("unset keys keep their defaults")
{
    const RunConfig base;
    const RunConfig cfg = parse_config(R"({"lambda": 1.5})");
    CHECK(cfg.params.lambda == 1.5);
    CHECK(cfg.params.alpha1 == base.params.alpha1);
    CHECK(cfg.params.alpha2 == base.params.alpha2);
    CHECK(cfg.params.n0 == base.params.n0);
    CHECK(cfg.params.n_sites == base.params.n_sites);
    CHECK(cfg.z_max == base.z_max);
    CHECK(cfg.z_steps == base.z_steps);
    CHECK(cfg.tol == base.tol);
    CHECK(cfg.out_dir == base.out_dir);
    CHECK(cfg.integrator.rel_tol == base.integrator.rel_tol);
    CHECK(cfg.integrator.abs_tol == base.integrator.abs_tol);
    CHECK(cfg.alpha1_values.empty());
    CHECK(cfg.plot == base.plot);
}

TEST_CASE("underscore and dash spellings are interchangeable")
{
    const RunConfig a = parse_config(R"({"z_max": 5.5, "n_sites": 64})");
    CHECK(a.z_max == 5.5);
    CHECK(a.params.n_sites == 64);

    const RunConfig b = parse_config(R"({"alpha1_values": [0.25]})");
    REQUIRE(b.alpha1_values.size() == 1);
    CHECK(b.alpha1_values[0] == 0.25);
}

TEST_CASE("unknown keys are named in the diagnostic")
{
    try {
        parse_config(R"({"lamda": 1.0})");
        FAIL("expected invalid_parameter");
    } catch (const invalid_parameter& e) {
        CHECK(std::string(e.what()).find("lamda") != std::string::npos);
    }
}

TEST_CASE("type mismatches are named in the diagnostic")
{
    const auto expect_mention = [](const std::string& text, const std::string& key) {
        try {
            parse_config(text);
            FAIL("expected invalid_parameter for " << text);
        } catch (const invalid_parameter& e) {
            CHECK(std::string(e.what()).find(key) != std::string::npos);
        }
    };
    expect_mention(R"({"lambda": "two"})", "lambda");
    expect_mention(R"({"plot": 1})", "plot");
    expect_mention(R"({"out": 3})", "out");
    expect_mention(R"({"alpha1-values": 0.5})", "alpha1-values");
    expect_mention(R"({"alpha1-values": ["x"]})", "alpha1-values");
}

TEST_CASE("integer keys reject fractional values but accept whole doubles")
{
    CHECK_THROWS_AS(parse_config(R"({"n0": 2.5})"), invalid_parameter);
    CHECK_THROWS_AS(parse_config(R"({"z-steps": 10.01})"), invalid_parameter);
    const RunConfig cfg = parse_config(R"({"n0": 2.0, "z-steps": 10.0})");
    CHECK(cfg.params.n0 == 2);
    CHECK(cfg.z_steps == 10);
}

TEST_CASE("malformed documents are rejected")
{
    CHECK_THROWS_AS(parse_config("{"), invalid_parameter);
    CHECK_THROWS_AS(parse_config(""), invalid_parameter);
    CHECK_THROWS_AS(parse_config("[1, 2]"), invalid_parameter);
    CHECK_THROWS_AS(parse_config("42"), invalid_parameter);
}

TEST_CASE("loading from disk wraps errors with the path")
{
    namespace fs = std::filesystem;
    const fs::path dir =
        fs::temp_directory_path() / fs::path("zigzag-config-test-" + std::to_string(::getpid()));
    fs::create_directories(dir);

    const fs::path good = dir / "good.json";
    std::ofstream(good) << R"({"lambda": 0.5, "plot": false})";
    const RunConfig cfg = load_config(good.string());
    CHECK(cfg.params.lambda == 0.5);
    CHECK_FALSE(cfg.plot);

    CHECK_THROWS_AS(load_config((dir / "absent.json").string()), resource_error);

    const fs::path bad = dir / "bad.json";
    std::ofstream(bad) << "not json";
    try {
        load_config(bad.string());
        FAIL("expected invalid_parameter");
    } catch (const invalid_parameter& e) {
        CHECK(std::string(e.what()).find("bad.json") != std::string::npos);
    }

    fs::remove_all(dir);
}
