#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "helpers.hpp"

#ifndef COMPMOTION_CLI_PATH
#error "COMPMOTION_CLI_PATH must point at the built binary"
#endif

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(COMPMOTION_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("cli: synth then validate exits 0") {
    helpers::TempDir dir("cli_ok");
    CHECK(run("synth --out " + dir.str() + "/ds --seed 2") == 0);
    CHECK(run("validate " + dir.str() + "/ds") == 0);
}

TEST_CASE("cli: truncated file exits 2 (parse error)") {
    helpers::TempDir dir("cli_trunc");
    REQUIRE(run("synth --out " + dir.str() + "/ds --seed 2") == 0);
    // Chop a reach file mid-row.
    const fs::path victim = dir.path() / "ds" / "reaches_s1_u_horizontal.csv";
    std::string bytes = helpers::read_file(victim);
    helpers::write_file(victim, bytes.substr(0, bytes.size() / 2 + 3));
    CHECK(run("validate " + dir.str() + "/ds") == 2);
}

TEST_CASE("cli: missing cells exit 1 without --allow-partial") {
    helpers::TempDir dir("cli_partial");
    REQUIRE(run("synth --out " + dir.str() + "/ds --seed 2 --subjects 5") == 0);
    CHECK(run("validate " + dir.str() + "/ds") == 1);
    CHECK(run("validate " + dir.str() + "/ds --allow-partial") == 0);
}

TEST_CASE("cli: compute and render produce deterministic bytes at any worker count") {
    helpers::TempDir dir("cli_determinism");
    REQUIRE(run("synth --out " + dir.str() + "/ds --seed 11") == 0);

    REQUIRE(run("compute " + dir.str() + "/ds --orientation both --out " + dir.str() +
                "/out1 --jobs 1") == 0);
    REQUIRE(run("compute " + dir.str() + "/ds --orientation both --out " + dir.str() +
                "/out4 --jobs 4") == 0);
    for (const char* name : {"metrics_horizontal.csv", "metrics_vertical.csv",
                             "joint_e_horizontal.csv", "joint_t_vertical.csv"}) {
        CHECK(helpers::read_file(dir.path() / "out1" / name) ==
              helpers::read_file(dir.path() / "out4" / name));
    }

    REQUIRE(run("render " + dir.str() + "/out1/metrics_horizontal.csv --metric index --out " +
                dir.str() + "/a.svg") == 0);
    REQUIRE(run("render " + dir.str() + "/out4/metrics_horizontal.csv --metric index --out " +
                dir.str() + "/b.svg") == 0);
    const std::string svg_a = helpers::read_file(dir.path() / "a.svg");
    CHECK(svg_a == helpers::read_file(dir.path() / "b.svg"));
    CHECK(svg_a.find("<svg") != std::string::npos);
}

TEST_CASE("cli: render rejects unknown metrics and honors fixed scales") {
    helpers::TempDir dir("cli_render");
    REQUIRE(run("synth --out " + dir.str() + "/ds --seed 3") == 0);
    REQUIRE(run("compute " + dir.str() + "/ds --orientation horizontal --out " + dir.str() +
                "/out") == 0);
    const std::string csv = dir.str() + "/out/metrics_horizontal.csv";

    CHECK(run("render " + csv + " --metric bogus --out " + dir.str() + "/x.svg") == 2);

    REQUIRE(run("render " + csv + " --metric clus_acc --scale fixed:0,1 --out " + dir.str() +
                "/h.svg") == 0);
    const std::string svg = helpers::read_file(dir.path() / "h.svg");
    CHECK(svg.find(">1</text>") != std::string::npos);
    CHECK(svg.find(">0</text>") != std::string::npos);

    REQUIRE(run("render " + csv + " --metric loc_dev --format csv --out " + dir.str() + "/m.csv") ==
            0);
    const std::string matrix = helpers::read_file(dir.path() / "m.csv");
    std::size_t lines = 0;
    for (char c : matrix) lines += c == '\n' ? 1 : 0;
    CHECK(lines == 7);
}

TEST_CASE("cli: report writes the five heatmaps per orientation") {
    helpers::TempDir dir("cli_report");
    REQUIRE(run("synth --out " + dir.str() + "/ds --seed 4") == 0);
    REQUIRE(run("report " + dir.str() + "/ds --out " + dir.str() + "/rep --jobs 2") == 0);
    for (const char* metric : {"loc_dev", "ang_diff", "sep", "clus_acc", "index"}) {
        for (const char* orient : {"horizontal", "vertical"}) {
            CHECK(fs::exists(dir.path() / "rep" / (std::string(metric) + "_" + orient + ".svg")));
            CHECK(fs::exists(dir.path() / "rep" / (std::string(metric) + "_" + orient + ".csv")));
        }
    }
    CHECK(fs::exists(dir.path() / "rep" / "metrics_horizontal.csv"));
    CHECK(fs::exists(dir.path() / "rep" / "metrics_vertical.csv"));
}

TEST_CASE("cli: synth determinism and seed sensitivity at the file level") {
    helpers::TempDir dir("cli_seeds");
    REQUIRE(run("synth --out " + dir.str() + "/a --seed 21") == 0);
    REQUIRE(run("synth --out " + dir.str() + "/b --seed 21") == 0);
    REQUIRE(run("synth --out " + dir.str() + "/c --seed 22") == 0);
    const std::string file = "reaches_s3_b_vertical.csv";
    CHECK(helpers::read_file(dir.path() / "a" / file) == helpers::read_file(dir.path() / "b" / file));
    CHECK(helpers::read_file(dir.path() / "a" / file) != helpers::read_file(dir.path() / "c" / file));
}

TEST_CASE("cli: strict mode exits 3 on degenerate cells") {
    helpers::TempDir dir("cli_strict");
    // Identical subjects, no noise, no distortion: every feature class
    // collapses to one point, so S_W is exactly zero everywhere.
    helpers::write_file(dir.path() / "params.json",
                        R"({"height_min_mm": 1700, "height_max_mm": 1700,
                            "arm_min_mm": 600, "arm_max_mm": 600,
                            "strategy_noise_mm": 0, "compensation_gain": 0})");
    REQUIRE(run("synth --params " + dir.str() + "/params.json --out " + dir.str() + "/ds") == 0);

    CHECK(run("compute " + dir.str() + "/ds --orientation horizontal --out " + dir.str() +
              "/out --strict") == 3);
    CHECK(run("compute " + dir.str() + "/ds --orientation horizontal --out " + dir.str() +
              "/out") == 0);

    // Every index cell is flagged; rendering that column must fail.
    CHECK(run("render " + dir.str() + "/out/metrics_horizontal.csv --metric index --out " +
              dir.str() + "/x.svg") == 1);
    // Other columns still render.
    CHECK(run("render " + dir.str() + "/out/metrics_horizontal.csv --metric clus_acc --out " +
              dir.str() + "/h.svg") == 0);
}

TEST_CASE("cli: config file drives options and flags override") {
    helpers::TempDir dir("cli_config");
    REQUIRE(run("synth --out " + dir.str() + "/ds --seed 5") == 0);
    helpers::write_file(dir.path() / "cfg.json",
                        R"({"jobs": 2, "index": {"divisor_l": 100, "divisor_a": 10}})");
    CHECK(run("--config " + dir.str() + "/cfg.json compute " + dir.str() +
              "/ds --orientation horizontal --out " + dir.str() + "/out") == 0);
    CHECK(fs::exists(dir.path() / "out" / "metrics_horizontal.csv"));

    helpers::write_file(dir.path() / "bad.json", R"({"reference_scope": "sideways"})");
    CHECK(run("--config " + dir.str() + "/bad.json compute " + dir.str() +
              "/ds --orientation horizontal --out " + dir.str() + "/out2") == 2);
}
