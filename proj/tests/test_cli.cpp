// SPDX-License-Identifier: Apache-2.0
//
// dpasim - link-level simulator for mmWave distributed phased arrays
// Copyright (C) 2026 The dpasim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "dpasim/cli.hpp"

using namespace dpasim;
namespace fs = std::filesystem;

namespace
{
struct Scratch
{
    fs::path root;
    Scratch()
    {
        root = fs::temp_directory_path() / ("dpasim_cli_" + std::to_string(::getpid()));
        fs::remove_all(root);
        fs::create_directories(root);
    }
    ~Scratch() { fs::remove_all(root); }
    std::string write(const std::string &name, const std::string &text) const
    {
        std::ofstream(root / name) << text;
        return (root / name).string();
    }
    std::string dir(const std::string &name) const { return (root / name).string(); }
};

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Outcome
{
    int code;
    std::string out, err;
};

Outcome invoke(RunConfig rc)
{
    std::ostringstream out, err;
    const int code = run(rc, out, err);
    return {code, out.str(), err.str()};
}

RunConfig make(Command c, std::optional<std::string> config = std::nullopt, std::optional<std::string> out = std::nullopt)
{
    RunConfig rc;
    rc.command = c;
    rc.config_path = std::move(config);
    rc.out_path = std::move(out);
    return rc;
}

const char *sweep_inh = R"({"channel": {"preset": "InH-Office-LoS"}, "link": {"preset": "ue-poc"},
                           "sweep": {"d_min": 1, "d_max": 30, "step": 1, "n_streams": 4}})";
const char *mu_d1 = R"({"uav": {"h": 35, "d0": 22}, "users": [[0, 0], [0, 6]], "fading": "stochastic", "seed": 5})";
} // namespace

TEST_CASE("command names")
{
    for (auto c : {Command::pattern, Command::ecc, Command::pathloss, Command::sweep, Command::scenario})
        CHECK(command_from_string(to_string(c)) == c);
    CHECK_FALSE(command_from_string("plot").has_value());
}

TEST_CASE("pathloss prints the close-in value")
{
    auto rc = make(Command::pathloss);
    rc.channel = "InH-Office-LoS";
    rc.frequency_ghz = 60.0;
    rc.distance_m = 10.0;
    const auto r = invoke(rc);
    CHECK(r.code == exit_ok);
    CHECK(r.out == "85.263\n");

    rc.distance_m = 0.5;
    CHECK(invoke(rc).code == exit_schema);
    rc.distance_m = 10.0;
    rc.channel = "Moon";
    CHECK(invoke(rc).code == exit_schema);
}

TEST_CASE("sweep writes the rate curve")
{
    Scratch s;
    const auto r = invoke(make(Command::sweep, s.write("sweep.json", sweep_inh), s.dir("out")));
    REQUIRE(r.code == exit_ok);
    std::istringstream csv(slurp(fs::path(s.dir("out")) / "sweep.csv"));
    std::string header, first;
    std::getline(csv, header);
    std::getline(csv, first);
    CHECK(header == "d_m,pl_db,snr_db,stream_rate_gbps,aggregate_gbps");
    CHECK(std::stod(first.substr(first.rfind(',') + 1)) == doctest::Approx(4.23).epsilon(1e-12));

    const auto summary = nlohmann::json::parse(slurp(fs::path(s.dir("out")) / "summary.json"));
    CHECK(summary["tool"] == "dpasim");
    CHECK(summary["version"] == std::string(tool_version));
    CHECK(summary["command"] == "sweep");
    CHECK(summary["results"]["points"] == 30);
}

TEST_CASE("csv numbers carry at least nine significant digits")
{
    Scratch s;
    REQUIRE(invoke(make(Command::sweep, s.write("c.json", sweep_inh), s.dir("out"))).code == 0);
    std::istringstream csv(slurp(fs::path(s.dir("out")) / "sweep.csv"));
    std::string line;
    std::getline(csv, line);
    while (std::getline(csv, line))
    {
        std::istringstream cells(line);
        for (std::string cell; std::getline(cells, cell, ',');)
        {
            int digits = 0;
            bool leading = true;
            for (char c : cell.substr(0, cell.find('e')))
                if (c >= '0' && c <= '9')
                {
                    leading = leading && c == '0';
                    digits += leading ? 0 : 1;
                }
            CHECK(digits >= 9);
        }
    }
}

TEST_CASE("schema violations exit 2 with a field pointer and no files")
{
    Scratch s;
    SUBCASE("malformed json")
    {
        const auto r = invoke(make(Command::sweep, s.write("bad.json", "{\"sweep\": [1, 2"), s.dir("out")));
        CHECK(r.code == exit_schema);
        CHECK(nlohmann::json::parse(r.err)["error"]["kind"] == "schema");
    }
    SUBCASE("unknown key")
    {
        const auto r = invoke(make(Command::sweep, s.write("bad.json", R"({"sweep": {"d_mix": 3}})"), s.dir("out")));
        CHECK(r.code == exit_schema);
        CHECK(nlohmann::json::parse(r.err)["error"]["field"] == "/sweep/d_mix");
    }
    SUBCASE("wrong type")
    {
        const auto r = invoke(make(Command::scenario, s.write("bad.json", R"({"uav": {"h": "high"}})"), s.dir("out")));
        CHECK(r.code == exit_schema);
        CHECK(nlohmann::json::parse(r.err)["error"]["field"] == "/uav/h");
    }
    SUBCASE("bad resolution")
    {
        auto rc = make(Command::pattern, std::nullopt, s.dir("out"));
        rc.resolution_deg = 0.7;
        CHECK(invoke(rc).code == exit_schema);
    }
    CHECK_FALSE(fs::exists(s.dir("out")));
}

TEST_CASE("numerical degeneracy exits 3")
{
    Scratch s;
    const auto r = invoke(make(Command::scenario, s.write("nadir.json", R"({"users": [[-22, 0], [0, 0]]})"), s.dir("out")));
    CHECK(r.code == exit_numerical);
    CHECK(nlohmann::json::parse(r.err)["error"]["kind"] == "numerical");
    CHECK_FALSE(fs::exists(s.dir("out")));

    std::string zero = "theta_deg,phi_deg,re_etheta,im_etheta,re_ephi,im_ephi\n";
    for (int t = 0; t <= 180; t += 90)
        for (int p = 0; p < 360; p += 90)
            zero += std::to_string(t) + "," + std::to_string(p) + ",0,0,0,0\n";
    auto rc = make(Command::ecc);
    rc.inputs = {s.write("z1.csv", zero), s.write("z2.csv", zero)};
    CHECK(invoke(rc).code == exit_numerical);
}

TEST_CASE("unwritable output is an i/o failure")
{
    Scratch s;
    const std::string blocker = s.write("file", "x");
    auto rc = make(Command::pathloss, std::nullopt, blocker + "/sub");
    rc.distance_m = 10.0;
    CHECK(invoke(rc).code == exit_io);
}

TEST_CASE("every command is byte-for-byte repeatable")
{
    Scratch s;
    const auto pat = s.write("pat.json", R"({"steering": {"azimuth_deg": 30}, "resolution_deg": 5})");
    auto pattern_rc = make(Command::pattern, pat, s.dir("p"));
    REQUIRE(invoke(pattern_rc).code == 0);
    const auto a = (fs::path(s.dir("p")) / "pattern.csv").string();
    pattern_rc.out_path = s.dir("p2");
    pattern_rc.config_path = s.write("pat2.json", R"({"steering": {"azimuth_deg": -10}, "resolution_deg": 5})");
    REQUIRE(invoke(pattern_rc).code == 0);
    const auto b = (fs::path(s.dir("p2")) / "pattern.csv").string();

    auto ecc_rc = make(Command::ecc);
    ecc_rc.inputs = {a, b};
    auto path_rc = make(Command::pathloss, s.write("pl.json", R"({"distances_m": [1, 7, 30], "channel": {"preset": "UMi-StreetCanyon-LoS"}})"));
    path_rc.fading = FadingMode::stochastic;
    path_rc.seed = 77;

    const std::vector<RunConfig> runs = {
        make(Command::pattern, pat),
        ecc_rc,
        path_rc,
        make(Command::sweep, s.write("sw.json", R"({"fading": "stochastic", "seed": 3, "channel": {"preset": "UMi-StreetCanyon-LoS"}})")),
        make(Command::scenario, s.write("mu.json", mu_d1)),
    };
    int n = 0;
    for (auto rc : runs)
    {
        rc.out_path = s.dir("r" + std::to_string(n) + "a");
        const auto first = invoke(rc);
        rc.out_path = s.dir("r" + std::to_string(n) + "b");
        const auto second = invoke(rc);
        REQUIRE(first.code == 0);
        CHECK(first.out == second.out);
        const std::string csv = std::string(to_string(rc.command)) + ".csv";
        for (const std::string f : {csv, std::string("summary.json")})
            CHECK(slurp(fs::path(s.dir("r" + std::to_string(n) + "a")) / f) ==
                  slurp(fs::path(s.dir("r" + std::to_string(n) + "b")) / f));
        ++n;
    }
}

TEST_CASE("summary config round trips")
{
    Scratch s;
    for (const auto &[cmd, text] : std::vector<std::pair<Command, std::string>>{
             {Command::scenario, mu_d1},
             {Command::sweep, sweep_inh},
             {Command::pattern, R"({"steering": {"azimuth_deg": 45}, "resolution_deg": 3, "displacement_wavelengths": [4, 0, 0]})"},
             {Command::pathloss, R"({"distance_m": 12, "channel": {"preset": "custom", "ple_n": 2.4, "sf_sigma_db": 1, "housing": "metal_alloy"}})"},
         })
    {
        auto rc = make(cmd, s.write("in.json", text), s.dir("a"));
        REQUIRE(invoke(rc).code == 0);
        const auto summary = nlohmann::ordered_json::parse(slurp(fs::path(s.dir("a")) / "summary.json"));
        rc.config_path = s.write("echo.json", summary["config"].dump());
        rc.out_path = s.dir("b");
        REQUIRE(invoke(rc).code == 0);
        const std::string csv = std::string(to_string(cmd)) + ".csv";
        CHECK(slurp(fs::path(s.dir("a")) / csv) == slurp(fs::path(s.dir("b")) / csv));
        CHECK(slurp(fs::path(s.dir("a")) / "summary.json") == slurp(fs::path(s.dir("b")) / "summary.json"));
        fs::remove_all(s.dir("a"));
        fs::remove_all(s.dir("b"));
    }
}

TEST_CASE("flags override the file")
{
    Scratch s;
    auto rc = make(Command::scenario, s.write("mu.json", mu_d1), s.dir("out"));
    rc.seed = 99;
    rc.fading = FadingMode::median;
    REQUIRE(invoke(rc).code == 0);
    const auto summary = nlohmann::json::parse(slurp(fs::path(s.dir("out")) / "summary.json"));
    CHECK(summary["config"]["seed"] == 99);
    CHECK(summary["config"]["fading"] == "median");
}

TEST_CASE("scenario summary reports the field-test numbers")
{
    Scratch s;
    REQUIRE(invoke(make(Command::scenario, s.write("su.json", R"({"users": [[0, 0]], "assignment": [0, 0]})"), s.dir("out"))).code == 0);
    const auto summary = nlohmann::json::parse(slurp(fs::path(s.dir("out")) / "summary.json"));
    CHECK(summary["results"]["aggregate_gbps"].get<double>() == doctest::Approx(2.24).epsilon(0.05));
    CHECK(summary["results"]["users"][0]["slant_m"].get<double>() == doctest::Approx(41.34).epsilon(1e-4));
    CHECK(summary["config"]["link"]["preset"] == "uav-abs");
}
