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

#include <iostream>

#include <CLI11.hpp>

#include "dpasim/cli.hpp"

int main(int argc, char **argv)
{
    using namespace dpasim;

    CLI::App app{"dpasim - link-level simulator for mmWave distributed phased arrays"};
    app.set_version_flag("--version", std::string(tool_version));
    app.require_subcommand(1);

    RunConfig rc;
    std::string fading;

    auto common = [&](CLI::App *sub)
    {
        sub->add_option("--config", rc.config_path, "JSON configuration file")->check(CLI::ExistingFile);
        sub->add_option("--out", rc.out_path, "output directory for <command>.csv and summary.json");
        sub->add_option("--seed", rc.seed, "shadow-fading seed");
        sub->add_option("--resolution", rc.resolution_deg, "angular grid resolution in degrees");
        sub->add_option("--fading", fading, "median or stochastic")->check(CLI::IsMember({"median", "stochastic"}));
    };

    auto *pattern = app.add_subcommand("pattern", "synthesize a steered array pattern");
    common(pattern);
    auto *ecc = app.add_subcommand("ecc", "envelope correlation of two pattern CSV files");
    common(ecc);
    ecc->add_option("inputs", rc.inputs, "two pattern CSV files")->expected(0, 2);
    auto *pathloss = app.add_subcommand("pathloss", "close-in path loss");
    common(pathloss);
    pathloss->add_option("--channel", rc.channel, "InH-Office-LoS, UMi-StreetCanyon-LoS or A2G-LoS");
    pathloss->add_option("--frequency", rc.frequency_ghz, "carrier frequency in GHz");
    pathloss->add_option("--distance", rc.distance_m, "link distance in metres");
    auto *sweep = app.add_subcommand("sweep", "aggregate rate versus distance");
    common(sweep);
    auto *scenario = app.add_subcommand("scenario", "UAV single- or multi-user downlink");
    common(scenario);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_schema;
    }

    for (auto *sub : app.get_subcommands())
        rc.command = *command_from_string(sub->get_name());
    if (!fading.empty())
        rc.fading = fading == "stochastic" ? FadingMode::stochastic : FadingMode::median;

    return run(rc, std::cout, std::cerr);
}
