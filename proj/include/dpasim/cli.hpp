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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dpasim/channel.hpp"

namespace dpasim
{

inline constexpr std::string_view tool_version = "1.0.0";

enum class Command
{
    pattern,
    ecc,
    pathloss,
    sweep,
    scenario
};

std::string_view to_string(Command command);
std::optional<Command> command_from_string(std::string_view text);

// Exit codes of run().
inline constexpr int exit_ok = 0;
inline constexpr int exit_io = 1;
inline constexpr int exit_schema = 2;
inline constexpr int exit_numerical = 3;

// One CLI invocation. Flags left unset fall back to the configuration file,
// then to built-in defaults.
struct RunConfig
{
    Command command = Command::pathloss;
    std::optional<std::string> config_path;
    std::optional<std::string> out_path; // output directory
    std::optional<std::uint64_t> seed;
    std::optional<double> resolution_deg;
    std::optional<FadingMode> fading;
    std::vector<std::string> inputs; // ecc: two pattern CSV files

    // pathloss shortcuts
    std::optional<std::string> channel;
    std::optional<double> frequency_ghz;
    std::optional<double> distance_m;
};

// Runs one command. Results go to `out` (stdout-style headline) and, when
// out_path is set, to <out>/<command>.csv and <out>/summary.json. Failures
// print a JSON error record to `err` and write no files:
// 2 = schema / invalid input, 3 = numerical degeneracy, 1 = I/O.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

} // namespace dpasim
