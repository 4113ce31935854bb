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
#include <optional>
#include <string_view>

namespace dpasim
{

enum class ScenarioName
{
    inh_office_los,
    umi_street_canyon_los,
    a2g_los,
    custom
};

std::string_view to_string(ScenarioName name);
std::optional<ScenarioName> scenario_from_string(std::string_view text);

/*!
 * Close-in (1 m free-space reference) path-loss model parameters.
 *
 * Presets at 60 GHz:
 *   InH-Office-LoS        n = 1.73, sigma = 3.02 dB
 *   UMi-StreetCanyon-LoS  n = 2.1,  sigma = 3.76 dB
 *   A2G-LoS               n = 1.6,  sigma = 2.0 dB  (stand-in values, only the
 *                         ordering n_A2G < n_UMi is physically motivated)
 */
struct ChannelScenario
{
    ScenarioName name = ScenarioName::inh_office_los;
    double ple_n = 1.73;
    double sf_sigma_db = 3.02;
    double frequency_ghz = 60.0;

    static ChannelScenario preset(ScenarioName name, double frequency_ghz = 60.0);
    static ChannelScenario custom(double ple_n, double sf_sigma_db, double frequency_ghz = 60.0);

    // Throws InvalidConfig unless n > 0, sigma >= 0 and f > 0.
    void validate() const;
};

// 32.4 + 10 n log10(d) + 20 log10(f_GHz), shadow fading excluded.
// Throws OutOfModelRange for d < 1 m.
double path_loss_db(const ChannelScenario &scenario, double d_m);

enum class FadingMode
{
    median,
    stochastic
};

// Standard normal deviate derived only from (seed, index); any sample can be
// regenerated independently of evaluation order.
double standard_normal(std::uint64_t seed, std::uint64_t index);

// Shadow-fading term in dB (added to the path loss). Median mode is exactly 0.
double shadow_sample_db(const ChannelScenario &scenario, std::uint64_t seed, std::uint64_t index,
                        FadingMode mode = FadingMode::stochastic);

enum class Material
{
    none,
    glass,
    metal_alloy,
    ceramic
};

std::string_view to_string(Material material);
std::optional<Material> material_from_string(std::string_view text);

// Rear-housing insertion loss at 60 GHz. Metal alloy defaults to the 30 dB
// lower bound; glass and ceramic ("low" loss) to 2 dB.
struct HousingMaterial
{
    Material material = Material::none;
    double attenuation_db = 0.0;

    static HousingMaterial preset(Material material);
};

// Throws InvalidConfig for negative attenuation.
double housing_attenuation_db(const HousingMaterial &housing);

} // namespace dpasim
