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

#include "dpasim/channel.hpp"

#include <cmath>
#include <string>

#include "dpasim/errors.hpp"
#include "dpasim/geometry.hpp"

namespace dpasim
{

std::string_view to_string(ScenarioName name)
{
    switch (name)
    {
    case ScenarioName::inh_office_los:
        return "InH-Office-LoS";
    case ScenarioName::umi_street_canyon_los:
        return "UMi-StreetCanyon-LoS";
    case ScenarioName::a2g_los:
        return "A2G-LoS";
    case ScenarioName::custom:
        return "custom";
    }
    return "custom";
}

std::optional<ScenarioName> scenario_from_string(std::string_view text)
{
    for (auto n : {ScenarioName::inh_office_los, ScenarioName::umi_street_canyon_los, ScenarioName::a2g_los,
                   ScenarioName::custom})
        if (text == to_string(n))
            return n;
    return std::nullopt;
}

ChannelScenario ChannelScenario::preset(ScenarioName name, double frequency_ghz)
{
    ChannelScenario s;
    s.name = name;
    s.frequency_ghz = frequency_ghz;
    switch (name)
    {
    case ScenarioName::inh_office_los:
        s.ple_n = 1.73;
        s.sf_sigma_db = 3.02;
        break;
    case ScenarioName::umi_street_canyon_los:
        s.ple_n = 2.1;
        s.sf_sigma_db = 3.76;
        break;
    case ScenarioName::a2g_los:
        s.ple_n = 1.6;
        s.sf_sigma_db = 2.0;
        break;
    case ScenarioName::custom:
        throw InvalidConfig("custom scenarios have no preset; use ChannelScenario::custom");
    }
    s.validate();
    return s;
}

ChannelScenario ChannelScenario::custom(double ple_n, double sf_sigma_db, double frequency_ghz)
{
    ChannelScenario s{ScenarioName::custom, ple_n, sf_sigma_db, frequency_ghz};
    s.validate();
    return s;
}

void ChannelScenario::validate() const
{
    if (!(ple_n > 0.0) || !std::isfinite(ple_n))
        throw InvalidConfig("path loss exponent must be positive");
    if (!(sf_sigma_db >= 0.0) || !std::isfinite(sf_sigma_db))
        throw InvalidConfig("shadow fading sigma must be >= 0");
    if (!(frequency_ghz > 0.0) || !std::isfinite(frequency_ghz))
        throw InvalidConfig("carrier frequency must be positive");
}

double path_loss_db(const ChannelScenario &scenario, double d_m)
{
    scenario.validate();
    if (!(d_m >= 1.0) || !std::isfinite(d_m))
        throw OutOfModelRange("close-in model needs d >= 1 m, got " + std::to_string(d_m));
    return 32.4 + 10.0 * scenario.ple_n * std::log10(d_m) + 20.0 * std::log10(scenario.frequency_ghz);
}

namespace
{
// SplitMix64 finaliser (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform on the open interval (0, 1).
double to_unit(std::uint64_t bits)
{
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}
} // namespace

double standard_normal(std::uint64_t seed, std::uint64_t index)
{
    const std::uint64_t key = mix64(seed);
    const double u1 = to_unit(mix64(key ^ mix64(2 * index)));
    const double u2 = to_unit(mix64(key ^ mix64(2 * index + 1)));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
}

double shadow_sample_db(const ChannelScenario &scenario, std::uint64_t seed, std::uint64_t index, FadingMode mode)
{
    if (mode == FadingMode::median)
        return 0.0;
    return scenario.sf_sigma_db * standard_normal(seed, index);
}

std::string_view to_string(Material material)
{
    switch (material)
    {
    case Material::none:
        return "none";
    case Material::glass:
        return "glass";
    case Material::metal_alloy:
        return "metal_alloy";
    case Material::ceramic:
        return "ceramic";
    }
    return "none";
}

std::optional<Material> material_from_string(std::string_view text)
{
    for (auto m : {Material::none, Material::glass, Material::metal_alloy, Material::ceramic})
        if (text == to_string(m))
            return m;
    return std::nullopt;
}

HousingMaterial HousingMaterial::preset(Material material)
{
    switch (material)
    {
    case Material::none:
        return {material, 0.0};
    case Material::glass:
    case Material::ceramic:
        return {material, 2.0};
    case Material::metal_alloy:
        return {material, 30.0};
    }
    return {Material::none, 0.0};
}

double housing_attenuation_db(const HousingMaterial &housing)
{
    if (!(housing.attenuation_db >= 0.0) || !std::isfinite(housing.attenuation_db))
        throw InvalidConfig("housing attenuation must be >= 0 dB");
    return housing.attenuation_db;
}

} // namespace dpasim
