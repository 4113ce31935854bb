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

#include <cmath>
#include <vector>

#include "dpasim/channel.hpp"
#include "dpasim/errors.hpp"

using namespace dpasim;

namespace
{
const ChannelScenario inh = ChannelScenario::preset(ScenarioName::inh_office_los);
const ChannelScenario umi = ChannelScenario::preset(ScenarioName::umi_street_canyon_los);
const ChannelScenario a2g = ChannelScenario::preset(ScenarioName::a2g_los);
} // namespace

TEST_CASE("presets")
{
    CHECK(inh.ple_n == 1.73);
    CHECK(inh.sf_sigma_db == 3.02);
    CHECK(umi.ple_n == 2.1);
    CHECK(umi.sf_sigma_db == 3.76);
    CHECK(a2g.ple_n < umi.ple_n);
    CHECK_THROWS_AS(ChannelScenario::preset(ScenarioName::custom), InvalidConfig);
    for (auto n : {ScenarioName::inh_office_los, ScenarioName::umi_street_canyon_los, ScenarioName::a2g_los})
        CHECK(scenario_from_string(to_string(n)) == n);
    CHECK_FALSE(scenario_from_string("InH").has_value());
}

TEST_CASE("close-in path loss values")
{
    CHECK(std::abs(path_loss_db(inh, 1.0) - 67.963) <= 5e-4);
    CHECK(std::abs(path_loss_db(inh, 10.0) - 85.263) <= 5e-4);
    CHECK(std::abs(path_loss_db(umi, 10.0) - 88.963) <= 5e-4);
    for (double d : {1.0, 2.0, 5.0, 10.0, 20.0, 50.0})
    {
        CHECK(std::abs(path_loss_db(inh, d) - (32.4 + 17.3 * std::log10(d) + 20.0 * std::log10(60.0))) <= 1e-9);
        CHECK(std::abs(path_loss_db(umi, d) - (32.4 + 21.0 * std::log10(d) + 20.0 * std::log10(60.0))) <= 1e-9);
    }
    CHECK_THROWS_AS(path_loss_db(inh, 0.5), OutOfModelRange);
}

TEST_CASE("path loss properties")
{
    CHECK(path_loss_db(inh, 1.0) == path_loss_db(umi, 1.0));
    CHECK(path_loss_db(inh, 1.0) == path_loss_db(a2g, 1.0));
    double prev = path_loss_db(inh, 1.0);
    for (double d = 1.5; d <= 200.0; d *= 1.5)
    {
        const double pl = path_loss_db(inh, d);
        CHECK(pl > prev);
        prev = pl;
        CHECK(path_loss_db(inh, d) < path_loss_db(umi, d));
        CHECK(std::abs(path_loss_db(umi, d) - path_loss_db(inh, d) - 10.0 * (2.1 - 1.73) * std::log10(d)) <= 1e-9);
    }
    CHECK(path_loss_db(ChannelScenario::preset(ScenarioName::inh_office_los, 73.0), 10.0) > path_loss_db(inh, 10.0));
}

TEST_CASE("median fading is zero")
{
    for (std::uint64_t i = 0; i < 10; ++i)
        CHECK(shadow_sample_db(umi, 99, i, FadingMode::median) == 0.0);
}

TEST_CASE("shadow samples are deterministic and order independent")
{
    std::vector<double> forward, backward(50);
    for (std::uint64_t i = 0; i < 50; ++i)
        forward.push_back(shadow_sample_db(inh, 7, i));
    for (std::uint64_t i = 50; i-- > 0;)
        backward[i] = shadow_sample_db(inh, 7, i);
    CHECK(forward == backward);
    CHECK(shadow_sample_db(inh, 7, 3) != shadow_sample_db(inh, 8, 3));
}

TEST_CASE("shadow fading statistics")
{
    for (const auto &sc : {inh, umi})
    {
        const std::size_t n = 100000;
        double sum = 0.0, sq = 0.0;
        for (std::uint64_t i = 0; i < n; ++i)
        {
            const double x = shadow_sample_db(sc, 2024, i);
            sum += x;
            sq += x * x;
        }
        const double mean = sum / n;
        const double sd = std::sqrt((sq - n * mean * mean) / (n - 1));
        CHECK(std::abs(mean) <= 0.05);
        CHECK(std::abs(sd / sc.sf_sigma_db - 1.0) <= 0.03);
    }
}

TEST_CASE("housing attenuation")
{
    CHECK(housing_attenuation_db(HousingMaterial::preset(Material::none)) == 0.0);
    CHECK(housing_attenuation_db(HousingMaterial::preset(Material::metal_alloy)) == 30.0);
    CHECK(housing_attenuation_db(HousingMaterial::preset(Material::ceramic)) == 2.0);
    CHECK(housing_attenuation_db(HousingMaterial::preset(Material::glass)) == 2.0);
    CHECK_THROWS_AS(housing_attenuation_db(HousingMaterial{Material::glass, -1.0}), InvalidConfig);
}

TEST_CASE("custom scenarios are validated")
{
    CHECK_NOTHROW(ChannelScenario::custom(2.5, 4.0).validate());
    CHECK_THROWS_AS(ChannelScenario::custom(-1.0, 4.0).validate(), InvalidConfig);
    CHECK_THROWS_AS(ChannelScenario::custom(2.0, -4.0).validate(), InvalidConfig);
}
