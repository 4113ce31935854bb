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

#include <algorithm>
#include <cmath>
#include <limits>

#include "dpasim/channel.hpp"
#include "dpasim/errors.hpp"
#include "dpasim/link.hpp"

using namespace dpasim;

TEST_CASE("noise floor")
{
    CHECK(std::abs(noise_power_dbm(1.76e9, 7.0) - (-74.54)) <= 5e-3);
    CHECK(noise_power_dbm(1.0, 0.0) == doctest::Approx(-174.0));
    CHECK_THROWS_AS(noise_power_dbm(0.0, 7.0), InvalidConfig);
}

TEST_CASE("received power")
{
    LinkConfig link = LinkConfig::preset(LinkPreset::ue_poc, 13.0);
    CHECK(received_power_dbm(link, 85.263, 0.0) == doctest::Approx(-51.263));
    CHECK(received_power_dbm(link, 0.0, 0.0) == doctest::Approx(34.0));
    link.fade_margin_db = 4.0;
    CHECK(received_power_dbm(link, 85.263, 2.0) == doctest::Approx(-57.263));
}

TEST_CASE("sinr")
{
    const double noise = -80.0;
    CHECK(sinr_db({-60.0, {}, noise}) == doctest::Approx(20.0));
    CHECK(sinr_db({-60.0, {noise}, noise}) == doctest::Approx(20.0 - 3.0103).epsilon(1e-4));
    CHECK(std::abs(sinr_db({-60.0, {noise - 20.0}, noise}) - 20.0) <= 0.05);
    CHECK(sinr_db({-60.0, {-70.0, -75.0}, noise}) <= sinr_db({-60.0, {}, noise}));
    const double ninf = -std::numeric_limits<double>::infinity();
    CHECK(sinr_db({-60.0, {ninf}, noise}) == doctest::Approx(20.0));
}

TEST_CASE("rate ladder")
{
    const RateTable t({0.0, 3.0, 6.0}, {0.5, 1.0, 2.0});
    CHECK(rate_from_sinr_gbps(-0.1, t) == 0.0);
    CHECK(rate_from_sinr_gbps(0.0, t) == 0.5);
    CHECK(rate_from_sinr_gbps(5.9, t) == 1.0);
    CHECK(rate_from_sinr_gbps(std::numeric_limits<double>::infinity(), t) == t.per_stream_cap_gbps());
    double prev = 0.0;
    for (double s = -10.0; s < 30.0; s += 0.25)
    {
        const double r = rate_from_sinr_gbps(s, t);
        CHECK(r >= prev);
        prev = r;
    }
    CHECK_THROWS_AS(RateTable({}, {}), InvalidConfig);
    CHECK_THROWS_AS(RateTable({1.0, 1.0}, {1.0, 2.0}), InvalidConfig);
    CHECK_THROWS_AS(RateTable({1.0, 2.0}, {2.0, 1.0}), InvalidConfig);
    CHECK_THROWS_AS(RateTable({1.0}, {1.0, 2.0}), InvalidConfig);
}

TEST_CASE("presets hit the calibrated caps")
{
    const auto poc = LinkConfig::preset(LinkPreset::ue_poc, 18.0);
    const auto uav = LinkConfig::preset(LinkPreset::uav_abs, 18.0);
    CHECK(poc.rate_table.per_stream_cap_gbps() == 1.0575);
    CHECK(uav.rate_table.per_stream_cap_gbps() == 1.12);
    for (const auto *t : {&poc.rate_table, &uav.rate_table})
    {
        CHECK(t->thresholds_db().size() == 6);
        for (std::size_t k = 1; k < 6; ++k)
            CHECK(t->thresholds_db()[k] - t->thresholds_db()[k - 1] == doctest::Approx(3.0));
    }
}

TEST_CASE("ue-poc preset at 3 m indoors saturates")
{
    const auto inh = ChannelScenario::preset(ScenarioName::inh_office_los);
    const auto link = LinkConfig::preset(LinkPreset::ue_poc, 18.0);
    const double snr = received_power_dbm(link, path_loss_db(inh, 3.0), 0.0) -
                       noise_power_dbm(link.bandwidth_hz, link.noise_figure_db);
    const double r = stream_rate_gbps(snr, link);
    CHECK(r == 1.0575);
    const double streams[] = {r, r, r, r};
    CHECK(aggregate_gbps(streams) == doctest::Approx(4.23).epsilon(1e-12));
}

TEST_CASE("aggregate")
{
    const double mu[] = {1.096, 1.072};
    CHECK(aggregate_gbps(mu) == doctest::Approx(2.168));
    const double su[] = {1.12, 1.12};
    CHECK(aggregate_gbps(su) == doctest::Approx(2.24));
    CHECK(aggregate_gbps({}) == 0.0);
    double a[] = {0.3, 1.1, 0.7}, b[] = {0.7, 0.3, 1.1};
    CHECK(aggregate_gbps(a) == doctest::Approx(aggregate_gbps(b)));
}

TEST_CASE("shannon mode is monotone and capped")
{
    double prev = 0.0;
    for (double s = -20.0; s <= 40.0; s += 0.5)
    {
        const double r = shannon_rate_gbps(s, 1.76e9, 0.33, 1.12);
        CHECK(r >= prev);
        CHECK(r <= 1.12);
        prev = r;
    }
    CHECK(shannon_rate_gbps(60.0, 1.76e9, 0.33, 1.12) == 1.12);
    CHECK(shannon_rate_gbps(0.0, 1.76e9, 0.5, 10.0) == doctest::Approx(0.5 * 1.76));

    auto link = LinkConfig::preset(LinkPreset::uav_abs, 18.0);
    link.rate_mode = RateMode::shannon;
    CHECK(stream_rate_gbps(0.0, link) ==
          doctest::Approx(shannon_rate_gbps(0.0, link.bandwidth_hz, link.implementation_efficiency, 1.12)));
}

TEST_CASE("link validation")
{
    auto link = LinkConfig::preset(LinkPreset::ue_poc, 18.0);
    CHECK_NOTHROW(link.validate());
    link.bandwidth_hz = -1.0;
    CHECK_THROWS_AS(link.validate(), InvalidConfig);
    link = LinkConfig::preset(LinkPreset::ue_poc, 18.0);
    link.fade_margin_db = -1.0;
    CHECK_THROWS_AS(link.validate(), InvalidConfig);
}
