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

#include "dpasim/link.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dpasim/errors.hpp"
#include "dpasim/geometry.hpp"

namespace dpasim
{

RateTable::RateTable(std::vector<double> thresholds_db, std::vector<double> rates_gbps)
    : thresholds_(std::move(thresholds_db)), rates_(std::move(rates_gbps))
{
    if (thresholds_.empty() || thresholds_.size() != rates_.size())
        throw InvalidConfig("rate table needs equally many (>= 1) thresholds and rates");
    for (std::size_t k = 0; k < thresholds_.size(); ++k)
    {
        if (!std::isfinite(thresholds_[k]) || !std::isfinite(rates_[k]) || rates_[k] < 0.0)
            throw InvalidConfig("rate table entries must be finite, rates >= 0");
        if (k > 0 && !(thresholds_[k] > thresholds_[k - 1]))
            throw InvalidConfig("rate table thresholds must be strictly increasing");
        if (k > 0 && rates_[k] < rates_[k - 1])
            throw InvalidConfig("rate table rates must be non-decreasing");
    }
}

std::string_view to_string(LinkPreset preset)
{
    return preset == LinkPreset::ue_poc ? "ue-poc" : "uav-abs";
}

std::optional<LinkPreset> link_preset_from_string(std::string_view text)
{
    if (text == "ue-poc")
        return LinkPreset::ue_poc;
    if (text == "uav-abs")
        return LinkPreset::uav_abs;
    return std::nullopt;
}

std::string_view to_string(RateMode mode)
{
    return mode == RateMode::ladder ? "ladder" : "shannon";
}

std::optional<RateMode> rate_mode_from_string(std::string_view text)
{
    if (text == "ladder")
        return RateMode::ladder;
    if (text == "shannon")
        return RateMode::shannon;
    return std::nullopt;
}

namespace
{
// Six thresholds 3 dB apart ending at `top_db`.
RateTable ladder(double top_db, double cap)
{
    constexpr double fraction[] = {0.25, 0.4, 0.55, 0.7, 0.85, 1.0};
    std::vector<double> thresholds, rates;
    for (int k = 0; k < 6; ++k)
    {
        thresholds.push_back(top_db - 3.0 * (5 - k));
        rates.push_back(cap * fraction[k]);
    }
    return {std::move(thresholds), std::move(rates)};
}
} // namespace

LinkConfig LinkConfig::preset(LinkPreset preset, double rx_gain_dbi)
{
    LinkConfig link;
    link.rx_gain_dbi = rx_gain_dbi;
    switch (preset)
    {
    case LinkPreset::ue_poc:
        // Saturates at 18 dB so the UMi curve starts to fall inside ~20 m
        // while InH stays flat over the handset sweep.
        link.rate_table = ladder(18.0, 1.0575);
        link.implementation_efficiency = 0.1;
        break;
    case LinkPreset::uav_abs:
        link.rate_table = ladder(3.0, 1.12);
        link.implementation_efficiency = 0.33;
        break;
    }
    return link;
}

void LinkConfig::validate() const
{
    if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
        throw InvalidConfig("bandwidth must be positive");
    if (!(implementation_efficiency > 0.0 && implementation_efficiency <= 1.0))
        throw InvalidConfig("implementation efficiency must lie in (0, 1]");
    if (!(fade_margin_db >= 0.0) || !std::isfinite(fade_margin_db))
        throw InvalidConfig("fade margin must be >= 0 dB");
    if (!std::isfinite(eirp_dbm) || !std::isfinite(rx_gain_dbi) || !std::isfinite(noise_figure_db))
        throw InvalidConfig("EIRP, rx gain and noise figure must be finite");
}

double noise_power_dbm(double bandwidth_hz, double noise_figure_db)
{
    if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
        throw InvalidConfig("bandwidth must be positive");
    return -174.0 + db10(bandwidth_hz) + noise_figure_db;
}

double received_power_dbm(const LinkConfig &link, double pl_db, double extra_losses_db)
{
    return link.eirp_dbm + link.rx_gain_dbi - pl_db - extra_losses_db - link.fade_margin_db;
}

double sinr_db(const StreamBudget &budget)
{
    double denom = from_db10(budget.noise_dbm);
    for (double i : budget.interference_dbm)
        denom += from_db10(i);
    return budget.signal_dbm - db10(denom);
}

double rate_from_sinr_gbps(double sinr_db, const RateTable &table)
{
    const auto &th = table.thresholds_db();
    const auto it = std::upper_bound(th.begin(), th.end(), sinr_db);
    if (it == th.begin())
        return 0.0;
    return table.rates_gbps()[static_cast<std::size_t>(it - th.begin()) - 1];
}

double shannon_rate_gbps(double sinr_db, double bandwidth_hz, double efficiency, double cap_gbps)
{
    const double bps = efficiency * bandwidth_hz * std::log2(1.0 + from_db10(sinr_db));
    return std::min(cap_gbps, bps * 1e-9);
}

double stream_rate_gbps(double sinr_db, const LinkConfig &link)
{
    if (link.rate_mode == RateMode::shannon)
        return shannon_rate_gbps(sinr_db, link.bandwidth_hz, link.implementation_efficiency,
                                 link.rate_table.per_stream_cap_gbps());
    return rate_from_sinr_gbps(sinr_db, link.rate_table);
}

double aggregate_gbps(std::span<const double> stream_rates)
{
    return std::accumulate(stream_rates.begin(), stream_rates.end(), 0.0);
}

} // namespace dpasim
