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

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace dpasim
{

// Step mapping from SINR to per-stream goodput. The last rate is the cap.
class RateTable
{
public:
    // Throws InvalidConfig unless both lists are non-empty and equally long,
    // thresholds strictly increase and rates are non-negative, non-decreasing.
    RateTable(std::vector<double> thresholds_db, std::vector<double> rates_gbps);

    const std::vector<double> &thresholds_db() const { return thresholds_; }
    const std::vector<double> &rates_gbps() const { return rates_; }
    double per_stream_cap_gbps() const { return rates_.back(); }

    friend bool operator==(const RateTable &, const RateTable &) = default;

private:
    std::vector<double> thresholds_;
    std::vector<double> rates_;
};

enum class RateMode
{
    ladder,  // RateTable steps
    shannon, // min(cap, efficiency * B * log2(1 + sinr))
};

enum class LinkPreset
{
    ue_poc,  // 4-stream handset: 1.0575 Gbps per stream
    uav_abs, // 2-stream aerial base station: 1.12 Gbps per stream
};

std::string_view to_string(LinkPreset preset);
std::optional<LinkPreset> link_preset_from_string(std::string_view text);
std::string_view to_string(RateMode mode);
std::optional<RateMode> rate_mode_from_string(std::string_view text);

struct LinkConfig
{
    double eirp_dbm = 21.0;
    double rx_gain_dbi = 0.0;
    double bandwidth_hz = 1.76e9;
    double noise_figure_db = 7.0;
    double implementation_efficiency = 1.0;
    RateTable rate_table{{0.0}, {1.0}};
    double fade_margin_db = 0.0;
    RateMode rate_mode = RateMode::ladder;

    // Preset rate ladder and defaults; rx_gain_dbi is normally the peak
    // directivity of the receiving array.
    static LinkConfig preset(LinkPreset preset, double rx_gain_dbi);

    // Throws InvalidConfig for non-positive bandwidth, efficiency outside
    // (0, 1] or a negative fade margin.
    void validate() const;
};

struct StreamBudget
{
    double signal_dbm = 0.0;
    std::vector<double> interference_dbm; // empty in the single-user case
    double noise_dbm = 0.0;
};

// -174 dBm/Hz + 10 log10(B) + NF. Throws InvalidConfig for B <= 0.
double noise_power_dbm(double bandwidth_hz, double noise_figure_db);

// EIRP + rx gain - path loss - extra losses - fade margin.
double received_power_dbm(const LinkConfig &link, double pl_db, double extra_losses_db);

// Signal over noise plus summed interference, combined in linear power.
double sinr_db(const StreamBudget &budget);

// Highest rate whose threshold is <= sinr; 0 below the lowest threshold.
double rate_from_sinr_gbps(double sinr_db, const RateTable &table);

double shannon_rate_gbps(double sinr_db, double bandwidth_hz, double efficiency, double cap_gbps);

// Dispatches on link.rate_mode.
double stream_rate_gbps(double sinr_db, const LinkConfig &link);

double aggregate_gbps(std::span<const double> stream_rates);

} // namespace dpasim
