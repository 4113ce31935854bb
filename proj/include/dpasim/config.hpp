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
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dpasim/array_model.hpp"
#include "dpasim/channel.hpp"
#include "dpasim/deployment.hpp"
#include "dpasim/link.hpp"

// JSON configuration schema. Every reader rejects unknown keys and wrong
// types with a SchemaError carrying the JSON pointer of the offending field,
// and every writer emits the fully resolved form, which reads back to the
// same value.
namespace dpasim::config
{

using json = nlohmann::ordered_json;

// Throws SchemaError("", ...) for malformed JSON or a non-object root.
json parse_document(std::string_view text);
json load_file(const std::string &path);

struct ChannelSetup
{
    ChannelScenario scenario;
    HousingMaterial housing;
};

// Absent object (nullptr) yields the defaults.
ArrayGeometry read_array(const json *node, const std::string &ptr);
json write_array(const ArrayGeometry &array);

ChannelSetup read_channel(const json *node, const std::string &ptr);
json write_channel(const ChannelSetup &channel);

// `default_rx_gain_dbi` is used when the document does not set rx_gain_dbi.
// Without a preset the document must provide rate_table.
LinkConfig read_link(const json *node, const std::string &ptr, double default_rx_gain_dbi);
json write_link(const LinkConfig &link, std::optional<LinkPreset> preset);
std::optional<LinkPreset> read_link_preset(const json *node, const std::string &ptr);

UavPose read_uav(const json *node, const std::string &ptr);
json write_uav(const UavPose &pose);

std::vector<GroundPoint> read_users(const json *node, const std::string &ptr);
json write_users(const std::vector<GroundPoint> &users);

UeLayout read_ue_layout(const json &node, const std::string &ptr);
json write_ue_layout(const UeLayout &layout);

SweepRange read_sweep(const json *node, const std::string &ptr, int &n_streams);
json write_sweep(const SweepRange &range, int n_streams);

json write_layout_report(const LayoutReport &report);

std::string_view to_string(FadingMode mode);
std::optional<FadingMode> fading_from_string(std::string_view text);

// Reads the keys of an object one by one and reports leftovers.
class Object
{
public:
    // Throws SchemaError unless `node` is an object.
    Object(const json &node, std::string ptr);

    bool has(const std::string &key) const;
    const json *child(const std::string &key);
    std::string path(const std::string &key) const { return ptr_ + "/" + key; }

    std::optional<double> number(const std::string &key);
    double number(const std::string &key, double fallback) { return number(key).value_or(fallback); }
    std::optional<std::int64_t> integer(const std::string &key);
    std::optional<std::uint64_t> unsigned_integer(const std::string &key);
    std::optional<std::string> string(const std::string &key);
    std::optional<bool> boolean(const std::string &key);
    std::optional<std::vector<double>> numbers(const std::string &key);

    // Throws SchemaError naming the first key that was never read.
    void finish() const;

private:
    const json &node_;
    std::string ptr_;
    std::vector<std::string> seen_;
};

} // namespace dpasim::config
