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

#include "dpasim/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dpasim/errors.hpp"

namespace dpasim::config
{

json parse_document(std::string_view text)
{
    json doc;
    try
    {
        doc = json::parse(text.begin(), text.end());
    }
    catch (const json::parse_error &e)
    {
        throw SchemaError("", std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw SchemaError("", "configuration root must be an object");
    return doc;
}

json load_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw SchemaError("", "cannot read configuration file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str());
}

// ------------------------------------------------------------------ Object

Object::Object(const json &node, std::string ptr) : node_(node), ptr_(std::move(ptr))
{
    if (!node.is_object())
        throw SchemaError(ptr_, "expected an object");
}

bool Object::has(const std::string &key) const
{
    return node_.contains(key);
}

const json *Object::child(const std::string &key)
{
    seen_.push_back(key);
    const auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
}

std::optional<double> Object::number(const std::string &key)
{
    const json *v = child(key);
    if (!v)
        return std::nullopt;
    if (!v->is_number())
        throw SchemaError(path(key), "expected a number");
    const double d = v->get<double>();
    if (!std::isfinite(d))
        throw SchemaError(path(key), "expected a finite number");
    return d;
}

std::optional<std::int64_t> Object::integer(const std::string &key)
{
    const json *v = child(key);
    if (!v)
        return std::nullopt;
    if (!v->is_number_integer())
        throw SchemaError(path(key), "expected an integer");
    return v->get<std::int64_t>();
}

std::optional<std::uint64_t> Object::unsigned_integer(const std::string &key)
{
    const json *v = child(key);
    if (!v)
        return std::nullopt;
    if (!v->is_number_unsigned())
        throw SchemaError(path(key), "expected a non-negative integer");
    return v->get<std::uint64_t>();
}

std::optional<std::string> Object::string(const std::string &key)
{
    const json *v = child(key);
    if (!v)
        return std::nullopt;
    if (!v->is_string())
        throw SchemaError(path(key), "expected a string");
    return v->get<std::string>();
}

std::optional<bool> Object::boolean(const std::string &key)
{
    const json *v = child(key);
    if (!v)
        return std::nullopt;
    if (!v->is_boolean())
        throw SchemaError(path(key), "expected true or false");
    return v->get<bool>();
}

std::optional<std::vector<double>> Object::numbers(const std::string &key)
{
    const json *v = child(key);
    if (!v)
        return std::nullopt;
    if (!v->is_array())
        throw SchemaError(path(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t k = 0; k < v->size(); ++k)
    {
        if (!(*v)[k].is_number())
            throw SchemaError(path(key) + "/" + std::to_string(k), "expected a number");
        out.push_back((*v)[k].get<double>());
    }
    return out;
}

void Object::finish() const
{
    for (const auto &item : node_.items())
        if (std::find(seen_.begin(), seen_.end(), item.key()) == seen_.end())
            throw SchemaError(path(item.key()), "unknown field");
}

// ------------------------------------------------------------------ array

ArrayGeometry read_array(const json *node, const std::string &ptr)
{
    const ArrayGeometry def = ArrayGeometry::bfm_default();
    if (!node)
        return def;
    Object o(*node, ptr);
    const auto rows = o.integer("rows").value_or(def.rows());
    const auto cols = o.integer("cols").value_or(def.cols());
    const double sr = o.number("spacing_row", def.spacing_row());
    const double sc = o.number("spacing_col", def.spacing_col());
    const std::string element = o.string("element").value_or("cosine");
    const double q = o.number("q", def.element().q);
    const double lim_az = o.number("steering_limit_az", def.steering_limit_az_deg());
    const double lim_el = o.number("steering_limit_el", def.steering_limit_el_deg());
    o.finish();

    ElementModel model;
    if (element == "isotropic")
        model = ElementModel::isotropic();
    else if (element == "cosine")
        model = ElementModel::cosine(q);
    else
        throw SchemaError(o.path("element"), "expected \"isotropic\" or \"cosine\"");
    if (rows < 1 || rows > 4096 || cols < 1 || cols > 4096)
        throw SchemaError(o.path(rows < 1 || rows > 4096 ? "rows" : "cols"), "element count must lie in [1, 4096]");
    try
    {
        return ArrayGeometry(static_cast<int>(rows), static_cast<int>(cols), sr, sc, model, lim_az, lim_el);
    }
    catch (const InvalidGeometry &e)
    {
        throw SchemaError(ptr, e.what());
    }
}

json write_array(const ArrayGeometry &a)
{
    json j;
    j["rows"] = a.rows();
    j["cols"] = a.cols();
    j["spacing_row"] = a.spacing_row();
    j["spacing_col"] = a.spacing_col();
    const bool iso = a.element().kind == ElementModel::Kind::isotropic;
    j["element"] = iso ? "isotropic" : "cosine";
    if (!iso)
        j["q"] = a.element().q;
    j["steering_limit_az"] = a.steering_limit_az_deg();
    j["steering_limit_el"] = a.steering_limit_el_deg();
    return j;
}

// ------------------------------------------------------------------ channel

ChannelSetup read_channel(const json *node, const std::string &ptr)
{
    ChannelSetup out{ChannelScenario::preset(ScenarioName::inh_office_los), HousingMaterial{}};
    if (!node)
        return out;
    Object o(*node, ptr);
    const auto preset = o.string("preset");
    const auto n = o.number("ple_n");
    const auto sigma = o.number("sf_sigma_db");
    const double f = o.number("frequency_ghz", 60.0);

    const bool explicit_custom = preset ? *preset == "custom" : (n || sigma);
    if (!explicit_custom)
    {
        const auto name = scenario_from_string(preset.value_or("InH-Office-LoS"));
        if (!name)
            throw SchemaError(o.path("preset"), "unknown channel preset '" + *preset + "'");
        out.scenario = ChannelScenario::preset(*name, 60.0);
        // Changing a preset parameter makes the scenario custom.
        if ((n && *n != out.scenario.ple_n) || (sigma && *sigma != out.scenario.sf_sigma_db))
            out.scenario.name = ScenarioName::custom;
    }
    else
    {
        if (!n)
            throw SchemaError(o.path("ple_n"), "custom channel needs ple_n");
        if (!sigma)
            throw SchemaError(o.path("sf_sigma_db"), "custom channel needs sf_sigma_db");
        out.scenario.name = ScenarioName::custom;
    }
    if (n)
        out.scenario.ple_n = *n;
    if (sigma)
        out.scenario.sf_sigma_db = *sigma;
    out.scenario.frequency_ghz = f;

    if (const json *h = o.child("housing"))
    {
        std::string hptr = o.path("housing");
        if (h->is_string())
        {
            const auto m = material_from_string(h->get<std::string>());
            if (!m)
                throw SchemaError(hptr, "unknown housing material");
            out.housing = HousingMaterial::preset(*m);
        }
        else
        {
            Object ho(*h, hptr);
            const auto mat = ho.string("material").value_or("none");
            const auto m = material_from_string(mat);
            if (!m)
                throw SchemaError(ho.path("material"), "unknown housing material '" + mat + "'");
            out.housing = HousingMaterial::preset(*m);
            out.housing.attenuation_db = ho.number("attenuation_db", out.housing.attenuation_db);
            ho.finish();
            if (!(out.housing.attenuation_db >= 0.0))
                throw SchemaError(ho.path("attenuation_db"), "attenuation must be >= 0 dB");
        }
    }
    o.finish();

    try
    {
        out.scenario.validate();
    }
    catch (const InvalidConfig &e)
    {
        throw SchemaError(ptr, e.what());
    }
    return out;
}

json write_channel(const ChannelSetup &c)
{
    json j;
    j["preset"] = std::string(to_string(c.scenario.name));
    j["ple_n"] = c.scenario.ple_n;
    j["sf_sigma_db"] = c.scenario.sf_sigma_db;
    j["frequency_ghz"] = c.scenario.frequency_ghz;
    j["housing"] = {{"material", std::string(to_string(c.housing.material))},
                    {"attenuation_db", c.housing.attenuation_db}};
    return j;
}

// ------------------------------------------------------------------ link

std::optional<LinkPreset> read_link_preset(const json *node, const std::string &ptr)
{
    if (!node)
        return std::nullopt;
    if (!node->is_object())
        throw SchemaError(ptr, "expected an object");
    const auto it = node->find("preset");
    if (it == node->end())
        return std::nullopt;
    if (!it->is_string())
        throw SchemaError(ptr + "/preset", "expected a string");
    const auto text = it->get<std::string>();
    if (text == "custom")
        return std::nullopt;
    const auto p = link_preset_from_string(text);
    if (!p)
        throw SchemaError(ptr + "/preset", "unknown link preset '" + text + "'");
    return p;
}

LinkConfig read_link(const json *node, const std::string &ptr, double default_rx_gain_dbi)
{
    const auto preset = read_link_preset(node, ptr);
    if (!node)
        throw SchemaError(ptr, "link configuration is required");
    Object o(*node, ptr);
    o.child("preset");

    LinkConfig link = preset ? LinkConfig::preset(*preset, default_rx_gain_dbi) : LinkConfig{};
    link.rx_gain_dbi = o.number("rx_gain_dbi", default_rx_gain_dbi);
    link.eirp_dbm = o.number("eirp_dbm", link.eirp_dbm);
    link.bandwidth_hz = o.number("bandwidth_hz", link.bandwidth_hz);
    link.noise_figure_db = o.number("noise_figure_db", link.noise_figure_db);
    link.implementation_efficiency = o.number("implementation_efficiency", link.implementation_efficiency);
    link.fade_margin_db = o.number("fade_margin_db", link.fade_margin_db);
    if (const auto mode = o.string("rate_mode"))
    {
        const auto m = rate_mode_from_string(*mode);
        if (!m)
            throw SchemaError(o.path("rate_mode"), "expected \"ladder\" or \"shannon\"");
        link.rate_mode = *m;
    }
    if (const json *t = o.child("rate_table"))
    {
        Object to(*t, o.path("rate_table"));
        const auto th = to.numbers("thresholds_db");
        const auto rates = to.numbers("rates_gbps");
        const auto cap = to.number("per_stream_cap_gbps");
        to.finish();
        if (!th)
            throw SchemaError(to.path("thresholds_db"), "rate table needs thresholds_db");
        if (!rates)
            throw SchemaError(to.path("rates_gbps"), "rate table needs rates_gbps");
        try
        {
            link.rate_table = RateTable(*th, *rates);
        }
        catch (const InvalidConfig &e)
        {
            throw SchemaError(o.path("rate_table"), e.what());
        }
        if (cap && *cap != link.rate_table.per_stream_cap_gbps())
            throw SchemaError(to.path("per_stream_cap_gbps"), "must equal the largest rate in rates_gbps");
    }
    else if (!preset)
        throw SchemaError(o.path("rate_table"), "custom link needs a rate_table");
    o.finish();

    try
    {
        link.validate();
    }
    catch (const InvalidConfig &e)
    {
        throw SchemaError(ptr, e.what());
    }
    return link;
}

json write_link(const LinkConfig &link, std::optional<LinkPreset> preset)
{
    json j;
    j["preset"] = preset ? std::string(to_string(*preset)) : std::string("custom");
    j["eirp_dbm"] = link.eirp_dbm;
    j["rx_gain_dbi"] = link.rx_gain_dbi;
    j["bandwidth_hz"] = link.bandwidth_hz;
    j["noise_figure_db"] = link.noise_figure_db;
    j["implementation_efficiency"] = link.implementation_efficiency;
    j["fade_margin_db"] = link.fade_margin_db;
    j["rate_mode"] = std::string(to_string(link.rate_mode));
    j["rate_table"] = {{"thresholds_db", link.rate_table.thresholds_db()},
                       {"rates_gbps", link.rate_table.rates_gbps()},
                       {"per_stream_cap_gbps", link.rate_table.per_stream_cap_gbps()}};
    return j;
}

// ------------------------------------------------------------------ UAV / users

UavPose read_uav(const json *node, const std::string &ptr)
{
    UavPose pose = UavPose::field_trial();
    if (!node)
        return pose;
    Object o(*node, ptr);
    pose.height_m = o.number("h", pose.height_m);
    pose.ground_offset_m = o.number("d0", pose.ground_offset_m);
    if (const json *m = o.child("mounts"))
    {
        if (!m->is_array() || m->empty())
            throw SchemaError(o.path("mounts"), "expected a non-empty array of mounts");
        pose.mounts.clear();
        for (std::size_t k = 0; k < m->size(); ++k)
        {
            Object mo((*m)[k], o.path("mounts") + "/" + std::to_string(k));
            BfmMount mount;
            mount.yaw_deg = mo.number("yaw_deg", mount.yaw_deg);
            mount.tilt_deg = mo.number("tilt_deg", mount.tilt_deg);
            mo.finish();
            pose.mounts.push_back(mount);
        }
    }
    o.finish();
    if (!(pose.height_m > 0.0))
        throw SchemaError(o.path("h"), "UAV height must be positive");
    return pose;
}

json write_uav(const UavPose &pose)
{
    json mounts = json::array();
    for (const auto &m : pose.mounts)
        mounts.push_back({{"yaw_deg", m.yaw_deg}, {"tilt_deg", m.tilt_deg}});
    return {{"h", pose.height_m}, {"d0", pose.ground_offset_m}, {"mounts", mounts}};
}

std::vector<GroundPoint> read_users(const json *node, const std::string &ptr)
{
    if (!node)
        return {{0.0, 0.0}};
    if (!node->is_array() || node->empty())
        throw SchemaError(ptr, "expected a non-empty array of [x, y] positions");
    std::vector<GroundPoint> users;
    for (std::size_t k = 0; k < node->size(); ++k)
    {
        const json &p = (*node)[k];
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            throw SchemaError(ptr + "/" + std::to_string(k), "expected [x, y] in metres");
        users.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return users;
}

json write_users(const std::vector<GroundPoint> &users)
{
    json j = json::array();
    for (const auto &u : users)
        j.push_back({u.x, u.y});
    return j;
}

// ------------------------------------------------------------------ UE layout

UeLayout read_ue_layout(const json &node, const std::string &ptr)
{
    if (node.is_string())
    {
        if (node.get<std::string>() != "reference")
            throw SchemaError(ptr, "expected \"reference\" or a layout object");
        return UeLayout::reference();
    }
    UeLayout layout = UeLayout::reference();
    Object o(node, ptr);
    layout.wavelength_mm = o.number("wavelength_mm", layout.wavelength_mm);
    layout.module_width_mm = o.number("module_width_mm", layout.module_width_mm);
    layout.module_length_mm = o.number("module_length_mm", layout.module_length_mm);
    if (const json *b = o.child("bfms"))
    {
        if (!b->is_array())
            throw SchemaError(o.path("bfms"), "expected an array");
        layout.bfms.clear();
        for (std::size_t k = 0; k < b->size(); ++k)
        {
            Object bo((*b)[k], o.path("bfms") + "/" + std::to_string(k));
            BfmPlacement p;
            p.x_mm = bo.number("x_mm", 0.0);
            p.y_mm = bo.number("y_mm", 0.0);
            p.orientation_deg = bo.number("orientation_deg", 0.0);
            bo.finish();
            layout.bfms.push_back(p);
        }
    }
    o.finish();
    if (!(layout.wavelength_mm > 0.0) || !(layout.module_width_mm > 0.0) || !(layout.module_length_mm > 0.0))
        throw SchemaError(ptr, "wavelength and module dimensions must be positive");
    return layout;
}

json write_ue_layout(const UeLayout &layout)
{
    json bfms = json::array();
    for (const auto &b : layout.bfms)
        bfms.push_back({{"x_mm", b.x_mm}, {"y_mm", b.y_mm}, {"orientation_deg", b.orientation_deg}});
    return {{"wavelength_mm", layout.wavelength_mm},
            {"module_width_mm", layout.module_width_mm},
            {"module_length_mm", layout.module_length_mm},
            {"bfms", bfms}};
}

json write_layout_report(const LayoutReport &report)
{
    json checks = json::array();
    for (const auto &c : report.checks)
        checks.push_back({{"rule", c.rule},
                          {"pass", c.pass},
                          {"measured", c.measured},
                          {"required", c.required},
                          {"margin", c.margin}});
    return {{"all_pass", report.all_pass()}, {"checks", checks}};
}

// ------------------------------------------------------------------ sweep

SweepRange read_sweep(const json *node, const std::string &ptr, int &n_streams)
{
    SweepRange range;
    if (!node)
        return range;
    Object o(*node, ptr);
    range.d_min_m = o.number("d_min", range.d_min_m);
    range.d_max_m = o.number("d_max", range.d_max_m);
    range.step_m = o.number("step", range.step_m);
    const auto n = o.integer("n_streams").value_or(n_streams);
    o.finish();
    if (n < 1 || n > 64)
        throw SchemaError(o.path("n_streams"), "n_streams must lie in [1, 64]");
    n_streams = static_cast<int>(n);
    if (!(range.d_min_m >= 1.0))
        throw SchemaError(o.path("d_min"), "d_min must be >= 1 m");
    if (!(range.step_m > 0.0))
        throw SchemaError(o.path("step"), "step must be positive");
    if (!(range.d_max_m >= range.d_min_m))
        throw SchemaError(o.path("d_max"), "d_max must be >= d_min");
    if ((range.d_max_m - range.d_min_m) / range.step_m > 1e6)
        throw SchemaError(o.path("step"), "sweep would exceed 10^6 points");
    return range;
}

json write_sweep(const SweepRange &range, int n_streams)
{
    return {{"d_min", range.d_min_m}, {"d_max", range.d_max_m}, {"step", range.step_m}, {"n_streams", n_streams}};
}

std::string_view to_string(FadingMode mode)
{
    return mode == FadingMode::median ? "median" : "stochastic";
}

std::optional<FadingMode> fading_from_string(std::string_view text)
{
    if (text == "median")
        return FadingMode::median;
    if (text == "stochastic")
        return FadingMode::stochastic;
    return std::nullopt;
}

} // namespace dpasim::config
