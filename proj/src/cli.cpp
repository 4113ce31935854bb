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

#include "dpasim/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "dpasim/array_model.hpp"
#include "dpasim/config.hpp"
#include "dpasim/correlation.hpp"
#include "dpasim/deployment.hpp"
#include "dpasim/errors.hpp"
#include "dpasim/link.hpp"
#include "dpasim/number_format.hpp"
#include "dpasim/pattern_io.hpp"

namespace dpasim
{

std::string_view to_string(Command command)
{
    switch (command)
    {
    case Command::pattern:
        return "pattern";
    case Command::ecc:
        return "ecc";
    case Command::pathloss:
        return "pathloss";
    case Command::sweep:
        return "sweep";
    case Command::scenario:
        return "scenario";
    }
    return "pathloss";
}

std::optional<Command> command_from_string(std::string_view text)
{
    for (auto c : {Command::pattern, Command::ecc, Command::pathloss, Command::sweep, Command::scenario})
        if (text == to_string(c))
            return c;
    return std::nullopt;
}

namespace
{
using config::json;
using config::Object;

std::string num(double v)
{
    return format_number(v);
}

json num_or_null(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

struct Output
{
    json echoed;  // resolved configuration
    json results; // headline numbers
    std::string csv;
    std::string headline; // printed to `out`
};

struct Common
{
    std::uint64_t seed = 0;
    double resolution_deg = 1.0;
    FadingMode fading = FadingMode::median;
};

Common read_common(Object &o, const RunConfig &rc)
{
    Common c;
    c.seed = o.unsigned_integer("seed").value_or(0);
    c.resolution_deg = o.number("resolution_deg", 1.0);
    if (const auto f = o.string("fading"))
    {
        const auto mode = config::fading_from_string(*f);
        if (!mode)
            throw SchemaError(o.path("fading"), "expected \"median\" or \"stochastic\"");
        c.fading = *mode;
    }
    if (rc.seed)
        c.seed = *rc.seed;
    if (rc.resolution_deg)
        c.resolution_deg = *rc.resolution_deg;
    if (rc.fading)
        c.fading = *rc.fading;
    try
    {
        SphereGrid check(c.resolution_deg);
    }
    catch (const InvalidResolution &e)
    {
        throw SchemaError(o.path("resolution_deg"), e.what());
    }
    return c;
}

void write_common(json &j, const Common &c)
{
    j["seed"] = c.seed;
    j["resolution_deg"] = c.resolution_deg;
    j["fading"] = std::string(config::to_string(c.fading));
}

double peak_gain_dbi(const ArrayGeometry &array, double resolution_deg)
{
    return peak_directivity_dbi(synthesize_pattern(array, Steering{}, resolution_deg));
}

// ------------------------------------------------------------------ pattern

Output run_pattern(const json &doc, const RunConfig &rc)
{
    Object o(doc, "");
    const Common common = read_common(o, rc);
    const ArrayGeometry array = config::read_array(o.child("array"), "/array");
    Steering steer;
    if (const json *s = o.child("steering"))
    {
        Object so(*s, "/steering");
        steer.azimuth_deg = so.number("azimuth_deg", 0.0);
        steer.elevation_deg = so.number("elevation_deg", 0.0);
        so.finish();
    }
    const double freq = o.number("frequency_ghz", 60.0);
    const auto tx_power = o.number("tx_power_dbm");
    const double eirp_target = o.number("eirp_target_dbm", 21.0);
    const auto displacement = o.numbers("displacement_wavelengths");
    o.finish();
    if (!(freq > 0.0))
        throw SchemaError("/frequency_ghz", "frequency must be positive");
    if (displacement && displacement->size() != 3)
        throw SchemaError("/displacement_wavelengths", "expected [x, y, z]");

    RadiationPattern pattern = synthesize_pattern(array, steer, common.resolution_deg, freq);
    if (displacement)
        pattern = apply_displacement(pattern, Vec3{(*displacement)[0], (*displacement)[1], (*displacement)[2]});

    const double peak = peak_directivity_dbi(pattern);
    const Direction peak_dir = peak_direction(pattern);
    const double tx = tx_power.value_or(eirp_target - peak);
    auto beamwidth = [&](Cut cut) -> json
    {
        try
        {
            return hpbw_deg(pattern, cut);
        }
        catch (const NoBeamwidth &)
        {
            return nullptr;
        }
        catch (const InvalidResolution &)
        {
            return nullptr;
        }
    };

    Output out;
    write_common(out.echoed, common);
    out.echoed["array"] = config::write_array(array);
    out.echoed["steering"] = {{"azimuth_deg", steer.azimuth_deg}, {"elevation_deg", steer.elevation_deg}};
    out.echoed["frequency_ghz"] = freq;
    out.echoed["tx_power_dbm"] = tx;
    out.echoed["eirp_target_dbm"] = eirp_target;
    if (displacement)
        out.echoed["displacement_wavelengths"] = *displacement;

    out.results["element_count"] = array.element_count();
    out.results["steering_within_limits"] = array.within_limits(steer);
    out.results["peak_directivity_dbi"] = peak;
    out.results["peak_direction"] = {{"theta_deg", peak_dir.theta_deg}, {"phi_deg", peak_dir.phi_deg}};
    out.results["hpbw_azimuth_deg"] = beamwidth(Cut::azimuth);
    out.results["hpbw_elevation_deg"] = beamwidth(Cut::elevation);
    out.results["eirp_dbm"] = eirp_dbm(pattern, tx);
    out.results["total_power"] = pattern.total_power();

    std::ostringstream csv;
    write_pattern_csv(csv, pattern);
    out.csv = csv.str();
    out.headline = fmt::format("peak directivity {:.2f} dBi, EIRP {:.2f} dBm\n", peak, eirp_dbm(pattern, tx));
    return out;
}

// ------------------------------------------------------------------ ecc

RadiationPattern load_pattern(const std::string &path, double freq)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw SchemaError("/patterns", "cannot read pattern file '" + path + "'");
    return read_pattern_csv(in, freq);
}

Output run_ecc(const json &doc, const RunConfig &rc)
{
    Object o(doc, "");
    const Common common = read_common(o, rc);
    std::vector<std::string> files = rc.inputs;
    if (const json *p = o.child("patterns"))
    {
        if (!p->is_array() || p->size() != 2 || !(*p)[0].is_string() || !(*p)[1].is_string())
            throw SchemaError("/patterns", "expected two pattern CSV paths");
        if (files.empty())
            files = {(*p)[0].get<std::string>(), (*p)[1].get<std::string>()};
    }
    const double freq = o.number("frequency_ghz", 60.0);
    o.finish();
    if (files.size() != 2)
        throw SchemaError("/patterns", "ecc needs exactly two pattern CSV files");

    const RadiationPattern a = load_pattern(files[0], freq), b = load_pattern(files[1], freq);
    const double rho = ecc(a, b);

    Output out;
    write_common(out.echoed, common);
    out.echoed["patterns"] = files;
    out.echoed["frequency_ghz"] = freq;
    out.results["ecc"] = rho;
    out.results["resolution_deg"] = a.grid().resolution_deg();
    out.csv = "ecc\n" + num(rho) + "\n";
    out.headline = fmt::format("{:.6f}\n", rho);
    return out;
}

// ------------------------------------------------------------------ pathloss

Output run_pathloss(const json &doc, const RunConfig &rc)
{
    Object o(doc, "");
    const Common common = read_common(o, rc);
    config::ChannelSetup channel = config::read_channel(o.child("channel"), "/channel");
    std::vector<double> distances;
    if (const auto d = o.number("distance_m"))
        distances.push_back(*d);
    if (const auto ds = o.numbers("distances_m"))
        distances.insert(distances.end(), ds->begin(), ds->end());
    o.finish();

    if (rc.channel)
    {
        const auto name = scenario_from_string(*rc.channel);
        if (!name || *name == ScenarioName::custom)
            throw SchemaError("/channel/preset", "unknown channel preset '" + *rc.channel + "'");
        channel.scenario = ChannelScenario::preset(*name, channel.scenario.frequency_ghz);
    }
    if (rc.frequency_ghz)
    {
        if (!(*rc.frequency_ghz > 0.0))
            throw SchemaError("/channel/frequency_ghz", "frequency must be positive");
        channel.scenario.frequency_ghz = *rc.frequency_ghz;
    }
    if (rc.distance_m)
        distances = {*rc.distance_m};
    if (distances.empty())
        throw SchemaError("/distance_m", "pathloss needs a distance");
    for (std::size_t k = 0; k < distances.size(); ++k)
        if (!(distances[k] >= 1.0))
            throw SchemaError(distances.size() == 1 ? "/distance_m" : "/distances_m/" + std::to_string(k),
                              "close-in model needs d >= 1 m");

    Output out;
    write_common(out.echoed, common);
    out.echoed["channel"] = config::write_channel(channel);
    out.echoed["distances_m"] = distances;

    std::string csv = "d_m,pl_db,shadow_db\n";
    json rows = json::array();
    for (std::size_t k = 0; k < distances.size(); ++k)
    {
        const double pl = path_loss_db(channel.scenario, distances[k]);
        const double sf = shadow_sample_db(channel.scenario, common.seed, k, common.fading);
        csv += num(distances[k]) + "," + num(pl) + "," + num(sf) + "\n";
        rows.push_back({{"d_m", distances[k]}, {"pl_db", pl}, {"shadow_db", sf}});
        out.headline += fmt::format("{:.3f}\n", pl + sf);
    }
    out.results["path_loss"] = rows;
    out.csv = csv;
    return out;
}

// ------------------------------------------------------------------ sweep

Output run_sweep(const json &doc, const RunConfig &rc)
{
    Object o(doc, "");
    const Common common = read_common(o, rc);
    const ArrayGeometry array = config::read_array(o.child("array"), "/array");
    const config::ChannelSetup channel = config::read_channel(o.child("channel"), "/channel");
    json default_link = {{"preset", "ue-poc"}};
    const json *link_node = o.child("link");
    if (!link_node)
        link_node = &default_link;
    const auto preset = config::read_link_preset(link_node, "/link");
    const LinkConfig link = config::read_link(link_node, "/link", peak_gain_dbi(array, common.resolution_deg));
    int n_streams = 4;
    const SweepRange range = config::read_sweep(o.child("sweep"), "/sweep", n_streams);
    std::optional<UeLayout> layout;
    if (const json *l = o.child("ue_layout"))
        layout = config::read_ue_layout(*l, "/ue_layout");
    o.finish();

    const auto curve = sweep_distance(channel.scenario, link, channel.housing, n_streams, range, common.fading,
                                      common.seed);

    Output out;
    write_common(out.echoed, common);
    out.echoed["array"] = config::write_array(array);
    out.echoed["channel"] = config::write_channel(channel);
    out.echoed["link"] = config::write_link(link, preset);
    out.echoed["sweep"] = config::write_sweep(range, n_streams);
    if (layout)
        out.echoed["ue_layout"] = config::write_ue_layout(*layout);

    std::string csv = "d_m,pl_db,snr_db,stream_rate_gbps,aggregate_gbps\n";
    double peak = 0.0;
    for (const auto &p : curve)
    {
        csv += fmt::format("{},{},{},{},{}\n", num(p.d_m), num(p.pl_db), num(p.snr_db), num(p.stream_rate_gbps),
                           num(p.aggregate_gbps));
        peak = std::max(peak, p.aggregate_gbps);
    }
    out.csv = csv;
    out.results["points"] = curve.size();
    out.results["first_aggregate_gbps"] = curve.front().aggregate_gbps;
    out.results["peak_aggregate_gbps"] = peak;
    out.results["last_aggregate_gbps"] = curve.back().aggregate_gbps;
    out.results["noise_dbm"] = noise_power_dbm(link.bandwidth_hz, link.noise_figure_db);
    if (layout)
        out.results["ue_layout"] = config::write_layout_report(validate_ue_layout(*layout));
    out.headline = fmt::format("{} points, peak aggregate {:.4f} Gbps\n", curve.size(), peak);
    return out;
}

// ------------------------------------------------------------------ scenario

Output run_scenario(const json &doc, const RunConfig &rc)
{
    Object o(doc, "");
    const Common common = read_common(o, rc);
    MuScenario sc;
    sc.array = config::read_array(o.child("array"), "/array");
    const json default_channel = {{"preset", "A2G-LoS"}};
    const json *channel_node = o.child("channel");
    const config::ChannelSetup channel = config::read_channel(channel_node ? channel_node : &default_channel, "/channel");
    const json default_link = {{"preset", "uav-abs"}};
    const json *link_node = o.child("link");
    if (!link_node)
        link_node = &default_link;
    const auto preset = config::read_link_preset(link_node, "/link");
    sc.link = config::read_link(link_node, "/link", peak_gain_dbi(sc.array, common.resolution_deg));
    sc.uav = config::read_uav(o.child("uav"), "/uav");
    sc.users = config::read_users(o.child("users"), "/users");
    if (const json *a = o.child("assignment"))
    {
        if (!a->is_array())
            throw SchemaError("/assignment", "expected an array of user indices");
        for (std::size_t k = 0; k < a->size(); ++k)
        {
            if (!(*a)[k].is_number_unsigned())
                throw SchemaError("/assignment/" + std::to_string(k), "expected a user index");
            sc.assignment.push_back((*a)[k].get<std::size_t>());
        }
    }
    sc.interference = o.boolean("interference").value_or(true);
    std::optional<UeLayout> layout;
    if (const json *l = o.child("ue_layout"))
        layout = config::read_ue_layout(*l, "/ue_layout");
    o.finish();

    sc.channel = channel.scenario;
    sc.housing = channel.housing;
    sc.fading = common.fading;
    sc.seed = common.seed;
    sc.resolution_deg = common.resolution_deg;
    try
    {
        sc.beam_users();
    }
    catch (const InvalidConfig &e)
    {
        throw SchemaError(sc.assignment.empty() ? "/users" : "/assignment", e.what());
    }

    const ScenarioResult res = evaluate_scenario(sc);

    Output out;
    write_common(out.echoed, common);
    out.echoed["array"] = config::write_array(sc.array);
    out.echoed["channel"] = config::write_channel(channel);
    out.echoed["link"] = config::write_link(sc.link, preset);
    out.echoed["uav"] = config::write_uav(sc.uav);
    out.echoed["users"] = config::write_users(sc.users);
    out.echoed["assignment"] = sc.beam_users();
    out.echoed["interference"] = sc.interference;
    if (layout)
        out.echoed["ue_layout"] = config::write_ue_layout(*layout);

    std::string csv = "beam,user,x_m,y_m,slant_m,requested_az_deg,requested_el_deg,applied_az_deg,applied_el_deg,"
                      "clamped,tx_gain_dbi,pl_db,shadow_db,signal_dbm,interference_dbm,noise_dbm,snr_db,sinr_db,"
                      "rate_gbps\n";
    json streams = json::array();
    for (const auto &s : res.streams)
    {
        const auto &p = s.pointing;
        const GroundPoint &u = sc.users[p.user];
        double interference_mw = 0.0;
        for (double i : s.interference_dbm)
            interference_mw += from_db10(i);
        const double interference = s.interference_dbm.empty() ? -INFINITY : db10(interference_mw);
        csv += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", p.beam, p.user, num(u.x),
                           num(u.y), num(s.slant_m), num(p.requested.azimuth_deg), num(p.requested.elevation_deg),
                           num(p.applied.azimuth_deg), num(p.applied.elevation_deg), p.clamped ? 1 : 0,
                           num(s.tx_gain_dbi), num(s.pl_db), num(s.shadow_db), num(s.signal_dbm), num(interference),
                           num(s.noise_dbm), num(s.snr_db), num(s.sinr_db), num(s.rate_gbps));
        streams.push_back({{"beam", p.beam},
                           {"user", p.user},
                           {"applied_az_deg", p.applied.azimuth_deg},
                           {"applied_el_deg", p.applied.elevation_deg},
                           {"clamped", p.clamped},
                           {"sinr_db", s.sinr_db},
                           {"interference_dbm", num_or_null(interference)},
                           {"rate_gbps", s.rate_gbps}});
    }
    json users = json::array();
    for (const auto &u : res.users)
        users.push_back({{"user", u.user}, {"slant_m", u.slant_m}, {"streams", u.streams}, {"rate_gbps", u.rate_gbps}});
    json beta = json::array();
    for (const auto &b : res.beta)
        beta.push_back({{"a", b.a}, {"b", b.b}, {"beta_deg", b.beta_deg}});

    out.csv = csv;
    out.results["aggregate_gbps"] = res.aggregate_gbps;
    out.results["users"] = users;
    out.results["streams"] = streams;
    out.results["beta"] = beta;
    out.results["reference_gain_dbi"] = res.reference_gain_dbi;
    out.results["any_clamped"] =
        std::any_of(res.streams.begin(), res.streams.end(), [](const auto &s) { return s.pointing.clamped; });
    if (layout)
        out.results["ue_layout"] = config::write_layout_report(validate_ue_layout(*layout));
    out.headline = fmt::format("aggregate {:.4f} Gbps, {} user(s)\n", res.aggregate_gbps, res.users.size());
    return out;
}

void error_record(std::ostream &err, std::string_view kind, const std::string &field, const std::string &message)
{
    json e = {{"error", {{"kind", kind}, {"field", field}, {"message", message}}}};
    err << e.dump() << '\n';
}

void write_text(const std::filesystem::path &path, const std::string &text)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    f << text;
    if (!f)
        throw std::runtime_error("failed writing '" + path.string() + "'");
}
} // namespace

int run(const RunConfig &rc, std::ostream &out, std::ostream &err)
{
    Output result;
    try
    {
        const json doc = rc.config_path ? config::load_file(*rc.config_path) : json::object();
        switch (rc.command)
        {
        case Command::pattern:
            result = run_pattern(doc, rc);
            break;
        case Command::ecc:
            result = run_ecc(doc, rc);
            break;
        case Command::pathloss:
            result = run_pathloss(doc, rc);
            break;
        case Command::sweep:
            result = run_sweep(doc, rc);
            break;
        case Command::scenario:
            result = run_scenario(doc, rc);
            break;
        }
    }
    catch (const SchemaError &e)
    {
        error_record(err, "schema", e.field(), e.message());
        return exit_schema;
    }
    catch (const DegeneratePattern &e)
    {
        error_record(err, "numerical", "", e.what());
        return exit_numerical;
    }
    catch (const NoBeamwidth &e)
    {
        error_record(err, "numerical", "", e.what());
        return exit_numerical;
    }
    catch (const UndefinedProjection &e)
    {
        error_record(err, "numerical", "", e.what());
        return exit_numerical;
    }
    catch (const Error &e)
    {
        error_record(err, "invalid_input", "", e.what());
        return exit_schema;
    }

    if (rc.out_path)
    {
        json summary;
        summary["tool"] = "dpasim";
        summary["version"] = std::string(tool_version);
        summary["command"] = std::string(to_string(rc.command));
        summary["config"] = result.echoed;
        summary["results"] = result.results;
        try
        {
            const std::filesystem::path dir(*rc.out_path);
            std::filesystem::create_directories(dir);
            write_text(dir / (std::string(to_string(rc.command)) + ".csv"), result.csv);
            write_text(dir / "summary.json", summary.dump(2) + "\n");
        }
        catch (const std::exception &e)
        {
            error_record(err, "io", "", e.what());
            return exit_io;
        }
    }
    out << result.headline;
    return exit_ok;
}

} // namespace dpasim
