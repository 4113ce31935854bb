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

#include "dpasim/deployment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "dpasim/errors.hpp"

namespace dpasim
{

namespace
{
using Corners = std::array<GroundPoint, 4>;

Corners footprint(const UeLayout &layout, const BfmPlacement &p)
{
    const double a = deg2rad(p.orientation_deg);
    const double hw = 0.5 * layout.module_width_mm, hl = 0.5 * layout.module_length_mm;
    const double c = std::cos(a), s = std::sin(a);
    Corners out;
    const double sx[4] = {-1, 1, 1, -1}, sy[4] = {-1, -1, 1, 1};
    for (int k = 0; k < 4; ++k)
        out[k] = {p.x_mm + c * sx[k] * hw - s * sy[k] * hl, p.y_mm + s * sx[k] * hw + c * sy[k] * hl};
    return out;
}

double point_segment(const GroundPoint &p, const GroundPoint &a, const GroundPoint &b)
{
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

// Separating-axis test for two convex quadrilaterals.
bool overlap(const Corners &a, const Corners &b)
{
    for (const Corners *poly : {&a, &b})
        for (int k = 0; k < 4; ++k)
        {
            const GroundPoint &p0 = (*poly)[k], &p1 = (*poly)[(k + 1) % 4];
            const double nx = p0.y - p1.y, ny = p1.x - p0.x;
            double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
            for (const auto &q : a)
            {
                amin = std::min(amin, nx * q.x + ny * q.y);
                amax = std::max(amax, nx * q.x + ny * q.y);
            }
            for (const auto &q : b)
            {
                bmin = std::min(bmin, nx * q.x + ny * q.y);
                bmax = std::max(bmax, nx * q.x + ny * q.y);
            }
            if (amax <= bmin || bmax <= amin)
                return false;
        }
    return true;
}

double angle_diff_mod180(double a, double b)
{
    double d = std::fmod(std::abs(a - b), 180.0);
    return d;
}
} // namespace

UeLayout UeLayout::reference()
{
    UeLayout l;
    // Top pair: centres 19.9 mm + one module width apart.
    const double top_dx = 0.5 * (19.9 + l.module_width_mm);
    l.bfms.push_back({-top_dx, 140.0, 0.0});
    l.bfms.push_back({top_dx, 140.0, 0.0});
    // Bottom pair on either side, rotated 90 deg, 11 mm vertical edge gap.
    l.bfms.push_back({-30.0, 40.0, 90.0});
    l.bfms.push_back({30.0, 40.0 + l.module_width_mm + 11.0, 90.0});
    return l;
}

bool LayoutReport::all_pass() const
{
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const LayoutCheck &c) { return c.pass; });
}

double edge_to_edge_mm(const UeLayout &layout, const BfmPlacement &a, const BfmPlacement &b)
{
    const Corners ca = footprint(layout, a), cb = footprint(layout, b);
    if (overlap(ca, cb))
        return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 4; ++k)
        for (int e = 0; e < 4; ++e)
        {
            best = std::min(best, point_segment(ca[k], cb[e], cb[(e + 1) % 4]));
            best = std::min(best, point_segment(cb[k], ca[e], ca[(e + 1) % 4]));
        }
    return best;
}

LayoutReport validate_ue_layout(const UeLayout &layout)
{
    LayoutReport report;
    const bool sized = layout.bfms.size() == 4;
    report.checks.push_back({"bfm_count", sized, static_cast<double>(layout.bfms.size()), 4.0,
                             static_cast<double>(layout.bfms.size()) - 4.0});
    if (!sized || !(layout.wavelength_mm > 0.0))
    {
        report.checks.back().pass = false;
        return report;
    }
    const double lambda = layout.wavelength_mm;
    const auto &b = layout.bfms;

    const double top = edge_to_edge_mm(layout, b[0], b[1]) / lambda;
    report.checks.push_back({"top_pair_edge_spacing", top >= 4.0 - 0.05, top, 4.0, top - 4.0});

    double lo[2], hi[2];
    for (int k = 0; k < 2; ++k)
    {
        const Corners c = footprint(layout, b[2 + k]);
        lo[k] = hi[k] = c[0].y;
        for (const auto &p : c)
        {
            lo[k] = std::min(lo[k], p.y);
            hi[k] = std::max(hi[k], p.y);
        }
    }
    const double gap = std::max({0.0, lo[1] - hi[0], lo[0] - hi[1]}) / lambda;
    report.checks.push_back({"bottom_pair_vertical_spacing", gap > 2.0, gap, 2.0, gap - 2.0});

    double worst = 90.0;
    for (int bottom = 2; bottom < 4; ++bottom)
        for (int t = 0; t < 2; ++t)
        {
            const double d = angle_diff_mod180(b[bottom].orientation_deg, b[t].orientation_deg);
            if (std::abs(d - 90.0) > std::abs(worst - 90.0))
                worst = d;
        }
    report.checks.push_back({"bottom_perpendicular_to_top", std::abs(worst - 90.0) <= 1.0, worst, 90.0, worst - 90.0});
    return report;
}

UavPose UavPose::field_trial()
{
    return {35.0, 22.0, {{-45.0, 45.0}, {45.0, 45.0}}};
}

void UavPose::validate() const
{
    if (!(height_m > 0.0) || !std::isfinite(height_m))
        throw InvalidConfig("UAV height must be positive");
    if (!std::isfinite(ground_offset_m))
        throw InvalidConfig("UAV ground offset must be finite");
    for (const auto &m : mounts)
        if (!std::isfinite(m.yaw_deg) || !std::isfinite(m.tilt_deg))
            throw InvalidConfig("mount angles must be finite");
}

Vec3 to_mount_frame(const BfmMount &mount, const Vec3 &v)
{
    const double y = deg2rad(mount.yaw_deg), t = deg2rad(mount.tilt_deg);
    const Vec3 boresight{std::cos(t) * std::cos(y), std::cos(t) * std::sin(y), -std::sin(t)};
    const Vec3 col_axis{-std::sin(y), std::cos(y), 0.0};
    const Vec3 row_axis{std::sin(t) * std::cos(y), std::sin(t) * std::sin(y), std::cos(t)};
    return {dot(v, col_axis), dot(v, row_axis), dot(v, boresight)};
}

double slant_distance_m(const UavPose &pose, const GroundPoint &user)
{
    const GroundPoint n = pose.nadir();
    return std::sqrt(pose.height_m * pose.height_m + (user.x - n.x) * (user.x - n.x) + (user.y - n.y) * (user.y - n.y));
}

double beta_deg(const UavPose &pose, const GroundPoint &u1, const GroundPoint &u2)
{
    const GroundPoint n = pose.nadir();
    const double ax = u1.x - n.x, ay = u1.y - n.y, bx = u2.x - n.x, by = u2.y - n.y;
    const double la = std::hypot(ax, ay), lb = std::hypot(bx, by);
    if (la == 0.0 || lb == 0.0)
        throw UndefinedProjection("a user at the UAV nadir has no beam projection on the ground");
    // atan2 of cross and dot stays accurate near 0 and 180 deg.
    return rad2deg(std::atan2(std::abs(ax * by - ay * bx), ax * bx + ay * by));
}

std::vector<std::size_t> MuScenario::beam_users() const
{
    if (users.empty())
        throw InvalidConfig("scenario needs at least one user");
    if (users.size() > uav.mounts.size())
        throw InvalidConfig("more users (" + std::to_string(users.size()) + ") than BFM mounts (" +
                            std::to_string(uav.mounts.size()) + ")");
    std::vector<std::size_t> map = assignment;
    if (map.empty())
        for (std::size_t k = 0; k < users.size(); ++k)
            map.push_back(k);
    if (map.size() > uav.mounts.size())
        throw InvalidConfig("assignment lists more beams than BFM mounts");
    std::vector<bool> served(users.size(), false);
    for (std::size_t u : map)
    {
        if (u >= users.size())
            throw InvalidConfig("assignment refers to unknown user " + std::to_string(u));
        served[u] = true;
    }
    for (std::size_t u = 0; u < users.size(); ++u)
        if (!served[u])
            throw InvalidConfig("user " + std::to_string(u) + " has no serving beam");
    return map;
}

namespace
{
Vec3 ray_to(const UavPose &pose, const GroundPoint &user)
{
    return Vec3{user.x, user.y, 0.0} - pose.position();
}
} // namespace

std::vector<BeamPointing> point_beams(const MuScenario &scenario)
{
    scenario.uav.validate();
    const auto map = scenario.beam_users();
    const double lim_az = scenario.array.steering_limit_az_deg(), lim_el = scenario.array.steering_limit_el_deg();
    std::vector<BeamPointing> out;
    for (std::size_t k = 0; k < map.size(); ++k)
    {
        BeamPointing p;
        p.beam = k;
        p.user = map[k];
        p.requested = to_steering(to_mount_frame(scenario.uav.mounts[k], ray_to(scenario.uav, scenario.users[p.user])));
        p.applied = {std::clamp(p.requested.azimuth_deg, -lim_az, lim_az),
                     std::clamp(p.requested.elevation_deg, -lim_el, lim_el)};
        p.clamped = p.applied.azimuth_deg != p.requested.azimuth_deg ||
                    p.applied.elevation_deg != p.requested.elevation_deg;
        out.push_back(p);
    }
    return out;
}

BeamGain::BeamGain(const ArrayGeometry &array, const Steering &steer, double resolution_deg)
    : array_(array), steer_(steer)
{
    const RadiationPattern pattern = synthesize_pattern(array, steer, resolution_deg);
    total_power_ = pattern.total_power();
    if (!(total_power_ > 0.0))
        throw DegeneratePattern("beam pattern has zero radiated power");
    peak_dbi_ = peak_directivity_dbi(pattern);
}

double BeamGain::dbi(const Vec3 &local_direction) const
{
    const cplx e = far_field(array_, steer_, to_direction(local_direction));
    return db10(4.0 * pi * std::norm(e) / total_power_);
}

ScenarioResult evaluate_scenario(const MuScenario &scenario)
{
    scenario.channel.validate();
    scenario.link.validate();
    const auto pointing = point_beams(scenario);
    const auto &users = scenario.users;

    ScenarioResult result;
    for (std::size_t a = 0; a < users.size(); ++a)
        for (std::size_t b = a + 1; b < users.size(); ++b)
            result.beta.push_back({a, b, beta_deg(scenario.uav, users[a], users[b])});

    result.reference_gain_dbi = BeamGain(scenario.array, Steering{}, scenario.resolution_deg).peak_dbi();
    std::vector<BeamGain> beams;
    for (const auto &p : pointing)
        beams.emplace_back(scenario.array, p.applied, scenario.resolution_deg);

    const double housing = housing_attenuation_db(scenario.housing);
    const double noise = noise_power_dbm(scenario.link.bandwidth_hz, scenario.link.noise_figure_db);

    std::vector<double> slant(users.size()), pl(users.size()), shadow(users.size());
    for (std::size_t u = 0; u < users.size(); ++u)
    {
        slant[u] = slant_distance_m(scenario.uav, users[u]);
        shadow[u] = shadow_sample_db(scenario.channel, scenario.seed, u, scenario.fading);
        pl[u] = path_loss_db(scenario.channel, slant[u]);
    }

    // Power received at user u from beam k, with the link EIRP referring to
    // the unsteered peak gain.
    auto power_at = [&](std::size_t k, std::size_t u)
    {
        const Vec3 local = to_mount_frame(scenario.uav.mounts[k], ray_to(scenario.uav, users[u]));
        const double gain = beams[k].dbi(local) - result.reference_gain_dbi;
        return received_power_dbm(scenario.link, pl[u] + shadow[u], housing) + gain;
    };

    for (std::size_t k = 0; k < pointing.size(); ++k)
    {
        const std::size_t u = pointing[k].user;
        StreamResult s;
        s.pointing = pointing[k];
        s.slant_m = slant[u];
        s.pl_db = pl[u];
        s.shadow_db = shadow[u];
        s.tx_gain_dbi = beams[k].dbi(to_mount_frame(scenario.uav.mounts[k], ray_to(scenario.uav, users[u])));
        s.signal_dbm = power_at(k, u);
        s.noise_dbm = noise;
        if (scenario.interference)
            for (std::size_t i = 0; i < pointing.size(); ++i)
                if (pointing[i].user != u)
                    s.interference_dbm.push_back(power_at(i, u));
        s.snr_db = sinr_db(StreamBudget{s.signal_dbm, {}, noise});
        s.sinr_db = sinr_db(StreamBudget{s.signal_dbm, s.interference_dbm, noise});
        s.rate_gbps = stream_rate_gbps(s.sinr_db, scenario.link);
        result.streams.push_back(std::move(s));
    }

    for (std::size_t u = 0; u < users.size(); ++u)
    {
        UserResult r{u, users[u], slant[u], 0, 0.0};
        for (const auto &s : result.streams)
            if (s.pointing.user == u)
            {
                ++r.streams;
                r.rate_gbps += s.rate_gbps;
            }
        result.users.push_back(r);
    }
    std::vector<double> rates;
    for (const auto &s : result.streams)
        rates.push_back(s.rate_gbps);
    result.aggregate_gbps = aggregate_gbps(rates);
    return result;
}

SweepPoint evaluate_distance(const ChannelScenario &channel, const LinkConfig &link, const HousingMaterial &housing,
                             int n_streams, double d_m, FadingMode fading, std::uint64_t seed, std::uint64_t index)
{
    SweepPoint p;
    p.d_m = d_m;
    p.pl_db = path_loss_db(channel, d_m);
    const double shadow = shadow_sample_db(channel, seed, index, fading);
    const double rx = received_power_dbm(link, p.pl_db + shadow, housing_attenuation_db(housing));
    p.snr_db = sinr_db(StreamBudget{rx, {}, noise_power_dbm(link.bandwidth_hz, link.noise_figure_db)});
    p.stream_rate_gbps = stream_rate_gbps(p.snr_db, link);
    const std::vector<double> rates(static_cast<std::size_t>(n_streams), p.stream_rate_gbps);
    p.aggregate_gbps = aggregate_gbps(rates);
    return p;
}

std::vector<SweepPoint> sweep_distance(const ChannelScenario &channel, const LinkConfig &link,
                                       const HousingMaterial &housing, int n_streams, const SweepRange &range,
                                       FadingMode fading, std::uint64_t seed)
{
    if (!(range.d_min_m >= 1.0) || !std::isfinite(range.d_min_m))
        throw InvalidConfig("sweep d_min must be >= 1 m");
    if (!(range.step_m > 0.0) || !std::isfinite(range.step_m))
        throw InvalidConfig("sweep step must be positive");
    if (!(range.d_max_m >= range.d_min_m) || !std::isfinite(range.d_max_m))
        throw InvalidConfig("sweep d_max must be >= d_min");
    if (n_streams < 1)
        throw InvalidConfig("sweep needs at least one stream");
    channel.validate();
    link.validate();

    const auto count = static_cast<std::uint64_t>(std::floor((range.d_max_m - range.d_min_m) / range.step_m + 1e-9)) + 1;
    std::vector<SweepPoint> curve;
    curve.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k)
        curve.push_back(evaluate_distance(channel, link, housing, n_streams,
                                          range.d_min_m + static_cast<double>(k) * range.step_m, fading, seed, k));
    return curve;
}

} // namespace dpasim
