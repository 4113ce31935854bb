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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dpasim/array_model.hpp"
#include "dpasim/channel.hpp"
#include "dpasim/geometry.hpp"
#include "dpasim/link.hpp"

namespace dpasim
{

// ---------------------------------------------------------------- UE layout

// One beamforming module on the handset rear housing. Orientation 0 deg puts
// the module's long side along the housing x axis.
struct BfmPlacement
{
    double x_mm = 0.0;
    double y_mm = 0.0;
    double orientation_deg = 0.0;
};

// Four modules: indices 0, 1 are the top pair, 2, 3 the bottom pair.
struct UeLayout
{
    std::vector<BfmPlacement> bfms;
    double module_width_mm = 25.0; // long side
    double module_length_mm = 9.0;
    double wavelength_mm = 5.0;

    // 19.9 mm top pair along the top frame, perpendicular bottom pair with an
    // 11 mm vertical gap, lambda = 5 mm.
    static UeLayout reference();
};

struct LayoutCheck
{
    std::string rule;
    bool pass = false;
    double measured = 0.0; // in wavelengths, or degrees for orientation rules
    double required = 0.0;
    double margin = 0.0; // measured - required (signed)
};

struct LayoutReport
{
    std::vector<LayoutCheck> checks;
    bool all_pass() const;
};

// Checks: top pair edge-to-edge spacing >= 4 lambda (0.05 lambda tolerance),
// bottom pair vertical edge gap > 2 lambda, bottom modules perpendicular to the
// top modules (1 deg tolerance). Never throws; a malformed layout fails checks.
LayoutReport validate_ue_layout(const UeLayout &layout);

// Minimum distance between two module footprints (0 if they overlap), mm.
double edge_to_edge_mm(const UeLayout &layout, const BfmPlacement &a, const BfmPlacement &b);

// ---------------------------------------------------------------- UAV pose

// Boresight of a BFM on a UAV arm: yaw from the ground +x axis, tilted down
// from the horizontal. The module's column (azimuth) axis stays horizontal.
struct BfmMount
{
    double yaw_deg = 0.0;
    double tilt_deg = 45.0;
};

// Ground frame: origin at the reference user, UAV nadir at (-d0, 0).
struct UavPose
{
    double height_m = 35.0;
    double ground_offset_m = 22.0;
    std::vector<BfmMount> mounts;

    // h = 35 m, d0 = 22 m, two arms yawed -45 / +45 deg, tilted 45 deg down.
    static UavPose field_trial();

    GroundPoint nadir() const { return {-ground_offset_m, 0.0}; }
    Vec3 position() const { return {-ground_offset_m, 0.0, height_m}; }

    // Throws InvalidConfig unless h > 0 and the mounts are finite.
    void validate() const;
};

// Expresses a ground-frame vector in a mount's local array frame
// (x = column axis, y = row axis, z = boresight).
Vec3 to_mount_frame(const BfmMount &mount, const Vec3 &v);

double slant_distance_m(const UavPose &pose, const GroundPoint &user);

// Angle between the ground projections of the beams towards u1 and u2, i.e.
// between the rays from the nadir point to each user, in [0, 180] deg.
// Throws UndefinedProjection if either user sits at the nadir.
double beta_deg(const UavPose &pose, const GroundPoint &u1, const GroundPoint &u2);

// ---------------------------------------------------------------- scenarios

struct MuScenario
{
    UavPose uav = UavPose::field_trial();
    std::vector<GroundPoint> users;
    // Serving user per beam (mount). Empty means beam k serves user k for
    // k < users.size(). Several beams may serve one user (single-user
    // multi-stream); beams serving the same user do not interfere.
    std::vector<std::size_t> assignment;
    ArrayGeometry array = ArrayGeometry::bfm_default();
    ChannelScenario channel = ChannelScenario::preset(ScenarioName::a2g_los);
    LinkConfig link;
    HousingMaterial housing;
    FadingMode fading = FadingMode::median;
    std::uint64_t seed = 0;
    double resolution_deg = 1.0;
    bool interference = true;

    // Resolved beam -> user map. Throws InvalidConfig for an inconsistent
    // assignment, more users than mounts or a user without a beam.
    std::vector<std::size_t> beam_users() const;
};

struct BeamPointing
{
    std::size_t beam = 0;
    std::size_t user = 0;
    Steering requested;
    Steering applied;
    bool clamped = false;
};

// Steers every active beam at its user in the mount frame, clamping each
// angle to the array's steering limits.
std::vector<BeamPointing> point_beams(const MuScenario &scenario);

struct StreamResult
{
    BeamPointing pointing;
    double slant_m = 0.0;
    double pl_db = 0.0;
    double shadow_db = 0.0;
    double tx_gain_dbi = 0.0; // beam gain towards its own user
    double signal_dbm = 0.0;
    std::vector<double> interference_dbm;
    double noise_dbm = 0.0;
    double snr_db = 0.0;
    double sinr_db = 0.0;
    double rate_gbps = 0.0;
};

struct UserResult
{
    std::size_t user = 0;
    GroundPoint position;
    double slant_m = 0.0;
    std::size_t streams = 0;
    double rate_gbps = 0.0;
};

struct PairAngle
{
    std::size_t a = 0;
    std::size_t b = 0;
    double beta_deg = 0.0;
};

struct ScenarioResult
{
    std::vector<StreamResult> streams;
    std::vector<UserResult> users;
    std::vector<PairAngle> beta; // every user pair (a < b), empty for one user
    double aggregate_gbps = 0.0;
    double reference_gain_dbi = 0.0; // unsteered peak directivity the EIRP refers to
};

// Per stream: signal through the serving beam's gain towards its user,
// interference through every beam serving another user evaluated towards the
// same user, both over the UAV-to-user close-in path loss.
ScenarioResult evaluate_scenario(const MuScenario &scenario);

// Gain (dBi) of `array` steered to `steer` towards local direction `dir`,
// normalised by the synthesized pattern's total power.
class BeamGain
{
public:
    BeamGain(const ArrayGeometry &array, const Steering &steer, double resolution_deg);
    double dbi(const Vec3 &local_direction) const;
    double peak_dbi() const { return peak_dbi_; }

private:
    ArrayGeometry array_;
    Steering steer_;
    double total_power_;
    double peak_dbi_;
};

// ---------------------------------------------------------------- sweeps

struct SweepRange
{
    double d_min_m = 1.0;
    double d_max_m = 30.0;
    double step_m = 1.0;
};

struct SweepPoint
{
    double d_m = 0.0;
    double pl_db = 0.0;
    double snr_db = 0.0;
    double stream_rate_gbps = 0.0;
    double aggregate_gbps = 0.0;
};

// Single distance of a sweep; `index` selects the shadow-fading sample.
SweepPoint evaluate_distance(const ChannelScenario &channel, const LinkConfig &link, const HousingMaterial &housing,
                             int n_streams, double d_m, FadingMode fading, std::uint64_t seed, std::uint64_t index);

// Parallel independent streams (no cross-beam interference) at
// d = d_min, d_min + step, ... <= d_max. Throws InvalidConfig for d_min < 1,
// step <= 0, d_max < d_min or n_streams < 1.
std::vector<SweepPoint> sweep_distance(const ChannelScenario &channel, const LinkConfig &link,
                                       const HousingMaterial &housing, int n_streams, const SweepRange &range,
                                       FadingMode fading = FadingMode::median, std::uint64_t seed = 0);

} // namespace dpasim
