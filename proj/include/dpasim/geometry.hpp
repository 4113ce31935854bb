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

#include <cmath>
#include <numbers>

namespace dpasim
{

inline constexpr double pi = std::numbers::pi;

constexpr double deg2rad(double deg) { return deg * pi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / pi; }

inline double db10(double linear) { return 10.0 * std::log10(linear); }
inline double from_db10(double db) { return std::pow(10.0, db / 10.0); }

struct Vec3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend constexpr Vec3 operator+(const Vec3 &a, const Vec3 &b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Vec3 operator-(const Vec3 &a, const Vec3 &b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr Vec3 operator*(double s, const Vec3 &a) { return {s * a.x, s * a.y, s * a.z}; }
    friend constexpr bool operator==(const Vec3 &, const Vec3 &) = default;
};

constexpr double dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3 &a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3 &a) { return (1.0 / norm(a)) * a; }

// Position on the ground plane (z = 0), metres.
struct GroundPoint
{
    double x = 0.0;
    double y = 0.0;
    friend constexpr bool operator==(const GroundPoint &, const GroundPoint &) = default;
};

} // namespace dpasim
