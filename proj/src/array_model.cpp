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

#include "dpasim/array_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dpasim/errors.hpp"

namespace dpasim
{

Vec3 unit_vector(const Direction &dir)
{
    const double th = deg2rad(dir.theta_deg), ph = deg2rad(dir.phi_deg);
    return {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
}

Vec3 unit_vector(const Steering &steer)
{
    const double az = deg2rad(steer.azimuth_deg), el = deg2rad(steer.elevation_deg);
    return {std::cos(el) * std::sin(az), std::sin(el), std::cos(el) * std::cos(az)};
}

Direction to_direction(const Vec3 &u)
{
    const Vec3 n = normalized(u);
    double phi = rad2deg(std::atan2(n.y, n.x));
    if (phi < 0.0)
        phi += 360.0;
    return {rad2deg(std::acos(std::clamp(n.z, -1.0, 1.0))), phi};
}

Steering to_steering(const Vec3 &u)
{
    const Vec3 n = normalized(u);
    return {rad2deg(std::atan2(n.x, n.z)), rad2deg(std::asin(std::clamp(n.y, -1.0, 1.0)))};
}

double ElementModel::field_amplitude(double cos_theta) const
{
    if (kind == Kind::isotropic)
        return 1.0;
    if (cos_theta <= 0.0)
        return 0.0;
    return std::pow(cos_theta, 0.5 * q);
}

ArrayGeometry::ArrayGeometry(int rows, int cols, double spacing_row, double spacing_col, ElementModel element,
                             double steering_limit_az_deg, double steering_limit_el_deg)
    : rows_(rows), cols_(cols), spacing_row_(spacing_row), spacing_col_(spacing_col), element_(element),
      limit_az_(steering_limit_az_deg), limit_el_(steering_limit_el_deg)
{
    if (rows < 1 || cols < 1)
        throw InvalidGeometry("array needs at least one row and one column, got " + std::to_string(rows) + "x" +
                              std::to_string(cols));
    if (!(spacing_row > 0.0) || !(spacing_col > 0.0) || !std::isfinite(spacing_row) || !std::isfinite(spacing_col))
        throw InvalidGeometry("element spacing must be positive and finite");
    if (element.kind == ElementModel::Kind::cosine && !(element.q >= 0.0 && std::isfinite(element.q)))
        throw InvalidGeometry("cosine element exponent must be >= 0");
    for (double lim : {steering_limit_az_deg, steering_limit_el_deg})
        if (!(lim >= 0.0 && lim <= 90.0))
            throw InvalidGeometry("steering limits must lie in [0, 90] deg");

    x_.reserve(element_count());
    y_.reserve(element_count());
    const double x0 = 0.5 * (cols - 1), y0 = 0.5 * (rows - 1);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
        {
            x_.push_back((c - x0) * spacing_col);
            y_.push_back((r - y0) * spacing_row);
        }
}

ArrayGeometry ArrayGeometry::bfm_default()
{
    return {2, 10, 0.5, 0.5, ElementModel::cosine(1.0), 60.0, 60.0};
}

bool ArrayGeometry::within_limits(const Steering &steer) const
{
    return std::abs(steer.azimuth_deg) <= limit_az_ && std::abs(steer.elevation_deg) <= limit_el_;
}

ArrayGeometry build_array(int rows, int cols, double spacing_row, double spacing_col, ElementModel element,
                          double steering_limit_az_deg, double steering_limit_el_deg)
{
    return {rows, cols, spacing_row, spacing_col, element, steering_limit_az_deg, steering_limit_el_deg};
}

namespace
{
// AF for a direction given by its unit vector and a precomputed steering vector.
cplx array_factor_uv(const ArrayGeometry &geom, const Vec3 &us, const Vec3 &u)
{
    const double kx = 2.0 * pi * (u.x - us.x), ky = 2.0 * pi * (u.y - us.y);
    const auto xs = geom.element_x(), ys = geom.element_y();
    cplx sum{0.0, 0.0};
    for (std::size_t n = 0; n < xs.size(); ++n)
    {
        const double phase = kx * xs[n] + ky * ys[n];
        sum += cplx{std::cos(phase), std::sin(phase)};
    }
    return sum;
}
} // namespace

cplx array_factor(const ArrayGeometry &geom, const Steering &steer, const Direction &dir)
{
    return array_factor_uv(geom, unit_vector(steer), unit_vector(dir));
}

cplx far_field(const ArrayGeometry &geom, const Steering &steer, const Direction &dir)
{
    const Vec3 u = unit_vector(dir);
    return geom.element().field_amplitude(u.z) * array_factor_uv(geom, unit_vector(steer), u);
}

SphereGrid::SphereGrid(double resolution_deg) : res_(resolution_deg)
{
    if (!(resolution_deg > 0.0) || resolution_deg > 180.0)
        throw InvalidResolution("resolution must lie in (0, 180] deg");
    const double steps = 180.0 / resolution_deg;
    const double rounded = std::round(steps);
    if (std::abs(steps - rounded) > 1e-9 * rounded)
        throw InvalidResolution("resolution " + std::to_string(resolution_deg) + " deg does not divide 180 deg");
    const auto n = static_cast<std::size_t>(rounded);
    n_theta_ = n + 1;
    n_phi_ = 2 * n;

    const double half = 0.5 * deg2rad(res_), dphi = deg2rad(res_);
    weights_.resize(n_theta_);
    for (std::size_t i = 0; i < n_theta_; ++i)
    {
        const double th = deg2rad(theta_deg(i));
        const double lo = std::max(0.0, th - half), hi = std::min(pi, th + half);
        weights_[i] = (std::cos(lo) - std::cos(hi)) * dphi;
    }
}

RadiationPattern::RadiationPattern(SphereGrid grid, std::vector<cplx> e_theta, std::vector<cplx> e_phi,
                                   double frequency_ghz)
    : grid_(std::move(grid)), e_theta_(std::move(e_theta)), e_phi_(std::move(e_phi)), frequency_ghz_(frequency_ghz)
{
    if (e_theta_.size() != grid_.size() || e_phi_.size() != grid_.size())
        throw GridMismatch("pattern has " + std::to_string(e_theta_.size()) + "/" + std::to_string(e_phi_.size()) +
                           " samples, grid needs " + std::to_string(grid_.size()));
    if (!(frequency_ghz > 0.0))
        throw InvalidConfig("pattern frequency must be positive");

    total_power_ = 0.0;
    for (std::size_t i = 0; i < grid_.n_theta(); ++i)
    {
        double row = 0.0;
        for (std::size_t j = 0; j < grid_.n_phi(); ++j)
            row += power_density(i, j);
        total_power_ += grid_.weight(i) * row;
    }
}

double RadiationPattern::power_density(std::size_t i_theta, std::size_t j_phi) const
{
    const std::size_t k = grid_.index(i_theta, j_phi);
    return std::norm(e_theta_[k]) + std::norm(e_phi_[k]);
}

double RadiationPattern::power_density(const Direction &dir) const
{
    const double res = grid_.resolution_deg();
    const double t = std::clamp(dir.theta_deg, 0.0, 180.0) / res;
    double p = std::fmod(dir.phi_deg, 360.0);
    if (p < 0.0)
        p += 360.0;
    p /= res;

    const auto i0 = std::min(static_cast<std::size_t>(t), grid_.n_theta() - 2);
    const auto j0 = static_cast<std::size_t>(p) % grid_.n_phi();
    const std::size_t j1 = (j0 + 1) % grid_.n_phi();
    const double ft = t - static_cast<double>(i0), fp = p - std::floor(p);

    const double a = (1.0 - fp) * power_density(i0, j0) + fp * power_density(i0, j1);
    const double b = (1.0 - fp) * power_density(i0 + 1, j0) + fp * power_density(i0 + 1, j1);
    return (1.0 - ft) * a + ft * b;
}

RadiationPattern synthesize_pattern(const ArrayGeometry &geom, const Steering &steer, double resolution_deg,
                                    double frequency_ghz)
{
    SphereGrid grid(resolution_deg);
    std::vector<cplx> e_theta(grid.size()), e_phi(grid.size(), cplx{0.0, 0.0});
    const Vec3 us = unit_vector(steer);
    for (std::size_t i = 0; i < grid.n_theta(); ++i)
        for (std::size_t j = 0; j < grid.n_phi(); ++j)
        {
            const Vec3 u = unit_vector(Direction{grid.theta_deg(i), grid.phi_deg(j)});
            e_theta[grid.index(i, j)] = geom.element().field_amplitude(u.z) * array_factor_uv(geom, us, u);
        }
    return {std::move(grid), std::move(e_theta), std::move(e_phi), frequency_ghz};
}

namespace
{
void require_power(const RadiationPattern &pattern)
{
    const double p = pattern.total_power();
    if (!(p > 0.0) || !std::isfinite(p))
        throw DegeneratePattern("pattern has zero or non-finite total radiated power");
}
} // namespace

double directivity_dbi(const RadiationPattern &pattern, const Direction &dir)
{
    require_power(pattern);
    return db10(4.0 * pi * pattern.power_density(dir) / pattern.total_power());
}

Direction peak_direction(const RadiationPattern &pattern)
{
    const auto &g = pattern.grid();
    double best = -1.0;
    for (std::size_t i = 0; i < g.n_theta(); ++i)
        for (std::size_t j = 0; j < g.n_phi(); ++j)
            best = std::max(best, pattern.power_density(i, j));
    // Ties (within rounding) resolve to the first node in theta-major order.
    for (std::size_t i = 0; i < g.n_theta(); ++i)
        for (std::size_t j = 0; j < g.n_phi(); ++j)
            if (pattern.power_density(i, j) >= best * (1.0 - 1e-12))
                return {g.theta_deg(i), g.phi_deg(j)};
    return {};
}

double peak_directivity_dbi(const RadiationPattern &pattern)
{
    return directivity_dbi(pattern, peak_direction(pattern));
}

double hpbw_deg(const RadiationPattern &pattern, Cut cut)
{
    require_power(pattern);
    const auto &g = pattern.grid();
    const double res = g.resolution_deg();
    const std::size_t half_turn = g.n_theta() - 1; // samples per 180 deg

    std::size_t j0 = 0;
    if (cut == Cut::elevation)
    {
        if (g.n_phi() % 4 != 0)
            throw InvalidResolution("elevation cut at phi = 90 deg is not on the grid");
        j0 = g.n_phi() / 4;
    }
    const std::size_t j1 = (j0 + half_turn) % g.n_phi();

    // Walk the full great circle: psi in [0, 360) with psi <= 180 on the
    // phi = j0 half-plane and psi > 180 on the opposite half-plane.
    const std::size_t m = 2 * half_turn;
    std::vector<double> db(m);
    for (std::size_t k = 0; k < m; ++k)
    {
        const double p = k <= half_turn ? pattern.power_density(k, j0) : pattern.power_density(m - k, j1);
        db[k] = p > 0.0 ? db10(p) : -400.0;
    }

    const auto peak = static_cast<std::size_t>(std::max_element(db.begin(), db.end()) - db.begin());
    const double level = db[peak] + db10(0.5);

    // Distance (in samples) from the peak to the -3 dB crossing along one side.
    auto crossing = [&](int dir) -> double
    {
        double prev = db[peak];
        for (std::size_t s = 1; s <= half_turn; ++s)
        {
            const auto mm = static_cast<std::ptrdiff_t>(m);
            const auto k = static_cast<std::size_t>(
                ((static_cast<std::ptrdiff_t>(peak) + dir * static_cast<std::ptrdiff_t>(s)) % mm + mm) % mm);
            if (db[k] < level)
                return static_cast<double>(s - 1) + (prev - level) / (prev - db[k]);
            prev = db[k];
        }
        throw NoBeamwidth("cut never drops 3 dB below its maximum");
    };
    return (crossing(+1) + crossing(-1)) * res;
}

double eirp_dbm(const RadiationPattern &pattern, double tx_power_dbm)
{
    return tx_power_dbm + peak_directivity_dbi(pattern);
}

} // namespace dpasim
