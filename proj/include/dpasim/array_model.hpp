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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "dpasim/geometry.hpp"

namespace dpasim
{

using cplx = std::complex<double>;

// Angular convention used throughout the array model
// ---------------------------------------------------
// - Local array frame: columns along x, rows along y, boresight along +z.
// - theta is measured from boresight (0 deg = boresight, 180 deg = back side),
//   phi from the +x axis towards +y.
// - The azimuth cut is the x-z plane (phi = 0 / 180 deg), the elevation cut
//   is the y-z plane (phi = 90 / 270 deg).
// - A steering (azimuth, elevation) points at
//   u = (cos(el) sin(az), sin(el), cos(el) cos(az)).

struct Direction
{
    double theta_deg = 0.0;
    double phi_deg = 0.0;
};

struct Steering
{
    double azimuth_deg = 0.0;
    double elevation_deg = 0.0;
};

Vec3 unit_vector(const Direction &dir);
Vec3 unit_vector(const Steering &steer);
Direction to_direction(const Vec3 &u); // u need not be normalised
Steering to_steering(const Vec3 &u);   // u need not be normalised

// Element radiation model. The cosine model has power pattern cos^q(theta)
// over the forward hemisphere and no back lobe.
struct ElementModel
{
    enum class Kind
    {
        isotropic,
        cosine
    };
    Kind kind = Kind::cosine;
    double q = 1.0;

    static ElementModel isotropic() { return {Kind::isotropic, 0.0}; }
    static ElementModel cosine(double q) { return {Kind::cosine, q}; }

    // Field amplitude (e_theta) for a direction with cos(theta) = cos_theta.
    double field_amplitude(double cos_theta) const;
};

/*!
 * Uniform rectangular array of identical, uniformly weighted elements.
 *
 * Spacings are in free-space wavelengths. Element positions are centred on
 * the array phase centre so that symmetric lattices give mirror-symmetric
 * patterns. Instances are immutable once constructed.
 */
class ArrayGeometry
{
public:
    // Throws InvalidGeometry for counts < 1, non-positive spacing, a cosine
    // exponent < 0 or steering limits outside [0, 90] deg.
    ArrayGeometry(int rows, int cols, double spacing_row, double spacing_col, ElementModel element,
                  double steering_limit_az_deg, double steering_limit_el_deg);

    // 2 x 10 beamforming module at half-wave spacing, cos element, +-60 deg limits.
    static ArrayGeometry bfm_default();

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double spacing_row() const { return spacing_row_; }
    double spacing_col() const { return spacing_col_; }
    const ElementModel &element() const { return element_; }
    double steering_limit_az_deg() const { return limit_az_; }
    double steering_limit_el_deg() const { return limit_el_; }
    std::size_t element_count() const { return static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_); }

    // Element (x, y) positions in wavelengths, row-major.
    std::span<const double> element_x() const { return x_; }
    std::span<const double> element_y() const { return y_; }

    bool within_limits(const Steering &steer) const;

private:
    int rows_;
    int cols_;
    double spacing_row_;
    double spacing_col_;
    ElementModel element_;
    double limit_az_;
    double limit_el_;
    std::vector<double> x_;
    std::vector<double> y_;
};

ArrayGeometry build_array(int rows, int cols, double spacing_row, double spacing_col, ElementModel element,
                          double steering_limit_az_deg, double steering_limit_el_deg);

// Coherent sum over all elements with conjugate-phase steering weights.
// |AF| <= element_count() with equality in the steered direction.
cplx array_factor(const ArrayGeometry &geom, const Steering &steer, const Direction &dir);

// Element pattern times array factor, as an e_theta amplitude.
cplx far_field(const ArrayGeometry &geom, const Steering &steer, const Direction &dir);

/*!
 * Regular (theta, phi) sampling of the full sphere.
 *
 * Nodes: theta_i = i * res for i = 0 .. 180/res (poles included) and
 * phi_j = j * res for j = 0 .. 360/res - 1. Quadrature is a node-centred
 * midpoint rule: node i owns the theta band [theta_i - res/2, theta_i + res/2]
 * clipped to [0, 180] deg and its solid angle is integrated exactly, so the
 * weights sum to 4 pi.
 */
class SphereGrid
{
public:
    // Throws InvalidResolution unless resolution_deg > 0 divides 180 deg evenly.
    explicit SphereGrid(double resolution_deg);

    double resolution_deg() const { return res_; }
    std::size_t n_theta() const { return n_theta_; }
    std::size_t n_phi() const { return n_phi_; }
    std::size_t size() const { return n_theta_ * n_phi_; }
    std::size_t index(std::size_t i_theta, std::size_t j_phi) const { return i_theta * n_phi_ + j_phi; }

    double theta_deg(std::size_t i) const { return static_cast<double>(i) * res_; }
    double phi_deg(std::size_t j) const { return static_cast<double>(j) * res_; }

    // Solid angle owned by one node in theta row i (sr).
    double weight(std::size_t i) const { return weights_[i]; }

    friend bool operator==(const SphereGrid &a, const SphereGrid &b) { return a.n_theta_ == b.n_theta_; }

private:
    double res_;
    std::size_t n_theta_;
    std::size_t n_phi_;
    std::vector<double> weights_;
};

/*!
 * Sampled complex far field with two polarisation components.
 *
 * Samples are stored theta-major (index = i_theta * n_phi + j_phi). The total
 * radiated power is computed once at construction.
 */
class RadiationPattern
{
public:
    RadiationPattern(SphereGrid grid, std::vector<cplx> e_theta, std::vector<cplx> e_phi, double frequency_ghz);

    const SphereGrid &grid() const { return grid_; }
    std::span<const cplx> e_theta() const { return e_theta_; }
    std::span<const cplx> e_phi() const { return e_phi_; }
    double frequency_ghz() const { return frequency_ghz_; }

    double power_density(std::size_t i_theta, std::size_t j_phi) const;

    // Bilinear interpolation of |E|^2 between grid nodes.
    double power_density(const Direction &dir) const;

    // Quadrature of |e_theta|^2 + |e_phi|^2 over 4 pi.
    double total_power() const { return total_power_; }

private:
    SphereGrid grid_;
    std::vector<cplx> e_theta_;
    std::vector<cplx> e_phi_;
    double frequency_ghz_;
    double total_power_;
};

// Element pattern x array factor over the full sphere (pure e_theta).
RadiationPattern synthesize_pattern(const ArrayGeometry &geom, const Steering &steer, double resolution_deg = 1.0,
                                    double frequency_ghz = 60.0);

// 4 pi U(dir) / P_total in dBi. Throws DegeneratePattern for zero power.
double directivity_dbi(const RadiationPattern &pattern, const Direction &dir);

// Grid node of maximum power density (first in theta-major order on ties).
Direction peak_direction(const RadiationPattern &pattern);
double peak_directivity_dbi(const RadiationPattern &pattern);

enum class Cut
{
    azimuth,
    elevation
};

// Half-power beamwidth of the main lobe on a principal cut. The crossings
// are interpolated linearly (in dB) between grid samples. Throws NoBeamwidth
// if the cut never drops 3 dB below its maximum, InvalidResolution if the
// elevation cut does not fall on grid nodes.
double hpbw_deg(const RadiationPattern &pattern, Cut cut);

// Transmit power plus peak directivity.
double eirp_dbm(const RadiationPattern &pattern, double tx_power_dbm);

} // namespace dpasim
