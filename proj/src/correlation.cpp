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

#include "dpasim/correlation.hpp"

#include <cmath>
#include <vector>

#include "dpasim/errors.hpp"

namespace dpasim
{

double ecc(const RadiationPattern &p1, const RadiationPattern &p2)
{
    if (!(p1.grid() == p2.grid()))
        throw GridMismatch("ECC needs patterns on identical grids");
    if (std::abs(p1.frequency_ghz() - p2.frequency_ghz()) > 1e-9 * p1.frequency_ghz())
        throw GridMismatch("ECC needs patterns at identical frequency");
    const double n1 = p1.total_power(), n2 = p2.total_power();
    if (!(n1 > 0.0) || !(n2 > 0.0) || !std::isfinite(n1) || !std::isfinite(n2))
        throw DegeneratePattern("ECC of a zero-power pattern is undefined");

    const auto &g = p1.grid();
    const auto et1 = p1.e_theta(), ep1 = p1.e_phi(), et2 = p2.e_theta(), ep2 = p2.e_phi();
    cplx cross{0.0, 0.0};
    for (std::size_t i = 0; i < g.n_theta(); ++i)
    {
        cplx row{0.0, 0.0};
        for (std::size_t j = 0; j < g.n_phi(); ++j)
        {
            const std::size_t k = g.index(i, j);
            row += et1[k] * std::conj(et2[k]) + ep1[k] * std::conj(ep2[k]);
        }
        cross += g.weight(i) * row;
    }

    double rho = std::norm(cross) / (n1 * n2);
    if (rho > 1.0 && rho - 1.0 <= 1e-12)
        rho = 1.0;
    return rho;
}

RadiationPattern apply_displacement(const RadiationPattern &pattern, const Vec3 &offset_wavelengths)
{
    const auto &g = pattern.grid();
    std::vector<cplx> et(pattern.e_theta().begin(), pattern.e_theta().end());
    std::vector<cplx> ep(pattern.e_phi().begin(), pattern.e_phi().end());
    for (std::size_t i = 0; i < g.n_theta(); ++i)
        for (std::size_t j = 0; j < g.n_phi(); ++j)
        {
            const double phase = 2.0 * pi * dot(unit_vector(Direction{g.theta_deg(i), g.phi_deg(j)}), offset_wavelengths);
            const cplx shift{std::cos(phase), std::sin(phase)};
            const std::size_t k = g.index(i, j);
            et[k] *= shift;
            ep[k] *= shift;
        }
    return {g, std::move(et), std::move(ep), pattern.frequency_ghz()};
}

} // namespace dpasim
