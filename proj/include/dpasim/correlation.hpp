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

#include "dpasim/array_model.hpp"

namespace dpasim
{

// Envelope correlation coefficient of two far-field patterns, assuming a
// uniform multipath environment with balanced polarisation:
//
//   |int E1 . E2* dOmega|^2 / (int |E1|^2 dOmega * int |E2|^2 dOmega)
//
// with E1 . E2* = e_theta1 e_theta2* + e_phi1 e_phi2*. Both patterns must share
// grid and frequency (GridMismatch otherwise); zero-power inputs throw
// DegeneratePattern. The result lies in [0, 1].
double ecc(const RadiationPattern &p1, const RadiationPattern &p2);

// Phase-shifts a pattern as if its phase centre moved by `offset_wavelengths`
// (in the pattern's local frame): E(u) -> E(u) exp(j 2 pi u . d).
// The correlation formula has no displacement term of its own, so spatially
// separated sub-arrays are compared through displaced patterns.
RadiationPattern apply_displacement(const RadiationPattern &pattern, const Vec3 &offset_wavelengths);

} // namespace dpasim
