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

#include <iosfwd>

#include "dpasim/array_model.hpp"

namespace dpasim
{

// CSV with header "theta_deg,phi_deg,re_etheta,im_etheta,re_ephi,im_ephi",
// one row per grid node in theta-major order.
void write_pattern_csv(std::ostream &os, const RadiationPattern &pattern);

// Reads a pattern written by write_pattern_csv (or any tool using the same
// layout). The grid resolution is inferred from the phi step of the first
// theta row. Throws InvalidConfig on malformed rows and InvalidResolution if
// the samples do not form a complete regular grid.
RadiationPattern read_pattern_csv(std::istream &is, double frequency_ghz = 60.0);

} // namespace dpasim
