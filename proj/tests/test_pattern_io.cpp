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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "dpasim/array_model.hpp"
#include "dpasim/correlation.hpp"
#include "dpasim/errors.hpp"
#include "dpasim/pattern_io.hpp"

using namespace dpasim;

TEST_CASE("csv round trip is lossless")
{
    const auto p = apply_displacement(synthesize_pattern(ArrayGeometry::bfm_default(), {30, -10}, 5.0), {0.3, 0, 0});
    std::stringstream ss;
    write_pattern_csv(ss, p);
    const std::string first = ss.str();
    const auto q = read_pattern_csv(ss);
    CHECK(q.grid() == p.grid());
    for (std::size_t k = 0; k < p.e_theta().size(); ++k)
    {
        CHECK(q.e_theta()[k] == p.e_theta()[k]);
        CHECK(q.e_phi()[k] == p.e_phi()[k]);
    }
    std::stringstream again;
    write_pattern_csv(again, q);
    CHECK(again.str() == first);
}

TEST_CASE("csv header and shape")
{
    std::stringstream ss;
    write_pattern_csv(ss, synthesize_pattern(ArrayGeometry::bfm_default(), {}, 30.0));
    std::string header;
    std::getline(ss, header);
    CHECK(header == "theta_deg,phi_deg,re_etheta,im_etheta,re_ephi,im_ephi");
    std::size_t rows = 0;
    for (std::string line; std::getline(ss, line);)
        ++rows;
    CHECK(rows == 7u * 12u);
}

TEST_CASE("malformed csv is rejected")
{
    std::stringstream bad_header("theta,phi\n0,0\n");
    CHECK_THROWS_AS(read_pattern_csv(bad_header), InvalidConfig);
    std::stringstream bad_number("theta_deg,phi_deg,re_etheta,im_etheta,re_ephi,im_ephi\n0,0,x,0,0,0\n");
    CHECK_THROWS_AS(read_pattern_csv(bad_number), InvalidConfig);
    std::stringstream truncated("theta_deg,phi_deg,re_etheta,im_etheta,re_ephi,im_ephi\n0,0,1,0,0,0\n0,90,1,0,0,0\n");
    CHECK_THROWS(read_pattern_csv(truncated));
}
