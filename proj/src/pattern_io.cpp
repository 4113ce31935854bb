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

#include "dpasim/pattern_io.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "dpasim/errors.hpp"
#include "dpasim/number_format.hpp"

namespace dpasim
{

namespace
{
constexpr const char *header = "theta_deg,phi_deg,re_etheta,im_etheta,re_ephi,im_ephi";

struct Row
{
    double v[6];
};

Row parse_row(const std::string &line, std::size_t line_no)
{
    Row row{};
    std::size_t pos = 0;
    for (int c = 0; c < 6; ++c)
    {
        const std::size_t end = line.find(',', pos);
        if ((end == std::string::npos) != (c == 5))
            throw InvalidConfig(fmt::format("pattern CSV line {}: expected 6 columns", line_no));
        const std::string cell = line.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        try
        {
            std::size_t used = 0;
            row.v[c] = std::stod(cell, &used);
            if (used != cell.size() && cell.find_first_not_of(" \t\r", used) != std::string::npos)
                throw std::invalid_argument(cell);
        }
        catch (const std::exception &)
        {
            throw InvalidConfig(fmt::format("pattern CSV line {}: bad number '{}'", line_no, cell));
        }
        pos = end + 1;
    }
    return row;
}
} // namespace

void write_pattern_csv(std::ostream &os, const RadiationPattern &pattern)
{
    const auto &g = pattern.grid();
    const auto et = pattern.e_theta(), ep = pattern.e_phi();
    os << header << '\n';
    for (std::size_t i = 0; i < g.n_theta(); ++i)
        for (std::size_t j = 0; j < g.n_phi(); ++j)
        {
            const std::size_t k = g.index(i, j);
            os << format_number(g.theta_deg(i)) << ',' << format_number(g.phi_deg(j)) << ','
               << format_number(et[k].real()) << ',' << format_number(et[k].imag()) << ','
               << format_number(ep[k].real()) << ',' << format_number(ep[k].imag()) << '\n';
        }
}

RadiationPattern read_pattern_csv(std::istream &is, double frequency_ghz)
{
    std::string line;
    if (!std::getline(is, line))
        throw InvalidConfig("pattern CSV is empty");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != header)
        throw InvalidConfig(fmt::format("pattern CSV header must be '{}'", header));

    std::vector<Row> rows;
    std::size_t line_no = 1;
    while (std::getline(is, line))
    {
        ++line_no;
        if (line.empty() || line == "\r")
            continue;
        rows.push_back(parse_row(line, line_no));
    }
    if (rows.size() < 2)
        throw InvalidResolution("pattern CSV has too few samples for a grid");

    std::size_t n_phi = 0;
    while (n_phi < rows.size() && rows[n_phi].v[0] == rows[0].v[0])
        ++n_phi;
    if (n_phi < 2)
        throw InvalidResolution("cannot infer the phi step from the first theta row");

    SphereGrid grid(360.0 / static_cast<double>(n_phi));
    if (grid.n_phi() != n_phi || rows.size() != grid.size())
        throw InvalidResolution(fmt::format("pattern CSV has {} samples, a {} deg grid needs {}", rows.size(),
                                            grid.resolution_deg(), grid.size()));

    std::vector<cplx> e_theta(grid.size()), e_phi(grid.size());
    for (std::size_t i = 0; i < grid.n_theta(); ++i)
        for (std::size_t j = 0; j < grid.n_phi(); ++j)
        {
            const std::size_t k = grid.index(i, j);
            const Row &r = rows[k];
            if (std::abs(r.v[0] - grid.theta_deg(i)) > 1e-6 || std::abs(r.v[1] - grid.phi_deg(j)) > 1e-6)
                throw InvalidResolution(fmt::format("pattern CSV row {} is at ({}, {}), expected ({}, {})", k + 2,
                                                    r.v[0], r.v[1], grid.theta_deg(i), grid.phi_deg(j)));
            e_theta[k] = {r.v[2], r.v[3]};
            e_phi[k] = {r.v[4], r.v[5]};
        }
    return {std::move(grid), std::move(e_theta), std::move(e_phi), frequency_ghz};
}

} // namespace dpasim
