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

#include <stdexcept>
#include <string>

namespace dpasim
{

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class InvalidGeometry : public Error
{
public:
    using Error::Error;
};

class InvalidResolution : public Error
{
public:
    using Error::Error;
};

// Zero (or non-finite) total radiated power.
class DegeneratePattern : public Error
{
public:
    using Error::Error;
};

// No -3 dB crossing on the requested cut.
class NoBeamwidth : public Error
{
public:
    using Error::Error;
};

class GridMismatch : public Error
{
public:
    using Error::Error;
};

// Input outside the validity range of a propagation model (e.g. d < 1 m).
class OutOfModelRange : public Error
{
public:
    using Error::Error;
};

class InvalidConfig : public Error
{
public:
    using Error::Error;
};

// Ground projection of a beam is undefined (user at the UAV nadir).
class UndefinedProjection : public Error
{
public:
    using Error::Error;
};

// Configuration document violates the schema; field() is a JSON pointer.
class SchemaError : public Error
{
public:
    SchemaError(std::string field, const std::string &message)
        : Error(field + ": " + message), field_(std::move(field)), message_(message)
    {
    }
    const std::string &field() const { return field_; }
    const std::string &message() const { return message_; }

private:
    std::string field_;
    std::string message_;
};

} // namespace dpasim
