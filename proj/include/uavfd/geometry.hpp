// SPDX-License-Identifier: Apache-2.0
//
// uavfd - link-level simulator for full-duplex multi-UAV links
// Copyright (C) 2026 The uavfd authors
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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace uavfd
{

// Right-handed local frame in meters: ground station at the origin, x toward
// the victim receiver, z up.
struct Position
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend constexpr bool operator==(const Position &, const Position &) = default;

    constexpr Position operator+(const Position &o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Position operator-(const Position &o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Position operator*(double s) const { return {x * s, y * s, z * s}; }

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

constexpr double dot(const Position &a, const Position &b)
{
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr Position cross(const Position &a, const Position &b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / std::numbers::pi; }

// Unit 3-vector. Construction normalizes; a zero vector is rejected.
class Direction
{
  public:
    Direction() = default;

    explicit Direction(const Position &v)
    {
        const double n = v.norm();
        if (!(n > 0.0) || !std::isfinite(n))
            throw std::invalid_argument("Direction: zero or non-finite vector");
        v_ = v * (1.0 / n);
    }

    Direction(double x, double y, double z) : Direction(Position{x, y, z}) {}

    // nullopt when the two points coincide.
    static std::optional<Direction> between(const Position &from, const Position &to)
    {
        const Position d = to - from;
        if (!(d.norm() > 0.0))
            return std::nullopt;
        return Direction(d);
    }

    const Position &vec() const { return v_; }
    double x() const { return v_.x; }
    double y() const { return v_.y; }
    double z() const { return v_.z; }

  private:
    Position v_{1.0, 0.0, 0.0};
};

inline double distance(const Position &a, const Position &b)
{
    return (b - a).norm();
}

// Angle in degrees between two directions, [0, 180].
inline double angle_between_deg(const Direction &a, const Direction &b)
{
    // atan2 form keeps precision near 0 and 180 degrees.
    const double s = cross(a.vec(), b.vec()).norm();
    const double c = dot(a.vec(), b.vec());
    return rad2deg(std::atan2(s, c));
}

// Angle between a node's boresight (node -> pointing_target) and the direction
// node -> target_pos. nullopt if either direction is degenerate.
inline std::optional<double> boresight_offset(const Position &node_pos, const Position &pointing_target,
                                              const Position &target_pos)
{
    const auto bore = Direction::between(node_pos, pointing_target);
    const auto look = Direction::between(node_pos, target_pos);
    if (!bore || !look)
        return std::nullopt;
    return angle_between_deg(*bore, *look);
}

inline std::optional<double> boresight_offset(const Position &node_pos, const Direction &boresight,
                                              const Position &target_pos)
{
    const auto look = Direction::between(node_pos, target_pos);
    if (!look)
        return std::nullopt;
    return angle_between_deg(boresight, *look);
}

// Elevation of `to` seen from `from`, degrees in [-90, 90].
inline std::optional<double> elevation_deg(const Position &from, const Position &to)
{
    const Position d = to - from;
    const double horiz = std::hypot(d.x, d.y);
    if (!(horiz > 0.0) && d.z == 0.0)
        return std::nullopt;
    return rad2deg(std::atan2(d.z, horiz));
}

} // namespace uavfd
