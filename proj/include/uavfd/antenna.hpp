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

#include "uavfd/geometry.hpp"
#include "uavfd/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace uavfd
{

enum class AntennaKind
{
    Horn,
    Dipole
};

inline std::string_view to_string(AntennaKind k)
{
    return k == AntennaKind::Horn ? "horn" : "dipole";
}

// Parametric gain pattern.
//
// Horn:   G0 - min(12 (theta / hpbw)^2, front_to_back)   [dBi]
// Dipole: G0 + 20 log10(max(cos(elevation), eps))        [dBi], omni in azimuth
//
// The quadratic main lobe puts the -3 dB point exactly at hpbw / 2. The cap
// stands in for side and back lobes, which are lumped into one level.
struct AntennaSpec
{
    AntennaKind kind = AntennaKind::Horn;
    double boresight_gain_dbi = 21.0;
    double hpbw_deg = 18.0;         // horn only
    double front_to_back_db = 45.0; // horn only

    static AntennaSpec horn(double gain_dbi = 21.0, double hpbw_deg = 18.0, double front_to_back_db = 45.0)
    {
        return AntennaSpec{AntennaKind::Horn, gain_dbi, hpbw_deg, front_to_back_db}.validated();
    }

    static AntennaSpec dipole(double gain_dbi = 2.5)
    {
        return AntennaSpec{AntennaKind::Dipole, gain_dbi, 180.0, 0.0}.validated();
    }

    const AntennaSpec &validated() const
    {
        if (!std::isfinite(boresight_gain_dbi))
            throw std::invalid_argument("AntennaSpec: boresight gain must be finite");
        if (kind == AntennaKind::Horn)
        {
            if (!(hpbw_deg > 0.0 && hpbw_deg < 180.0))
                throw std::invalid_argument("AntennaSpec: hpbw must lie in (0, 180) degrees");
            if (!(front_to_back_db > 0.0) || !std::isfinite(front_to_back_db))
                throw std::invalid_argument("AntennaSpec: front_to_back must be > 0 dB");
        }
        return *this;
    }

    // Highest gain the pattern reaches anywhere.
    double peak_gain_dbi() const { return boresight_gain_dbi; }
};

// Linear floor for the dipole elevation rolloff.
inline constexpr double dipole_floor_linear = 1e-3;

// offset: angle off boresight in degrees (sign ignored).
// elevation: elevation of the target direction in degrees (dipole only).
inline double gain_db(const AntennaSpec &spec, double offset_deg, double elevation_deg = 0.0)
{
    if (spec.kind == AntennaKind::Horn)
    {
        const double r = offset_deg / spec.hpbw_deg;
        return spec.boresight_gain_dbi - std::min(12.0 * r * r, spec.front_to_back_db);
    }
    const double c = std::cos(deg2rad(elevation_deg));
    return spec.boresight_gain_dbi + 20.0 * std::log10(std::max(c, dipole_floor_linear));
}

// Gain of an antenna at `node` with the given boresight toward `target`.
// Coincident points fall back to the boresight value.
inline double gain_toward(const AntennaSpec &spec, const Position &node, const Direction &boresight,
                          const Position &target)
{
    const double off = boresight_offset(node, boresight, target).value_or(0.0);
    const double el = elevation_deg(node, target).value_or(0.0);
    return gain_db(spec, off, el);
}

// Manual-beamforming misalignment model.
struct PointingError
{
    double sigma_deg = 0.0;
    std::uint64_t seed = 0;
};

// Rotates `boresight` by a N(0, sigma) angle about an axis drawn uniformly
// from the plane perpendicular to it. sigma == 0 is the identity.
inline Direction perturb_pointing(const Direction &boresight, const PointingError &err)
{
    if (err.sigma_deg < 0.0)
        throw std::invalid_argument("PointingError: sigma must be >= 0");
    if (err.sigma_deg == 0.0)
        return boresight;

    Rng rng(err.seed);
    const double dev = deg2rad(err.sigma_deg) * rng.normal();
    const double phi = 2.0 * std::numbers::pi * rng.uniform();

    // Orthonormal basis (u, v) perpendicular to the boresight.
    const Position &b = boresight.vec();
    const Position helper = std::abs(b.x) < 0.9 ? Position{1, 0, 0} : Position{0, 1, 0};
    const Position u = Direction(cross(b, helper)).vec();
    const Position v = cross(b, u);
    const Position tangent = u * std::cos(phi) + v * std::sin(phi);

    return Direction(b * std::cos(dev) + tangent * std::sin(dev));
}

} // namespace uavfd
