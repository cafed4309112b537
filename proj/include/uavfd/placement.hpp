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

// Position control for the interfering UAV: where on the grid it may fly
// without hurting the victim downlink, and where it hurts least.

#include "uavfd/campaign.hpp"

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace uavfd
{

enum class ObjectiveKind
{
    MinInterference,
    MaxVictimCapacity
};

inline std::optional<ObjectiveKind> parse_objective(std::string_view s)
{
    if (s == "min-interference")
        return ObjectiveKind::MinInterference;
    if (s == "max-capacity")
        return ObjectiveKind::MaxVictimCapacity;
    return std::nullopt;
}

struct PlacementObjective
{
    ObjectiveKind kind = ObjectiveKind::MaxVictimCapacity;
    double threshold_dbm = -95.0;
};

// Positions whose reported interference is at or below `threshold_dbm` (same
// comparison as coverage_fraction).
inline std::vector<Position> feasible_region(const std::vector<SweepRecord> &records, double threshold_dbm)
{
    if (records.empty())
        throw std::invalid_argument("feasible_region: no records");
    std::vector<Position> out;
    for (const auto &r : records)
        if (r.interference_power_dbm <= threshold_dbm)
            out.push_back(r.position);
    return out;
}

struct Placement
{
    SweepRecord record;
    double value = 0.0; // dBm for MinInterference, bps for MaxVictimCapacity
};

// Exhaustive arg-min / arg-max. Ties go to the lowest grid index, so the
// result does not depend on record order.
inline Placement best_record(const std::vector<SweepRecord> &records, ObjectiveKind kind)
{
    if (records.empty())
        throw std::invalid_argument("best_record: no records");
    const SweepRecord *best = nullptr;
    double best_v = 0.0;
    for (const auto &r : records)
    {
        double v = 0.0;
        bool better = false;
        if (kind == ObjectiveKind::MinInterference)
        {
            v = r.interference_power_dbm;
            better = !best || v < best_v || (v == best_v && r.index < best->index);
        }
        else
        {
            if (!r.capacity_bps)
                throw std::invalid_argument("best_record: records carry no capacity (run a capacity sweep)");
            v = *r.capacity_bps;
            better = !best || v > best_v || (v == best_v && r.index < best->index);
        }
        if (better)
        {
            best = &r;
            best_v = v;
        }
    }
    return {*best, best_v};
}

inline Placement best_position(const ScenarioConfig &s, const GridSpec &grid, const PlacementObjective &obj)
{
    auto records = run_power_sweep(s, grid);
    if (obj.kind == ObjectiveKind::MaxVictimCapacity)
        records = run_capacity_sweep(s, records);
    return best_record(records, obj.kind);
}

} // namespace uavfd
