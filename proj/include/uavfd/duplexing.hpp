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

// Cross-UAV channel reuse: every channel carries the uplink of one UAV and the
// downlink of its partner, so the system as a whole is in-band full duplex
// while no single UAV transmits and receives on the same channel.

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace uavfd
{

struct Channel
{
    int label = 0;                 // 1-based, ordered by slot ("Ch1", "Ch2", ...)
    int slot = 0;                  // frequency slot index in the band
    double center_frequency_hz = 0.0;
};

struct UavAssignment
{
    int uplink = 0;   // channel label
    int downlink = 0; // channel label
};

struct ChannelPlan
{
    int n_uavs = 0;
    int min_separation = 2;
    std::vector<Channel> channels;           // sorted by label
    std::vector<UavAssignment> assignments;  // index = UAV index (0-based)
    std::vector<std::pair<int, int>> pairs;  // 0-based UAV indices

    const Channel *channel(int label) const
    {
        for (const auto &c : channels)
            if (c.label == label)
                return &c;
        return nullptr;
    }
};

struct InterferenceEdge
{
    int source_uav = 0; // transmitting on its uplink
    int victim_uav = 0; // receiving its downlink
    int channel = 0;    // label

    friend bool operator==(const InterferenceEdge &, const InterferenceEdge &) = default;
};

struct ChannelPlanOptions
{
    int min_separation = 2;
    int available_slots = 0; // 0: unbounded band
    double base_frequency_hz = 5.7e9;
    double slot_spacing_hz = 10e6;
};

// UAVs are paired (0,1), (2,3), ...; a trailing odd UAV gets two channels of
// its own. With K channel groups, group j occupies slots j and j + max(K, s),
// which keeps every UAV's uplink/downlink pair at least s slots apart.
inline ChannelPlan build_channel_plan(int n_uavs, const ChannelPlanOptions &opt = {})
{
    if (n_uavs < 1)
        throw std::invalid_argument("build_channel_plan: need at least one UAV");
    if (opt.min_separation < 1)
        throw std::invalid_argument("build_channel_plan: min_separation must be >= 1");

    const int groups = (n_uavs + 1) / 2;
    const int gap = std::max(groups, opt.min_separation);
    const int highest_slot = groups - 1 + gap;
    if (opt.available_slots > 0 && highest_slot >= opt.available_slots)
        throw std::invalid_argument("build_channel_plan: " + std::to_string(n_uavs) + " UAVs with separation " +
                                    std::to_string(opt.min_separation) + " need " +
                                    std::to_string(highest_slot + 1) + " slots, only " +
                                    std::to_string(opt.available_slots) + " available");

    ChannelPlan plan;
    plan.n_uavs = n_uavs;
    plan.min_separation = opt.min_separation;

    // Lower slots get labels 1..K, upper slots K+1..2K.
    for (int j = 0; j < groups; ++j)
        plan.channels.push_back({j + 1, j, opt.base_frequency_hz + j * opt.slot_spacing_hz});
    for (int j = 0; j < groups; ++j)
        plan.channels.push_back(
            {groups + j + 1, j + gap, opt.base_frequency_hz + (j + gap) * opt.slot_spacing_hz});

    plan.assignments.resize(static_cast<std::size_t>(n_uavs));
    for (int j = 0; j < groups; ++j)
    {
        const int lo = j + 1;
        const int hi = groups + j + 1;
        const int a = 2 * j;
        const int b = 2 * j + 1;
        plan.assignments[a] = {lo, hi};
        if (b < n_uavs)
        {
            plan.assignments[b] = {hi, lo};
            plan.pairs.emplace_back(a, b);
        }
    }
    return plan;
}

inline ChannelPlan build_channel_plan(int n_uavs, int min_separation)
{
    ChannelPlanOptions opt;
    opt.min_separation = min_separation;
    return build_channel_plan(n_uavs, opt);
}

// One directed edge per reusing pair per shared channel.
inline std::vector<InterferenceEdge> interference_edges(const ChannelPlan &plan)
{
    std::vector<InterferenceEdge> edges;
    edges.reserve(plan.pairs.size() * 2);
    for (const auto &[a, b] : plan.pairs)
    {
        edges.push_back({a, b, plan.assignments[a].uplink});
        edges.push_back({b, a, plan.assignments[b].uplink});
    }
    return edges;
}

// Empty iff every plan invariant holds. UAVs are reported 1-based.
inline std::vector<std::string> validate_plan(const ChannelPlan &plan, int min_separation)
{
    std::vector<std::string> out;
    auto uav = [](int i) { return "UAV" + std::to_string(i + 1); };
    auto ch = [](int l) { return "Ch" + std::to_string(l); };

    if (plan.assignments.size() != static_cast<std::size_t>(plan.n_uavs))
        out.push_back("assignment count " + std::to_string(plan.assignments.size()) + " != n_uavs " +
                      std::to_string(plan.n_uavs));

    std::map<int, int> uplink_users;
    std::map<int, int> downlink_users;
    for (std::size_t i = 0; i < plan.assignments.size(); ++i)
    {
        const int u = static_cast<int>(i);
        const auto &as = plan.assignments[i];
        const Channel *up = plan.channel(as.uplink);
        const Channel *dn = plan.channel(as.downlink);
        if (!up)
            out.push_back(uav(u) + ": uplink " + ch(as.uplink) + " not in channel list");
        if (!dn)
            out.push_back(uav(u) + ": downlink " + ch(as.downlink) + " not in channel list");
        if (as.uplink == as.downlink)
            out.push_back(uav(u) + ": same channel for Tx and Rx (" + ch(as.uplink) + ")");
        else if (up && dn && std::abs(up->slot - dn->slot) < min_separation)
            out.push_back(uav(u) + ": separation between " + ch(as.uplink) + " and " + ch(as.downlink) + " is " +
                          std::to_string(std::abs(up->slot - dn->slot)) + " < " + std::to_string(min_separation));
        ++uplink_users[as.uplink];
        ++downlink_users[as.downlink];
    }
    for (const auto &[label, n] : uplink_users)
        if (n > 1)
            out.push_back(ch(label) + ": used by " + std::to_string(n) + " uplinks");
    for (const auto &[label, n] : downlink_users)
        if (n > 1)
            out.push_back(ch(label) + ": used by " + std::to_string(n) + " downlinks");

    for (const auto &[a, b] : plan.pairs)
    {
        if (a < 0 || b < 0 || a >= plan.n_uavs || b >= plan.n_uavs || a == b)
        {
            out.push_back("pair (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ") is invalid");
            continue;
        }
        const auto &pa = plan.assignments[a];
        const auto &pb = plan.assignments[b];
        if (pa.uplink != pb.downlink || pa.downlink != pb.uplink)
            out.push_back("pair " + uav(a) + "/" + uav(b) + ": channels are not swapped");
    }
    return out;
}

inline std::vector<std::string> validate_plan(const ChannelPlan &plan)
{
    return validate_plan(plan, plan.min_separation);
}

// channel, frequency, uplink owner, downlink owner
inline std::string format_plan_table(const ChannelPlan &plan)
{
    std::ostringstream os;
    os << std::left << std::setw(9) << "channel" << std::setw(6) << "slot" << std::setw(14) << "freq_mhz"
       << std::setw(10) << "uplink" << "downlink\n";
    for (const auto &c : plan.channels)
    {
        std::optional<int> up;
        std::optional<int> dn;
        for (std::size_t i = 0; i < plan.assignments.size(); ++i)
        {
            if (plan.assignments[i].uplink == c.label)
                up = static_cast<int>(i);
            if (plan.assignments[i].downlink == c.label)
                dn = static_cast<int>(i);
        }
        std::ostringstream f;
        f << std::fixed << std::setprecision(1) << c.center_frequency_hz / 1e6;
        os << std::setw(9) << ("Ch" + std::to_string(c.label)) << std::setw(6) << c.slot << std::setw(14) << f.str()
           << std::setw(10) << (up ? "UAV" + std::to_string(*up + 1) : "-")
           << (dn ? "UAV" + std::to_string(*dn + 1) : "-") << "\n";
    }
    return os.str();
}

} // namespace uavfd
