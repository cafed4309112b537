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

#include "uavfd/antenna.hpp"
#include "uavfd/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace uavfd
{

inline constexpr double speed_of_light = 299'792'458.0;

// Free-space (Friis) path loss in dB.
inline double fspl_db(double distance_m, double frequency_hz)
{
    if (!(distance_m > 0.0) || !(frequency_hz > 0.0))
        throw std::invalid_argument("fspl_db: distance and frequency must be > 0");
    return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m * frequency_hz / speed_of_light);
}

// Thermal noise power over `bandwidth_hz`, dBm.
inline double noise_floor_dbm(double bandwidth_hz, double noise_figure_db)
{
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("noise_floor_dbm: bandwidth must be > 0");
    return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

// A transmitter or receiver on the map.
struct NodeConfig
{
    Position position;
    AntennaSpec antenna;
    Direction boresight;
    double tx_power_dbm = 0.0;

    static NodeConfig aimed_at(const Position &pos, const AntennaSpec &ant, const Position &target,
                               double tx_power_dbm = 0.0)
    {
        const auto dir = Direction::between(pos, target);
        if (!dir)
            throw std::invalid_argument("NodeConfig: pointing target coincides with node position");
        return NodeConfig{pos, ant, *dir, tx_power_dbm};
    }
};

struct LinkBudget
{
    double tx_power_dbm = 0.0;
    double tx_gain_dbi = 0.0;
    double rx_gain_dbi = 0.0;
    double path_loss_db = 0.0;
    double rx_power_dbm = 0.0;

    static LinkBudget make(double tx_power_dbm, double tx_gain_dbi, double rx_gain_dbi, double path_loss_db)
    {
        return {tx_power_dbm, tx_gain_dbi, rx_gain_dbi, path_loss_db,
                tx_power_dbm + tx_gain_dbi + rx_gain_dbi - path_loss_db};
    }

    // tx + rx antenna gains minus path loss; the channel power of the link.
    double channel_gain_db() const { return tx_gain_dbi + rx_gain_dbi - path_loss_db; }
};

inline LinkBudget link_budget(const NodeConfig &tx, const NodeConfig &rx, double frequency_hz)
{
    const double d = distance(tx.position, rx.position);
    if (!(d > 0.0))
        throw std::invalid_argument("link_budget: transmitter and receiver coincide");
    const double gt = gain_toward(tx.antenna, tx.position, tx.boresight, rx.position);
    const double gr = gain_toward(rx.antenna, rx.position, rx.boresight, tx.position);
    return LinkBudget::make(tx.tx_power_dbm, gt, gr, fspl_db(d, frequency_hz));
}

// Channel gain (antenna gains minus Friis loss) from tx to rx, dB.
inline double link_gain_db(const NodeConfig &tx, const NodeConfig &rx, double frequency_hz)
{
    return link_budget(tx, rx, frequency_hz).channel_gain_db();
}

} // namespace uavfd
