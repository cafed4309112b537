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

// Measurement campaign: the ground station (Tx#2) and the victim receiver
// (Rx#2) stay fixed and face each other while the interfering UAV (Tx#1) is
// moved over a grid, always re-aimed at the ground station. Each point yields
// the interference channel power and, in a second pass, the victim's
// achievable capacity.

#include "uavfd/antenna.hpp"
#include "uavfd/geometry.hpp"
#include "uavfd/metrics.hpp"
#include "uavfd/phy.hpp"
#include "uavfd/propagation.hpp"
#include "uavfd/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace uavfd
{

struct GridSpec
{
    double x_start = 10.0, x_end = 70.0, x_step = 2.0;
    double y_start = 0.0, y_end = 30.0, y_step = 2.0;
    std::vector<double> heights{0.1, 1.8};

    void validate() const
    {
        if (!(x_step > 0.0) || !(y_step > 0.0))
            throw std::invalid_argument("GridSpec: steps must be > 0");
        if (x_start > x_end || y_start > y_end)
            throw std::invalid_argument("GridSpec: start must be <= end");
        if (heights.empty())
            throw std::invalid_argument("GridSpec: at least one height is required");
    }

    std::size_t x_count() const { return static_cast<std::size_t>(std::floor((x_end - x_start) / x_step + 1e-9)) + 1; }
    std::size_t y_count() const { return static_cast<std::size_t>(std::floor((y_end - y_start) / y_step + 1e-9)) + 1; }

    GridSpec at_height(double h) const
    {
        GridSpec g = *this;
        g.heights = {h};
        return g;
    }
};

// Row-major: for each height, rows of constant y, x varying fastest.
inline std::vector<Position> grid_points(const GridSpec &g)
{
    g.validate();
    std::vector<Position> pts;
    pts.reserve(g.heights.size() * g.x_count() * g.y_count());
    for (double h : g.heights)
        for (std::size_t iy = 0; iy < g.y_count(); ++iy)
            for (std::size_t ix = 0; ix < g.x_count(); ++ix)
                pts.push_back({g.x_start + static_cast<double>(ix) * g.x_step,
                               g.y_start + static_cast<double>(iy) * g.y_step, h});
    return pts;
}

enum class DuplexMode
{
    FD,
    TDD
};
enum class Engine
{
    Analytic,
    Waveform
};

inline std::string_view to_string(DuplexMode m) { return m == DuplexMode::FD ? "fd" : "tdd"; }
inline std::string_view to_string(Engine e) { return e == Engine::Analytic ? "analytic" : "waveform"; }

struct ScenarioConfig
{
    std::string name = "directional-0.1";
    AntennaSpec antenna = AntennaSpec::horn();
    double interferer_height_m = 0.1;
    double p_g_dbm = -45.0; // ground station (Tx#2) transmit power
    double p_u_dbm = 0.0;   // interfering UAV (Tx#1) transmit power
    double floor_dbm = -95.0;
    double noise_figure_db = 7.0;
    DuplexMode mode = DuplexMode::FD;
    Engine engine = Engine::Analytic;

    double frequency_hz = 5.7e9;
    CapacityConfig capacity{};
    // SNR behind the TDD baseline map (hardware-limited, not link-budget).
    double tdd_snr_db = tdd_snr_for_capacity(CapacityConfig{}, 11.6e6);
    double sinr_ceiling_db = default_sinr_ceiling_db;
    double pointing_sigma_deg = 0.0;
    double sync_threshold = 0.5;
    // Separation used when the interferer sits on top of the victim.
    double min_separation_m = 1.0;
    std::uint64_t seed = 1;

    Position gs_position{0.0, 0.0, 0.1};
    Position victim_position{60.0, 0.0, 0.1};
    phy::OfdmParams ofdm{};

    double noise_dbm() const { return noise_floor_dbm(capacity.bandwidth_hz, noise_figure_db); }

    void validate() const
    {
        antenna.validated();
        capacity.validate();
        if (!std::isfinite(floor_dbm) || !std::isfinite(p_g_dbm) || !std::isfinite(p_u_dbm))
            throw std::invalid_argument("ScenarioConfig: powers and floor must be finite");
        if (!(frequency_hz > 0.0))
            throw std::invalid_argument("ScenarioConfig: frequency must be > 0");
        if (!(min_separation_m > 0.0))
            throw std::invalid_argument("ScenarioConfig: min_separation_m must be > 0");
        if (!(sync_threshold > 0.0 && sync_threshold < 1.0))
            throw std::invalid_argument("ScenarioConfig: sync_threshold must be in (0, 1)");
        if (pointing_sigma_deg < 0.0)
            throw std::invalid_argument("ScenarioConfig: pointing sigma must be >= 0");
        if (gs_position == victim_position)
            throw std::invalid_argument("ScenarioConfig: ground station and victim coincide");
        if (engine == Engine::Waveform)
            ofdm.validate();
    }

    GridSpec grid() const { return GridSpec{}.at_height(interferer_height_m); }
};

inline const std::vector<std::string> &scenario_ids()
{
    static const std::vector<std::string> ids{"directional-0.1", "directional-1.8", "dipole-0.1", "tdd-baseline"};
    return ids;
}

inline std::optional<ScenarioConfig> scenario_preset(std::string_view id)
{
    ScenarioConfig s;
    s.name = std::string(id);
    if (id == "directional-0.1")
        return s;
    if (id == "directional-1.8")
    {
        s.interferer_height_m = 1.8;
        return s;
    }
    if (id == "dipole-0.1" || id == "tdd-baseline")
    {
        s.antenna = AntennaSpec::dipole();
        s.p_g_dbm = -8.0;
        s.p_u_dbm = 27.5;
        if (id == "tdd-baseline")
            s.mode = DuplexMode::TDD;
        return s;
    }
    return std::nullopt;
}

struct SweepRecord
{
    std::size_t index = 0;
    Position position;
    double interference_power_dbm = 0.0; // received, clamped at the floor
    double desired_power_dbm = 0.0;
    // Unclamped Tx#1 -> Rx#2 channel gain; unavailable for records read from CSV.
    std::optional<double> interference_gain_db;
    std::optional<double> evm;
    std::optional<double> sinr_db;
    std::optional<double> capacity_bps;
    std::optional<bool> sync_ok;
};

// Minimum detection statistic sqrt(rho / (1 + rho)) >= t, solved for rho.
inline double sync_sinr_threshold_db(double threshold)
{
    return linear_to_db(threshold * threshold / (1.0 - threshold * threshold));
}

namespace detail
{
struct Geometry
{
    NodeConfig gs;
    NodeConfig victim;
};

inline Geometry fixed_nodes(const ScenarioConfig &s)
{
    return {NodeConfig::aimed_at(s.gs_position, s.antenna, s.victim_position, s.p_g_dbm),
            NodeConfig::aimed_at(s.victim_position, s.antenna, s.gs_position)};
}

inline double interference_gain(const ScenarioConfig &s, const Geometry &g, const Position &p, std::size_t index)
{
    Direction bore = Direction::between(p, s.gs_position).value_or(Direction{});
    if (s.pointing_sigma_deg > 0.0)
        bore = perturb_pointing(bore, {s.pointing_sigma_deg, derive_seed(s.seed, 2 * index + 1)});
    const NodeConfig tx1{p, s.antenna, bore, s.p_u_dbm};
    if (distance(p, s.victim_position) < s.min_separation_m)
        return 2.0 * s.antenna.peak_gain_dbi() - fspl_db(s.min_separation_m, s.frequency_hz);
    return link_gain_db(tx1, g.victim, s.frequency_hz);
}
} // namespace detail

inline double desired_channel_gain_db(const ScenarioConfig &s)
{
    const auto g = detail::fixed_nodes(s);
    return link_gain_db(g.gs, g.victim, s.frequency_hz);
}

// Interference power over the grid, as the spectrum/network analyzer would
// report it: received power max(p_U + gain, floor).
inline std::vector<SweepRecord> run_power_sweep(const ScenarioConfig &s, const GridSpec &grid)
{
    s.validate();
    const auto geo = detail::fixed_nodes(s);
    const double p_des = s.p_g_dbm + link_gain_db(geo.gs, geo.victim, s.frequency_hz);
    const auto pts = grid_points(grid);
    std::vector<SweepRecord> out;
    out.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
    {
        SweepRecord r;
        r.index = i;
        r.position = pts[i];
        r.interference_gain_db = detail::interference_gain(s, geo, pts[i], i);
        r.interference_power_dbm = std::max(s.p_u_dbm + *r.interference_gain_db, s.floor_dbm);
        r.desired_power_dbm = p_des;
        out.push_back(r);
    }
    return out;
}

// Received interferer level implied by a power-sweep record: the model channel
// gain when known, the reported (floored) reading otherwise.
inline double interferer_level_dbm(const ScenarioConfig &s, const SweepRecord &r)
{
    return r.interference_gain_db ? s.p_u_dbm + *r.interference_gain_db : r.interference_power_dbm;
}

struct WaveformPoint
{
    bool sync_ok = false;
    double evm = 0.0;
    double sinr_db = 0.0;
};

// One bench measurement: desired frame and interferer stream at the given
// received levels through the combiner, then the full receiver.
inline WaveformPoint measure_waveform(const phy::OfdmParams &p, double desired_dbm, double interferer_dbm,
                                      double noise_dbm, std::uint64_t seed, double sync_threshold = 0.5,
                                      double sinr_ceiling_db = default_sinr_ceiling_db)
{
    const auto payload = phy::random_payload(p, derive_seed(seed, 0));
    const auto tx = phy::build_frame(p, payload);
    const auto intf = phy::build_stream(p, p.data_symbols + 2, derive_seed(seed, 1));

    Rng rng(derive_seed(seed, 2));
    auto cfg = phy::ImpairConfig::from_levels(desired_dbm, interferer_dbm, noise_dbm, p);
    cfg.delay = static_cast<std::size_t>(rng.below(2 * p.cp_length + 1));
    cfg.tail = p.cp_length;
    cfg.interferer_offset = static_cast<std::size_t>(rng.below(intf.size()));
    cfg.seed = derive_seed(seed, 3);
    const auto rxbuf = phy::impair(tx.buffer, intf, cfg);

    phy::SyncOptions so;
    so.threshold = sync_threshold;
    const auto rx = phy::receive_frame(rxbuf.samples, p, tx.data_symbols, payload, so);
    WaveformPoint w;
    w.sync_ok = rx.sync_success;
    if (w.sync_ok)
    {
        w.evm = rx.evm_rms;
        w.sinr_db = cap_sinr(sinr_from_evm(rx.evm_rms), sinr_ceiling_db);
    }
    return w;
}

// Victim capacity at every power-sweep point. FD capacity uses the whole band;
// a failed synchronisation means no link (capacity 0). TDD mode yields the
// constant baseline map.
inline std::vector<SweepRecord> run_capacity_sweep(const ScenarioConfig &s, const std::vector<SweepRecord> &power)
{
    s.validate();
    const double noise = s.noise_dbm();
    const double sync_floor_db = sync_sinr_threshold_db(s.sync_threshold);
    std::vector<SweepRecord> out = power;
    for (auto &r : out)
    {
        if (s.mode == DuplexMode::TDD)
        {
            r.sinr_db = s.tdd_snr_db;
            r.capacity_bps = capacity_tdd(s.capacity, s.tdd_snr_db);
            r.sync_ok = true;
            continue;
        }
        const double intf = interferer_level_dbm(s, r);
        if (s.engine == Engine::Analytic)
        {
            const double sinr = sinr_analytic(r.desired_power_dbm, intf, noise);
            r.sync_ok = sinr >= sync_floor_db;
            r.sinr_db = cap_sinr(sinr, s.sinr_ceiling_db);
        }
        else
        {
            const auto w = measure_waveform(s.ofdm, r.desired_power_dbm, intf, noise, derive_seed(s.seed, 2 * r.index),
                                            s.sync_threshold, s.sinr_ceiling_db);
            r.sync_ok = w.sync_ok;
            if (w.sync_ok)
            {
                r.evm = w.evm;
                r.sinr_db = w.sinr_db;
            }
        }
        r.capacity_bps = *r.sync_ok ? capacity_fd(s.capacity, *r.sinr_db) : 0.0;
    }
    return out;
}

inline std::vector<SweepRecord> run_capacity_sweep(const ScenarioConfig &s, const GridSpec &grid)
{
    return run_capacity_sweep(s, run_power_sweep(s, grid));
}

// Appends a copy of every y > 0 record at -y (same grid index); y == 0 is not
// duplicated.
inline std::vector<SweepRecord> mirror_symmetry(const std::vector<SweepRecord> &records)
{
    std::vector<SweepRecord> out = records;
    for (const auto &r : records)
    {
        if (r.position.y <= 0.0)
            continue;
        SweepRecord m = r;
        m.position.y = -r.position.y;
        out.push_back(m);
    }
    return out;
}

inline std::vector<double> interference_values(const std::vector<SweepRecord> &records)
{
    std::vector<double> v;
    v.reserve(records.size());
    for (const auto &r : records)
        v.push_back(r.interference_power_dbm);
    return v;
}

} // namespace uavfd
