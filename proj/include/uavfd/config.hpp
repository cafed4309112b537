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

// Run configuration file: one `key = value` per line, `#` starts a comment.
// `scenario` selects a preset; every other key overrides a preset field, in
// file order. See README for the key list.

#include "uavfd/campaign.hpp"
#include "uavfd/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <tuple>
#include <utility>
#include <vector>

namespace uavfd
{

struct RunConfig
{
    std::string scenario_id = "directional-0.1";
    ScenarioConfig scenario = *scenario_preset("directional-0.1");
    GridSpec grid = scenario.grid();
    std::uint64_t seed = 1;
    std::string output_dir = ".";
};

class ConfigError : public DataError
{
  public:
    using DataError::DataError;
};

namespace detail
{
inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline double to_double(std::string_view v)
{
    if (v == "inf" || v == "+inf")
        return std::numeric_limits<double>::infinity();
    if (v == "-inf")
        return -std::numeric_limits<double>::infinity();
    const auto r = parse_number(v);
    if (!r)
        throw std::invalid_argument("empty value");
    return *r;
}

inline std::size_t to_count(std::string_view v)
{
    const double d = to_double(v);
    if (!(d >= 0.0) || d != std::floor(d) || d > 1e9)
        throw std::invalid_argument("expected a non-negative integer, got '" + std::string(v) + "'");
    return static_cast<std::size_t>(d);
}

inline std::uint64_t to_seed(std::string_view v)
{
    std::uint64_t s = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), s);
    if (r.ec != std::errc{} || r.ptr != v.data() + v.size())
        throw std::invalid_argument("expected an unsigned integer seed, got '" + std::string(v) + "'");
    return s;
}
} // namespace detail

inline std::optional<Engine> parse_engine(std::string_view s)
{
    if (s == "analytic")
        return Engine::Analytic;
    if (s == "waveform")
        return Engine::Waveform;
    return std::nullopt;
}

inline std::string available_scenarios()
{
    std::string s;
    for (const auto &id : scenario_ids())
        s += (s.empty() ? "" : ", ") + id;
    return s;
}

// Applies one key to a config. Throws std::invalid_argument on bad input.
inline void apply_config_key(RunConfig &rc, std::string_view key, std::string_view value, bool &grid_heights_set)
{
    using Setter = std::function<void(std::string_view)>;
    auto &s = rc.scenario;
    auto &g = rc.grid;
    auto num = [](double &dst) { return Setter([&dst](std::string_view v) { dst = detail::to_double(v); }); };
    auto cnt = [](std::size_t &dst) { return Setter([&dst](std::string_view v) { dst = detail::to_count(v); }); };

    const std::map<std::string_view, Setter> table{
        {"engine",
         [&](std::string_view v) {
             const auto e = parse_engine(v);
             if (!e)
                 throw std::invalid_argument("engine must be 'analytic' or 'waveform'");
             s.engine = *e;
         }},
        {"mode",
         [&](std::string_view v) {
             if (v == "fd")
                 s.mode = DuplexMode::FD;
             else if (v == "tdd")
                 s.mode = DuplexMode::TDD;
             else
                 throw std::invalid_argument("mode must be 'fd' or 'tdd'");
         }},
        {"seed", [&](std::string_view v) { rc.seed = s.seed = detail::to_seed(v); }},
        {"out", [&](std::string_view v) { rc.output_dir = std::string(v); }},
        {"antenna.kind",
         [&](std::string_view v) {
             if (v == "horn")
                 s.antenna = AntennaSpec::horn();
             else if (v == "dipole")
                 s.antenna = AntennaSpec::dipole();
             else
                 throw std::invalid_argument("antenna.kind must be 'horn' or 'dipole'");
         }},
        {"antenna.gain_dbi", num(s.antenna.boresight_gain_dbi)},
        {"antenna.hpbw_deg", num(s.antenna.hpbw_deg)},
        {"antenna.front_to_back_db", num(s.antenna.front_to_back_db)},
        {"interferer_height_m",
         [&](std::string_view v) {
             s.interferer_height_m = detail::to_double(v);
             if (!grid_heights_set)
                 g.heights = {s.interferer_height_m};
         }},
        {"p_g_dbm", num(s.p_g_dbm)},
        {"p_u_dbm", num(s.p_u_dbm)},
        {"floor_dbm", num(s.floor_dbm)},
        {"noise_figure_db", num(s.noise_figure_db)},
        {"frequency_hz", num(s.frequency_hz)},
        {"bandwidth_hz", num(s.capacity.bandwidth_hz)},
        {"tdd_duty", num(s.capacity.tdd_duty)},
        {"guard_overhead", num(s.capacity.guard_overhead)},
        {"tdd_snr_db", num(s.tdd_snr_db)},
        {"sinr_ceiling_db", num(s.sinr_ceiling_db)},
        {"pointing_sigma_deg", num(s.pointing_sigma_deg)},
        {"sync_threshold", num(s.sync_threshold)},
        {"min_separation_m", num(s.min_separation_m)},
        {"grid.x_start", num(g.x_start)},
        {"grid.x_end", num(g.x_end)},
        {"grid.x_step", num(g.x_step)},
        {"grid.y_start", num(g.y_start)},
        {"grid.y_end", num(g.y_end)},
        {"grid.y_step", num(g.y_step)},
        {"grid.heights",
         [&](std::string_view v) {
             g.heights.clear();
             for (auto part : detail::split_csv(v))
                 g.heights.push_back(detail::to_double(detail::trim(part)));
             grid_heights_set = true;
         }},
        {"ofdm.fft_size", cnt(s.ofdm.fft_size)},
        {"ofdm.cp_length", cnt(s.ofdm.cp_length)},
        {"ofdm.active_subcarriers", cnt(s.ofdm.active_subcarriers)},
        {"ofdm.pilot_spacing", cnt(s.ofdm.pilot_spacing)},
        {"ofdm.data_symbols", cnt(s.ofdm.data_symbols)},
        {"ofdm.sampling_rate_hz", num(s.ofdm.sampling_rate_hz)},
    };

    const auto it = table.find(key);
    if (it == table.end())
        throw std::invalid_argument("unknown key '" + std::string(key) + "'");
    it->second(value);
}

inline RunConfig make_run_config(std::string_view scenario_id)
{
    const auto preset = scenario_preset(scenario_id);
    if (!preset)
        throw std::invalid_argument("unknown scenario '" + std::string(scenario_id) +
                                    "' (available: " + available_scenarios() + ")");
    RunConfig rc;
    rc.scenario_id = std::string(scenario_id);
    rc.scenario = *preset;
    rc.grid = preset->grid();
    rc.seed = preset->seed;
    return rc;
}

// `scenario_override`, when set, replaces the file's `scenario` key.
inline RunConfig parse_config(std::istream &is, std::optional<std::string_view> scenario_override = {})
{
    std::vector<std::tuple<std::size_t, std::string, std::string>> entries;
    std::optional<std::pair<std::size_t, std::string>> scenario;
    // Malformed lines are reported after any bad key on an earlier line.
    std::optional<ConfigError> syntax;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line))
    {
        ++lineno;
        std::string_view l = line;
        if (const auto hash = l.find('#'); hash != std::string_view::npos)
            l = l.substr(0, hash);
        l = detail::trim(l);
        if (l.empty())
            continue;
        const auto eq = l.find('=');
        if (eq == std::string_view::npos)
        {
            syntax = ConfigError("expected 'key = value', got '" + std::string(l) + "'", lineno);
            break;
        }
        const auto key = detail::trim(l.substr(0, eq));
        const auto val = detail::trim(l.substr(eq + 1));
        if (key.empty())
        {
            syntax = ConfigError("missing key before '='", lineno);
            break;
        }
        if (key == "scenario")
            scenario = {lineno, std::string(val)};
        else
            entries.emplace_back(lineno, std::string(key), std::string(val));
    }

    RunConfig rc;
    const std::string id = scenario_override ? std::string(*scenario_override)
                                             : (scenario ? scenario->second : std::string("directional-0.1"));
    try
    {
        rc = make_run_config(id);
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(e.what(), scenario_override || !scenario ? 0 : scenario->first);
    }

    bool heights_set = false;
    for (const auto &[ln, key, val] : entries)
    {
        if (syntax && ln > syntax->line())
            throw *syntax;
        try
        {
            apply_config_key(rc, key, val, heights_set);
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(std::string(key) + ": " + e.what(), ln);
        }
    }
    if (syntax)
        throw *syntax;
    try
    {
        rc.scenario.validate();
        rc.grid.validate();
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(e.what(), 0);
    }
    return rc;
}

} // namespace uavfd
