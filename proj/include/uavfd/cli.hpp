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

// Subcommands behind tools/uavfd. Each returns the process exit code and
// writes its report to `out`, diagnostics to `err`.

#include "uavfd/campaign.hpp"
#include "uavfd/config.hpp"
#include "uavfd/csv.hpp"
#include "uavfd/duplexing.hpp"
#include "uavfd/metrics.hpp"
#include "uavfd/placement.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace uavfd::cli
{

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_data = 2;

namespace fs = std::filesystem;

struct SweepArgs
{
    std::optional<std::string> config_path;
    std::optional<std::string> scenario;
    std::optional<Engine> engine;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
};

// Builds the RunConfig: preset (or config file), then command-line flags.
// Returns an exit code other than exit_ok on failure.
inline int resolve_run_config(const SweepArgs &a, RunConfig &rc, std::ostream &err)
{
    try
    {
        if (a.config_path)
        {
            std::ifstream f(*a.config_path);
            if (!f)
            {
                err << "error: cannot open config '" << *a.config_path << "'\n";
                return exit_data;
            }
            rc = a.scenario ? parse_config(f, *a.scenario) : parse_config(f);
        }
        else
        {
            rc = make_run_config(a.scenario.value_or("directional-0.1"));
        }
    }
    catch (const ConfigError &e)
    {
        err << "error: " << (a.config_path ? *a.config_path + ": " : std::string{}) << e.what() << "\n";
        return exit_data;
    }
    catch (const std::invalid_argument &e)
    {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    if (a.engine)
        rc.scenario.engine = *a.engine;
    if (a.seed)
        rc.seed = rc.scenario.seed = *a.seed;
    if (a.out_dir)
        rc.output_dir = *a.out_dir;
    try
    {
        rc.scenario.validate();
    }
    catch (const std::invalid_argument &e)
    {
        err << "error: " << e.what() << "\n";
        return exit_data;
    }
    return exit_ok;
}

namespace detail
{
inline bool write_file(const fs::path &path, const std::string &content, std::ostream &err)
{
    std::ofstream f(path, std::ios::binary);
    if (!(f << content) || !f.flush())
    {
        err << "error: cannot write '" << path.string() << "'\n";
        return false;
    }
    return true;
}

inline std::string sweep_text(const std::vector<SweepRecord> &r)
{
    std::ostringstream os;
    write_sweep_csv(os, r);
    return os.str();
}

inline std::optional<std::vector<SweepRecord>> load_sweep(const std::string &path, std::ostream &err)
{
    std::ifstream f(path);
    if (!f)
    {
        err << "error: cannot open '" << path << "'\n";
        return std::nullopt;
    }
    try
    {
        auto rec = read_sweep_csv(f);
        if (rec.empty())
        {
            err << "error: " << path << ": no records\n";
            return std::nullopt;
        }
        return rec;
    }
    catch (const DataError &e)
    {
        err << "error: " << path << ": " << e.what() << "\n";
        return std::nullopt;
    }
}

inline std::string fmt(double v, int prec)
{
    if (std::isnan(v))
        return "n/a";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::fixed << std::setprecision(prec) << v;
    return os.str();
}
} // namespace detail

// Writes <scenario>_power.csv, <scenario>_capacity.csv and
// <scenario>_capacity_mirrored.csv into the output directory.
inline int cmd_sweep(const SweepArgs &args, std::ostream &out, std::ostream &err)
{
    RunConfig rc;
    if (const int rcode = resolve_run_config(args, rc, err); rcode != exit_ok)
        return rcode;

    std::error_code ec;
    fs::create_directories(rc.output_dir, ec);
    if (ec || !fs::is_directory(rc.output_dir))
    {
        err << "error: output directory '" << rc.output_dir << "' is not writable\n";
        return exit_data;
    }

    const auto power = run_power_sweep(rc.scenario, rc.grid);
    const auto capacity = run_capacity_sweep(rc.scenario, power);
    const auto mirrored = mirror_symmetry(capacity);

    const fs::path dir = rc.output_dir;
    const std::string stem = rc.scenario_id;
    const fs::path files[] = {dir / (stem + "_power.csv"), dir / (stem + "_capacity.csv"),
                              dir / (stem + "_capacity_mirrored.csv")};
    if (!detail::write_file(files[0], detail::sweep_text(power), err) ||
        !detail::write_file(files[1], detail::sweep_text(capacity), err) ||
        !detail::write_file(files[2], detail::sweep_text(mirrored), err))
        return exit_data;

    const auto values = interference_values(power);
    std::size_t synced = 0;
    for (const auto &r : capacity)
        synced += r.sync_ok.value_or(false) ? 1 : 0;
    out << "scenario " << stem << " (" << to_string(rc.scenario.mode) << ", " << to_string(rc.scenario.engine)
        << "): " << power.size() << " points\n";
    out << "coverage at " << detail::fmt(rc.scenario.floor_dbm, 1)
        << " dBm: " << detail::fmt(coverage_fraction(values, rc.scenario.floor_dbm), 4) << "\n";
    out << "sync ok at " << synced << "/" << capacity.size() << " points\n";
    for (const auto &f : files)
        out << "wrote " << f.string() << "\n";
    return exit_ok;
}

struct CdfArgs
{
    std::string input;
    double threshold_dbm = -95.0;
    std::optional<std::string> out_path; // default: <input stem>_cdf.csv beside the input
};

inline int cmd_cdf(const CdfArgs &a, std::ostream &out, std::ostream &err)
{
    const auto rec = detail::load_sweep(a.input, err);
    if (!rec)
        return exit_data;
    const auto values = interference_values(*rec);
    const auto table = cdf(values);
    const double frac = coverage_fraction(values, a.threshold_dbm);

    fs::path dst;
    if (a.out_path)
        dst = *a.out_path;
    else
    {
        const fs::path in = a.input;
        dst = in.parent_path() / (in.stem().string() + "_cdf.csv");
    }
    std::ostringstream os;
    write_cdf_csv(os, table);
    if (!detail::write_file(dst, os.str(), err))
        return exit_data;
    out << "wrote " << dst.string() << "\n";
    out << "coverage threshold_dbm=" << format_number(a.threshold_dbm) << " fraction=" << detail::fmt(frac, 4)
        << " points=" << values.size() << "\n";
    return exit_ok;
}

struct ModemArgs
{
    double snr_db = 20.0;
    double sir_db = std::numeric_limits<double>::infinity();
    std::size_t frames = 100;
    std::uint64_t seed = 1;
    double sync_threshold = 0.5;
};

struct ModemReport
{
    std::size_t frames = 0;
    std::size_t synced = 0;
    double mean_evm = 0.0;
    double sinr_evm_db = 0.0;
    double sinr_analytic_db = 0.0;
};

// Desired signal at 0 dBm, interferer at -sir, noise at -snr.
inline ModemReport run_modem(const ModemArgs &a, const phy::OfdmParams &p = {})
{
    ModemReport r;
    r.frames = a.frames;
    const double intf = -a.sir_db;
    const double noise = -a.snr_db;
    r.sinr_analytic_db = sinr_analytic(0.0, intf, noise);
    double evm_sum = 0.0;
    for (std::size_t k = 0; k < a.frames; ++k)
    {
        const auto w = measure_waveform(p, 0.0, intf, noise, derive_seed(a.seed, k), a.sync_threshold,
                                        std::numeric_limits<double>::infinity());
        if (!w.sync_ok)
            continue;
        ++r.synced;
        evm_sum += w.evm * w.evm;
    }
    if (r.synced)
    {
        // Power mean: EVM^2 is the noise-to-signal ratio, so this averages SINR
        // in the linear domain.
        r.mean_evm = std::sqrt(evm_sum / static_cast<double>(r.synced));
        r.sinr_evm_db = sinr_from_evm(r.mean_evm);
    }
    return r;
}

inline int cmd_modem(const ModemArgs &a, std::ostream &out, std::ostream &err)
{
    if (a.frames < 1)
    {
        err << "error: --frames must be >= 1\n";
        return exit_usage;
    }
    if (std::isnan(a.snr_db) || std::isnan(a.sir_db))
    {
        err << "error: --snr and --sir must be numbers or inf\n";
        return exit_usage;
    }
    const auto r = run_modem(a);
    out << "frames: " << r.frames << "  synchronised: " << r.synced << "\n";
    if (r.synced == 0)
    {
        out << "sync failure: no frame was detected\n";
        out << "modem snr_db=" << detail::fmt(a.snr_db, 2) << " sir_db=" << detail::fmt(a.sir_db, 2)
            << " frames=" << r.frames << " sync_ok=0 status=sync_failure\n";
        return exit_ok;
    }
    const double gap = std::isfinite(r.sinr_evm_db) && std::isfinite(r.sinr_analytic_db)
                           ? r.sinr_evm_db - r.sinr_analytic_db
                           : std::numeric_limits<double>::quiet_NaN();
    out << "mean EVM:        " << detail::fmt(r.mean_evm, 6) << "\n";
    out << "SINR from EVM:   " << detail::fmt(r.sinr_evm_db, 2) << " dB\n";
    out << "SINR analytic:   " << detail::fmt(r.sinr_analytic_db, 2) << " dB\n";
    out << "gap:             " << detail::fmt(gap, 2) << " dB\n";
    out << "modem snr_db=" << detail::fmt(a.snr_db, 2) << " sir_db=" << detail::fmt(a.sir_db, 2)
        << " frames=" << r.frames << " sync_ok=" << r.synced << " mean_evm=" << detail::fmt(r.mean_evm, 6)
        << " sinr_evm_db=" << detail::fmt(r.sinr_evm_db, 3) << " sinr_analytic_db="
        << detail::fmt(r.sinr_analytic_db, 3) << " gap_db=" << detail::fmt(gap, 3) << " status=ok\n";
    return exit_ok;
}

struct PlanArgs
{
    int uavs = 2;
    int min_separation = 2;
};

inline int cmd_plan(const PlanArgs &a, std::ostream &out, std::ostream &err)
{
    if (a.uavs < 1)
    {
        err << "error: --uavs must be >= 1\n";
        return exit_usage;
    }
    ChannelPlan plan;
    try
    {
        plan = build_channel_plan(a.uavs, a.min_separation);
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    out << format_plan_table(plan);
    out << "\nassignments\n";
    for (std::size_t i = 0; i < plan.assignments.size(); ++i)
        out << "UAV" << i + 1 << ": uplink Ch" << plan.assignments[i].uplink << ", downlink Ch"
            << plan.assignments[i].downlink << "\n";
    const auto edges = interference_edges(plan);
    out << "\nco-channel interference edges: " << edges.size() << "\n";
    for (const auto &e : edges)
        out << "UAV" << e.source_uav + 1 << " uplink -> UAV" << e.victim_uav + 1 << " downlink on Ch" << e.channel
            << "\n";
    const auto problems = validate_plan(plan);
    for (const auto &p : problems)
        err << "violation: " << p << "\n";
    return problems.empty() ? exit_ok : exit_data;
}

struct PlaceArgs
{
    std::optional<std::string> input; // sweep CSV; otherwise the scenario is evaluated
    SweepArgs sweep;
    std::string objective = "max-capacity";
    double threshold_dbm = -95.0;
    std::optional<std::string> region_out; // feasible region CSV; stdout when unset
};

inline int cmd_place(const PlaceArgs &a, std::ostream &out, std::ostream &err)
{
    const auto kind = parse_objective(a.objective);
    if (!kind)
    {
        err << "error: unknown objective '" << a.objective << "' (available: min-interference, max-capacity)\n";
        return exit_usage;
    }
    std::vector<SweepRecord> records;
    if (a.input)
    {
        auto rec = detail::load_sweep(*a.input, err);
        if (!rec)
            return exit_data;
        records = std::move(*rec);
    }
    else
    {
        RunConfig rc;
        if (const int rcode = resolve_run_config(a.sweep, rc, err); rcode != exit_ok)
            return rcode;
        records = run_power_sweep(rc.scenario, rc.grid);
        if (*kind == ObjectiveKind::MaxVictimCapacity)
            records = run_capacity_sweep(rc.scenario, records);
    }

    Placement best;
    try
    {
        best = best_record(records, *kind);
    }
    catch (const std::invalid_argument &e)
    {
        err << "error: " << e.what() << "\n";
        return exit_data;
    }

    const auto region = feasible_region(records, a.threshold_dbm);
    std::ostringstream os;
    write_region_csv(os, region);
    if (a.region_out)
    {
        if (!detail::write_file(*a.region_out, os.str(), err))
            return exit_data;
        out << "wrote " << *a.region_out << "\n";
    }
    else
    {
        out << os.str();
    }
    out << "feasible points: " << region.size() << "/" << records.size() << " at "
        << format_number(a.threshold_dbm) << " dBm\n";
    const auto &p = best.record.position;
    out << "best position (" << a.objective << "): x=" << format_number(p.x) << " y=" << format_number(p.y)
        << " h=" << format_number(p.z) << " p_int_dbm=" << detail::fmt(best.record.interference_power_dbm, 2);
    if (best.record.capacity_bps)
        out << " capacity_bps=" << detail::fmt(*best.record.capacity_bps, 0);
    out << "\n";
    return exit_ok;
}

} // namespace uavfd::cli
