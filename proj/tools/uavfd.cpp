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

#include "uavfd/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <limits>
#include <string>

namespace
{

void add_run_flags(CLI::App *sub, uavfd::cli::SweepArgs &a, std::string &engine)
{
    sub->add_option("--config", a.config_path, "key = value run configuration file");
    sub->add_option("--scenario", a.scenario,
                    "scenario preset (" + uavfd::available_scenarios() + ")");
    sub->add_option("--engine", engine, "capacity engine")->check(CLI::IsMember({"analytic", "waveform"}));
    sub->add_option("--seed", a.seed, "base random seed");
}

} // namespace

int main(int argc, char **argv)
{
    using namespace uavfd::cli;

    CLI::App app{"uavfd: full-duplex multi-UAV link simulator"};
    app.require_subcommand(1);

    SweepArgs sweep;
    std::string sweep_engine;
    auto *s = app.add_subcommand("sweep", "power and capacity sweeps over the interferer grid");
    add_run_flags(s, sweep, sweep_engine);
    s->add_option("--out", sweep.out_dir, "output directory");

    CdfArgs cdf;
    auto *c = app.add_subcommand("cdf", "interference CDF and coverage fraction of a sweep CSV");
    c->add_option("input", cdf.input, "sweep CSV")->required();
    c->add_option("--threshold", cdf.threshold_dbm, "coverage threshold, dBm");
    c->add_option("--out", cdf.out_path, "CDF CSV path");

    ModemArgs modem;
    std::string snr = "20", sir = "inf";
    auto *m = app.add_subcommand("modem", "OFDM modem EVM calibration");
    m->add_option("--snr", snr, "in-band SNR, dB (inf disables noise)");
    m->add_option("--sir", sir, "signal-to-interference ratio, dB (inf disables the interferer)");
    m->add_option("--frames", modem.frames, "number of frames")->check(CLI::PositiveNumber);
    m->add_option("--seed", modem.seed, "base random seed");

    PlanArgs plan;
    auto *p = app.add_subcommand("plan", "cross-UAV channel reuse plan");
    p->add_option("--uavs", plan.uavs, "number of UAV pairs")->check(CLI::PositiveNumber);
    p->add_option("--separation", plan.min_separation, "minimum slot separation within a UAV");

    PlaceArgs place;
    std::string place_engine;
    auto *q = app.add_subcommand("place", "feasible region and best interferer position");
    q->add_option("input", place.input, "sweep CSV (omit to evaluate the scenario)");
    add_run_flags(q, place.sweep, place_engine);
    q->add_option("--objective", place.objective, "min-interference or max-capacity")
        ->check(CLI::IsMember({"min-interference", "max-capacity"}));
    q->add_option("--threshold", place.threshold_dbm, "feasibility threshold, dBm");
    q->add_option("--out", place.region_out, "feasible region CSV path");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return exit_usage;
    }

    try
    {
        if (*s)
        {
            if (!sweep_engine.empty())
                sweep.engine = uavfd::parse_engine(sweep_engine);
            return cmd_sweep(sweep, std::cout, std::cerr);
        }
        if (*c)
            return cmd_cdf(cdf, std::cout, std::cerr);
        if (*m)
        {
            try
            {
                modem.snr_db = uavfd::detail::to_double(snr);
                modem.sir_db = uavfd::detail::to_double(sir);
            }
            catch (const std::exception &e)
            {
                std::cerr << "error: " << e.what() << "\n";
                return exit_usage;
            }
            return cmd_modem(modem, std::cout, std::cerr);
        }
        if (*p)
            return cmd_plan(plan, std::cout, std::cerr);
        if (*q)
        {
            if (!place_engine.empty())
                place.sweep.engine = uavfd::parse_engine(place_engine);
            return cmd_place(place, std::cout, std::cerr);
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_data;
    }
    return exit_usage;
}
