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

// Bench emulation: two attenuators feeding a combiner, plus receiver noise.
// Unit sample power is the 0 dBm reference, so a transmit power p plus a
// channel gain g arrives as an attenuation of -(p + g) dB.

#include "uavfd/phy/ofdm.hpp"
#include "uavfd/random.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>

namespace uavfd::phy
{

inline constexpr double off_db = std::numeric_limits<double>::infinity();

struct ImpairConfig
{
    double atten_desired_db = 0.0;
    double atten_interf_db = off_db;
    // Noise power inside the active band, dBm re unit power; -inf disables it.
    double noise_power_dbm = -off_db;
    // Share of the sampled band the in-band noise power refers to. With the
    // OfdmParams value, injected SNR equals the per-subcarrier SNR.
    double noise_inband_fraction = 1.0;
    std::size_t delay = 0;             // leading samples before the desired frame
    std::size_t tail = 0;              // trailing samples after it
    std::size_t interferer_offset = 0; // read position into the interferer stream
    std::uint64_t seed = 0;

    // Attenuator settings that deliver the given received levels (dBm).
    static ImpairConfig from_levels(double desired_dbm, double interferer_dbm, double noise_dbm,
                                    const OfdmParams &p)
    {
        ImpairConfig c;
        c.atten_desired_db = -desired_dbm;
        c.atten_interf_db = std::isfinite(interferer_dbm) ? -interferer_dbm : off_db;
        c.noise_power_dbm = noise_dbm;
        c.noise_inband_fraction = p.inband_fraction();
        return c;
    }
};

inline double db_to_amplitude(double atten_db)
{
    return std::isinf(atten_db) && atten_db > 0 ? 0.0 : std::pow(10.0, -atten_db / 20.0);
}

// desired * 10^(-a_d/20) + interferer * 10^(-a_i/20) + AWGN. The interferer is
// read cyclically from `interferer_offset`, so any stream length works.
inline FrameBuffer impair(const FrameBuffer &desired, std::span<const cplx> interferer, const ImpairConfig &cfg)
{
    const double gd = db_to_amplitude(cfg.atten_desired_db);
    const double gi = db_to_amplitude(cfg.atten_interf_db);
    if (gi > 0.0 && interferer.empty())
        throw std::invalid_argument("impair: interferer level set but no interferer samples");
    if (!(cfg.noise_inband_fraction > 0.0 && cfg.noise_inband_fraction <= 1.0))
        throw std::invalid_argument("impair: noise_inband_fraction must be in (0, 1]");

    const double noise_var = std::isfinite(cfg.noise_power_dbm)
                                 ? std::pow(10.0, cfg.noise_power_dbm / 10.0) / cfg.noise_inband_fraction
                                 : 0.0;

    FrameBuffer out;
    out.preamble_length = desired.preamble_length;
    out.n_symbols = desired.n_symbols;
    out.symbol_length = desired.symbol_length;
    const std::size_t n = cfg.delay + desired.samples.size() + cfg.tail;
    out.samples.assign(n, cplx{});

    for (std::size_t i = 0; i < desired.samples.size(); ++i)
        out.samples[cfg.delay + i] = gd * desired.samples[i];
    if (gi > 0.0)
    {
        const std::size_t m = interferer.size();
        for (std::size_t i = 0; i < n; ++i)
            out.samples[i] += gi * interferer[(cfg.interferer_offset + i) % m];
    }
    if (noise_var > 0.0)
    {
        Rng rng(cfg.seed);
        for (auto &v : out.samples)
            v += rng.complex_normal(noise_var);
    }
    return out;
}

} // namespace uavfd::phy
