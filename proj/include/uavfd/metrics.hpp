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
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace uavfd
{

inline constexpr double default_sinr_ceiling_db = 40.0;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double lin)
{
    return lin > 0.0 ? 10.0 * std::log10(lin) : -std::numeric_limits<double>::infinity();
}

// -20 log10(evm). evm == 0 gives +inf; see cap_sinr().
inline double sinr_from_evm(double evm_rms)
{
    if (evm_rms < 0.0 || std::isnan(evm_rms))
        throw std::invalid_argument("sinr_from_evm: evm must be >= 0");
    if (evm_rms == 0.0)
        return std::numeric_limits<double>::infinity();
    return -20.0 * std::log10(evm_rms);
}

inline double cap_sinr(double sinr_db, double ceiling_db = default_sinr_ceiling_db)
{
    return std::min(sinr_db, ceiling_db);
}

// 10 log10(S / (I + N)); -inf inputs mean "absent".
inline double sinr_analytic(double signal_dbm, double interference_dbm, double noise_dbm)
{
    const double s = std::isinf(signal_dbm) && signal_dbm < 0 ? 0.0 : db_to_linear(signal_dbm);
    const double i = std::isinf(interference_dbm) && interference_dbm < 0 ? 0.0 : db_to_linear(interference_dbm);
    const double n = std::isinf(noise_dbm) && noise_dbm < 0 ? 0.0 : db_to_linear(noise_dbm);
    if (i + n == 0.0)
        return s > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    return linear_to_db(s / (i + n));
}

struct CapacityConfig
{
    double bandwidth_hz = 10e6;
    double tdd_duty = 0.5;
    double guard_overhead = 0.2;

    void validate() const
    {
        if (!(bandwidth_hz > 0.0))
            throw std::invalid_argument("CapacityConfig: bandwidth must be > 0");
        if (!(tdd_duty > 0.0 && tdd_duty <= 1.0))
            throw std::invalid_argument("CapacityConfig: tdd_duty must be in (0, 1]");
        if (!(guard_overhead >= 0.0 && guard_overhead < 1.0))
            throw std::invalid_argument("CapacityConfig: guard_overhead must be in [0, 1)");
    }
};

// Full duplex uses the whole band all the time.
inline double capacity_fd(const CapacityConfig &cfg, double sinr_db)
{
    if (std::isinf(sinr_db) && sinr_db < 0)
        return 0.0;
    return cfg.bandwidth_hz * std::log2(1.0 + db_to_linear(sinr_db));
}

// Half the time per direction, minus the guard interval; no interference term
// since the slots are orthogonal.
inline double capacity_tdd(const CapacityConfig &cfg, double snr_db)
{
    return cfg.tdd_duty * (1.0 - cfg.guard_overhead) * capacity_fd(cfg, snr_db);
}

// SNR at which capacity_tdd() returns `capacity_bps`.
inline double tdd_snr_for_capacity(const CapacityConfig &cfg, double capacity_bps)
{
    const double per_hz = capacity_bps / (cfg.tdd_duty * (1.0 - cfg.guard_overhead) * cfg.bandwidth_hz);
    return linear_to_db(std::exp2(per_hz) - 1.0);
}

struct CdfPoint
{
    double value_dbm = 0.0;
    double cum_fraction = 0.0;
};

// Right-continuous empirical CDF over the distinct sorted values; the last
// entry is exactly 1.
inline std::vector<CdfPoint> cdf(std::span<const double> values)
{
    if (values.empty())
        throw std::invalid_argument("cdf: no values");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    std::vector<CdfPoint> out;
    const double n = static_cast<double>(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        if (i + 1 < v.size() && v[i + 1] == v[i])
            continue;
        out.push_back({v[i], i + 1 == v.size() ? 1.0 : static_cast<double>(i + 1) / n});
    }
    return out;
}

// Fraction of values at or below `threshold`. Readings clamped to an
// instrument floor sit exactly at the floor, and those count as "below" it.
inline double coverage_fraction(std::span<const double> values, double threshold)
{
    if (values.empty())
        throw std::invalid_argument("coverage_fraction: no values");
    const auto k = std::count_if(values.begin(), values.end(), [&](double v) { return v <= threshold; });
    return static_cast<double>(k) / static_cast<double>(values.size());
}

} // namespace uavfd
