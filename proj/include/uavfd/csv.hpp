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

// CSV formats. Numbers are written in shortest round-trip form, so a file read
// back reproduces the in-memory values exactly; absent values are empty
// fields.
//
//   sweep:  x_m,y_m,h_m,p_int_dbm,p_des_dbm,evm,sinr_db,capacity_bps,sync_ok
//   cdf:    value_dbm,cum_fraction
//   region: x_m,y_m,h_m

#include "uavfd/campaign.hpp"
#include "uavfd/metrics.hpp"

#include <charconv>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace uavfd
{

inline constexpr std::string_view sweep_csv_header = "x_m,y_m,h_m,p_int_dbm,p_des_dbm,evm,sinr_db,capacity_bps,sync_ok";
inline constexpr std::string_view cdf_csv_header = "value_dbm,cum_fraction";
inline constexpr std::string_view region_csv_header = "x_m,y_m,h_m";

// Input that fails to parse; `line` is 1-based.
class DataError : public std::runtime_error
{
  public:
    DataError(const std::string &what, std::size_t line)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

inline std::string format_number(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::optional<double> parse_number(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    if (s.empty())
        return std::nullopt;
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    return v;
}

namespace detail
{
inline std::vector<std::string_view> split_csv(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;)
    {
        const auto pos = line.find(',', start);
        if (pos == std::string_view::npos)
        {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

inline std::string opt(const std::optional<double> &v) { return v ? format_number(*v) : std::string{}; }

inline std::string_view trim_cr(std::string_view s)
{
    if (!s.empty() && s.back() == '\r')
        s.remove_suffix(1);
    return s;
}
} // namespace detail

inline void write_sweep_csv(std::ostream &os, const std::vector<SweepRecord> &records)
{
    os << sweep_csv_header << '\n';
    for (const auto &r : records)
    {
        os << format_number(r.position.x) << ',' << format_number(r.position.y) << ','
           << format_number(r.position.z) << ',' << format_number(r.interference_power_dbm) << ','
           << format_number(r.desired_power_dbm) << ',' << detail::opt(r.evm) << ',' << detail::opt(r.sinr_db)
           << ',' << detail::opt(r.capacity_bps) << ',' << (r.sync_ok ? (*r.sync_ok ? "1" : "0") : "") << '\n';
    }
}

inline std::vector<SweepRecord> read_sweep_csv(std::istream &is)
{
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(is, line))
        throw DataError("empty file, expected header", 0);
    ++lineno;
    if (detail::trim_cr(line) != sweep_csv_header)
        throw DataError("unexpected header, expected '" + std::string(sweep_csv_header) + "'", lineno);

    std::vector<SweepRecord> out;
    while (std::getline(is, line))
    {
        ++lineno;
        const auto l = detail::trim_cr(line);
        if (l.empty())
            continue;
        const auto f = detail::split_csv(l);
        if (f.size() != 9)
            throw DataError("expected 9 fields, got " + std::to_string(f.size()), lineno);
        try
        {
            auto req = [&](int i, const char *name) {
                const auto v = parse_number(f[i]);
                if (!v)
                    throw std::invalid_argument(std::string("missing ") + name);
                return *v;
            };
            SweepRecord r;
            r.index = out.size();
            r.position = {req(0, "x_m"), req(1, "y_m"), req(2, "h_m")};
            r.interference_power_dbm = req(3, "p_int_dbm");
            r.desired_power_dbm = req(4, "p_des_dbm");
            r.evm = parse_number(f[5]);
            r.sinr_db = parse_number(f[6]);
            r.capacity_bps = parse_number(f[7]);
            const auto s = detail::trim_cr(f[8]);
            if (s == "1")
                r.sync_ok = true;
            else if (s == "0")
                r.sync_ok = false;
            else if (!s.empty())
                throw std::invalid_argument("sync_ok must be 0, 1 or empty");
            out.push_back(r);
        }
        catch (const std::invalid_argument &e)
        {
            throw DataError(e.what(), lineno);
        }
    }
    return out;
}

inline void write_cdf_csv(std::ostream &os, const std::vector<CdfPoint> &table)
{
    os << cdf_csv_header << '\n';
    for (const auto &p : table)
        os << format_number(p.value_dbm) << ',' << format_number(p.cum_fraction) << '\n';
}

inline std::vector<CdfPoint> read_cdf_csv(std::istream &is)
{
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(is, line) || detail::trim_cr(line) != cdf_csv_header)
        throw DataError("unexpected header, expected '" + std::string(cdf_csv_header) + "'", lineno);
    std::vector<CdfPoint> out;
    while (std::getline(is, line))
    {
        ++lineno;
        const auto l = detail::trim_cr(line);
        if (l.empty())
            continue;
        const auto f = detail::split_csv(l);
        try
        {
            if (f.size() != 2)
                throw std::invalid_argument("expected 2 fields");
            const auto v = parse_number(f[0]);
            const auto c = parse_number(f[1]);
            if (!v || !c)
                throw std::invalid_argument("missing field");
            out.push_back({*v, *c});
        }
        catch (const std::invalid_argument &e)
        {
            throw DataError(e.what(), lineno);
        }
    }
    return out;
}

inline void write_region_csv(std::ostream &os, const std::vector<Position> &region)
{
    os << region_csv_header << '\n';
    for (const auto &p : region)
        os << format_number(p.x) << ',' << format_number(p.y) << ',' << format_number(p.z) << '\n';
}

} // namespace uavfd
