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

// Gray-mapped 16QAM with unit average energy.
//
// Four bits b0 b1 b2 b3 select I from (b0, b1) and Q from (b2, b3):
//
//   b0 b1 | level
//   ------+------
//    0  0 |  +1
//    0  1 |  +3
//    1  1 |  -3
//    1  0 |  -1
//
// scaled by 1/sqrt(10). So 0000 -> (1 + 1j)/sqrt(10).

#include "uavfd/phy/fft.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace uavfd::phy
{

inline const double qam16_scale = 1.0 / std::sqrt(10.0);

namespace detail
{
constexpr double qam16_level(unsigned sign_bit, unsigned mag_bit)
{
    const double mag = mag_bit ? 3.0 : 1.0;
    return sign_bit ? -mag : mag;
}

// Max-log LLRs (positive favours 0) for the two bits of one axis, with the
// axis value in unscaled units (levels +-1, +-3).
inline std::array<double, 2> qam16_axis_llr(double v)
{
    constexpr std::array<double, 4> levels{1.0, 3.0, -1.0, -3.0}; // index = (b0 << 1) | b1
    std::array<double, 2> best0{1e300, 1e300};
    std::array<double, 2> best1{1e300, 1e300};
    for (unsigned idx = 0; idx < 4; ++idx)
    {
        const double d = (v - levels[idx]) * (v - levels[idx]);
        const unsigned bits[2] = {idx >> 1, idx & 1u};
        for (int k = 0; k < 2; ++k)
        {
            auto &slot = bits[k] ? best1[k] : best0[k];
            if (d < slot)
                slot = d;
        }
    }
    return {best1[0] - best0[0], best1[1] - best0[1]};
}
} // namespace detail

inline cplx qam16_point(unsigned nibble)
{
    const double i = detail::qam16_level((nibble >> 3) & 1u, (nibble >> 2) & 1u);
    const double q = detail::qam16_level((nibble >> 1) & 1u, nibble & 1u);
    return cplx(i, q) * qam16_scale;
}

inline std::vector<cplx> map_16qam(std::span<const std::uint8_t> bits)
{
    if (bits.size() % 4 != 0)
        throw std::invalid_argument("map_16qam: bit count must be a multiple of 4");
    std::vector<cplx> out(bits.size() / 4);
    for (std::size_t k = 0; k < out.size(); ++k)
    {
        const auto *b = &bits[4 * k];
        out[k] = qam16_point((b[0] & 1u) << 3 | (b[1] & 1u) << 2 | (b[2] & 1u) << 1 | (b[3] & 1u));
    }
    return out;
}

// Soft demapping. `weight` scales each symbol's LLRs (e.g. |H|^2 / noise).
inline std::vector<double> demap_16qam_soft(std::span<const cplx> symbols, std::span<const double> weight = {})
{
    std::vector<double> llr(symbols.size() * 4);
    for (std::size_t k = 0; k < symbols.size(); ++k)
    {
        const double w = weight.empty() ? 1.0 : weight[k];
        const auto li = detail::qam16_axis_llr(symbols[k].real() / qam16_scale);
        const auto lq = detail::qam16_axis_llr(symbols[k].imag() / qam16_scale);
        llr[4 * k + 0] = w * li[0];
        llr[4 * k + 1] = w * li[1];
        llr[4 * k + 2] = w * lq[0];
        llr[4 * k + 3] = w * lq[1];
    }
    return llr;
}

inline std::vector<std::uint8_t> demap_16qam(std::span<const cplx> symbols)
{
    const auto llr = demap_16qam_soft(symbols);
    std::vector<std::uint8_t> bits(llr.size());
    for (std::size_t i = 0; i < llr.size(); ++i)
        bits[i] = llr[i] < 0.0 ? 1 : 0;
    return bits;
}

} // namespace uavfd::phy
