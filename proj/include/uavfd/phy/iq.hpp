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

// Raw IQ dump: interleaved (I, Q) pairs of 32-bit little-endian IEEE floats.

#include "uavfd/phy/fft.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

namespace uavfd::phy
{

namespace detail
{
inline void put_f32_le(std::ostream &os, float f)
{
    const auto u = std::bit_cast<std::uint32_t>(f);
    const std::array<char, 4> b{static_cast<char>(u & 0xFF), static_cast<char>((u >> 8) & 0xFF),
                                static_cast<char>((u >> 16) & 0xFF), static_cast<char>((u >> 24) & 0xFF)};
    os.write(b.data(), 4);
}

inline float get_f32_le(const unsigned char *b)
{
    const std::uint32_t u = std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 |
                            std::uint32_t(b[3]) << 24;
    return std::bit_cast<float>(u);
}
} // namespace detail

inline void write_iq(std::ostream &os, std::span<const cplx> samples)
{
    for (const auto &v : samples)
    {
        detail::put_f32_le(os, static_cast<float>(v.real()));
        detail::put_f32_le(os, static_cast<float>(v.imag()));
    }
    if (!os)
        throw std::runtime_error("write_iq: stream error");
}

inline std::vector<cplx> read_iq(std::istream &is)
{
    std::vector<char> raw((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    if (raw.size() % 8 != 0)
        throw std::runtime_error("read_iq: size is not a multiple of 8 bytes");
    std::vector<cplx> out(raw.size() / 8);
    const auto *b = reinterpret_cast<const unsigned char *>(raw.data());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = {detail::get_f32_le(b + 8 * i), detail::get_f32_le(b + 8 * i + 4)};
    return out;
}

} // namespace uavfd::phy
