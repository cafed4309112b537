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

// Rate-1/2 convolutional code, K = 7, generators 133/171 (octal), zero-tail
// terminated, with a maximum-likelihood Viterbi decoder.

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace uavfd::phy
{

inline constexpr int fec_constraint_length = 7;
inline constexpr int fec_tail_bits = fec_constraint_length - 1;
inline constexpr unsigned fec_states = 1u << fec_tail_bits;
inline constexpr unsigned fec_g0 = 0133;
inline constexpr unsigned fec_g1 = 0171;

// Coded length for `info_bits` payload bits.
constexpr std::size_t fec_coded_length(std::size_t info_bits)
{
    return 2 * (info_bits + fec_tail_bits);
}

namespace detail
{
// Register layout: bit 6 is the newest input, bits 5..0 the state (older bits
// toward bit 0), matching the MSB-first reading of the octal generators.
constexpr std::array<std::uint8_t, 2> fec_outputs(unsigned reg)
{
    return {static_cast<std::uint8_t>(std::popcount(reg & fec_g0) & 1),
            static_cast<std::uint8_t>(std::popcount(reg & fec_g1) & 1)};
}
} // namespace detail

inline std::vector<std::uint8_t> fec_encode(std::span<const std::uint8_t> bits)
{
    std::vector<std::uint8_t> out;
    out.reserve(fec_coded_length(bits.size()));
    unsigned state = 0;
    auto push = [&](unsigned b) {
        const unsigned reg = ((b & 1u) << fec_tail_bits) | state;
        const auto o = detail::fec_outputs(reg);
        out.push_back(o[0]);
        out.push_back(o[1]);
        state = reg >> 1;
    };
    for (auto b : bits)
        push(b);
    for (int i = 0; i < fec_tail_bits; ++i)
        push(0);
    return out;
}

// Soft-input Viterbi. llr > 0 favours a coded 0. Returns the ML information
// sequence of the zero-terminated trellis; never fails.
inline std::vector<std::uint8_t> fec_decode_soft(std::span<const double> llr)
{
    if (llr.size() % 2 != 0)
        throw std::invalid_argument("fec_decode: coded length must be even");
    const std::size_t steps = llr.size() / 2;
    if (steps < static_cast<std::size_t>(fec_tail_bits))
        return {};

    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    std::array<double, fec_states> metric;
    std::array<double, fec_states> next;
    metric.fill(neg_inf);
    metric[0] = 0.0;
    // survivors[t * states + s] = predecessor's dropped bit (state LSB) and
    // input bit packed as (input << 1) | dropped.
    std::vector<std::uint8_t> survivors(steps * fec_states);

    // Precomputed branch outputs for each (state, input).
    std::array<std::array<std::uint8_t, 2>, fec_states * 2> outs{};
    for (unsigned s = 0; s < fec_states; ++s)
        for (unsigned b = 0; b < 2; ++b)
            outs[s * 2 + b] = detail::fec_outputs((b << fec_tail_bits) | s);

    for (std::size_t t = 0; t < steps; ++t)
    {
        const double l0 = llr[2 * t];
        const double l1 = llr[2 * t + 1];
        next.fill(neg_inf);
        auto *surv = &survivors[t * fec_states];
        for (unsigned s = 0; s < fec_states; ++s)
        {
            if (metric[s] == neg_inf)
                continue;
            for (unsigned b = 0; b < 2; ++b)
            {
                const auto &o = outs[s * 2 + b];
                const double m = metric[s] + (o[0] ? -l0 : l0) + (o[1] ? -l1 : l1);
                const unsigned ns = ((b << fec_tail_bits) | s) >> 1;
                if (m > next[ns])
                {
                    next[ns] = m;
                    surv[ns] = static_cast<std::uint8_t>((b << 1) | (s & 1u));
                }
            }
        }
        metric = next;
    }

    // Trace back from the all-zero terminal state.
    std::vector<std::uint8_t> decoded(steps);
    unsigned s = 0;
    for (std::size_t t = steps; t-- > 0;)
    {
        const std::uint8_t sv = survivors[t * fec_states + s];
        decoded[t] = static_cast<std::uint8_t>(sv >> 1);
        s = ((s << 1) & (fec_states - 1)) | (sv & 1u);
    }
    decoded.resize(steps - fec_tail_bits);
    return decoded;
}

// Hard-decision decoding (Hamming metric).
inline std::vector<std::uint8_t> fec_decode(std::span<const std::uint8_t> coded)
{
    std::vector<double> llr(coded.size());
    for (std::size_t i = 0; i < coded.size(); ++i)
        llr[i] = coded[i] ? -1.0 : 1.0;
    return fec_decode_soft(llr);
}

} // namespace uavfd::phy
