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

// OFDM transmitter: FEC -> 16QAM -> carrier mapping + comb pilots -> IFFT ->
// CP, behind a two-half preamble for timing and frequency acquisition.
//
// Frame layout (no CP on the preamble):
//
//   | preamble: A A (fft_size) | CP | sym 0 | CP | sym 1 | ... |
//
// Active subcarriers are centered around an unused DC bin: for 600 active
// carriers the indices are -300..-1 and +1..+300. Every pilot_spacing-th
// active carrier (counting from the lowest) is a pilot.

#include "uavfd/phy/fec.hpp"
#include "uavfd/phy/fft.hpp"
#include "uavfd/phy/qam.hpp"
#include "uavfd/random.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace uavfd::phy
{

struct OfdmParams
{
    std::size_t fft_size = 1024;
    std::size_t cp_length = 128;
    std::size_t active_subcarriers = 600;
    std::size_t pilot_spacing = 8;
    std::size_t data_symbols = 10;
    double sampling_rate_hz = 15.36e6;
    double bandwidth_hz = 10e6;
    double carrier_freq_hz = 5.7e9; // metadata; simulation is complex baseband

    void validate() const
    {
        auto fail = [](const std::string &m) { throw std::invalid_argument("OfdmParams: " + m); };
        if (fft_size < 8 || fft_size % 2 != 0)
            fail("fft_size must be even and >= 8");
        if (active_subcarriers == 0 || active_subcarriers % 2 != 0 || active_subcarriers >= fft_size)
            fail("active_subcarriers must be even, > 0 and < fft_size");
        if (cp_length >= fft_size)
            fail("cp_length must be < fft_size");
        if (pilot_spacing == 0 || active_subcarriers % pilot_spacing != 0)
            fail("pilot_spacing must divide active_subcarriers");
        if (pilot_spacing == 1)
            fail("pilot_spacing 1 leaves no data carriers");
        if (!(sampling_rate_hz > 0.0) || !(bandwidth_hz > 0.0))
            fail("rates must be > 0");
        if (data_symbols > 0 && coded_bits_per_frame() / 2 <= static_cast<std::size_t>(fec_tail_bits))
            fail("frame too short for the FEC tail");
    }

    std::size_t symbol_length() const { return fft_size + cp_length; }
    std::size_t preamble_length() const { return fft_size; }
    std::size_t frame_length() const { return preamble_length() + data_symbols * symbol_length(); }
    std::size_t pilot_count() const { return active_subcarriers / pilot_spacing; }
    std::size_t data_carriers() const { return active_subcarriers - pilot_count(); }
    std::size_t coded_bits_per_frame() const { return data_symbols * data_carriers() * 4; }

    // Information bits carried by one frame after the rate-1/2 zero-tail code.
    std::size_t payload_bits() const
    {
        return data_symbols == 0 ? 0 : coded_bits_per_frame() / 2 - fec_tail_bits;
    }

    // Fraction of the sampled band covered by active carriers.
    double inband_fraction() const
    {
        return static_cast<double>(active_subcarriers) / static_cast<double>(fft_size);
    }

    // Signed subcarrier index of active carrier `a` (0-based, lowest first).
    long subcarrier(std::size_t a) const
    {
        const long half = static_cast<long>(active_subcarriers / 2);
        const long i = static_cast<long>(a);
        return i < half ? i - half : i - half + 1;
    }

    std::size_t bin(std::size_t a) const
    {
        const long k = subcarrier(a);
        const long n = static_cast<long>(fft_size);
        return static_cast<std::size_t>((k + n) % n);
    }

    bool is_pilot(std::size_t a) const { return a % pilot_spacing == 0; }
};

// Complex baseband samples with the frame layout they were built with.
struct FrameBuffer
{
    std::vector<cplx> samples;
    std::size_t preamble_length = 0;
    std::size_t n_symbols = 0;
    std::size_t symbol_length = 0;

    std::size_t expected_length() const { return preamble_length + n_symbols * symbol_length; }
};

struct TxFrame
{
    FrameBuffer buffer;
    std::vector<std::uint8_t> payload;
    std::vector<cplx> data_symbols; // transmitted constellation points, symbol-major
};

namespace detail
{
inline cplx qpsk(Rng &rng)
{
    const double s = std::numbers::sqrt2 / 2.0;
    return {rng.bit() ? -s : s, rng.bit() ? -s : s};
}

inline constexpr std::uint64_t preamble_seed = 0x5C0A11BEEFULL;
inline constexpr std::uint64_t pilot_seed = 0x917077ULL;
} // namespace detail

// Time-domain preamble: QPSK on even active subcarriers only, which makes the
// two halves identical. Unit average power.
inline std::vector<cplx> make_preamble(const OfdmParams &p, const Fft &fft)
{
    std::vector<cplx> freq(p.fft_size);
    Rng rng(detail::preamble_seed);
    std::size_t used = 0;
    for (std::size_t a = 0; a < p.active_subcarriers; ++a)
        if (p.subcarrier(a) % 2 == 0)
            ++used;
    const double scale = std::sqrt(static_cast<double>(p.fft_size) / static_cast<double>(used));
    for (std::size_t a = 0; a < p.active_subcarriers; ++a)
        if (p.subcarrier(a) % 2 == 0)
            freq[p.bin(a)] = detail::qpsk(rng) * scale;
    return fft.inverse(freq);
}

inline std::vector<cplx> make_preamble(const OfdmParams &p)
{
    const Fft fft(p.fft_size);
    return make_preamble(p, fft);
}

// Pilot values, symbol-major: pilots[s * pilot_count + j]. Pseudo-random QPSK;
// the default sequence is the one the receiver expects.
inline std::vector<cplx> make_pilots(const OfdmParams &p, std::size_t n_symbols,
                                     std::uint64_t seed = detail::pilot_seed)
{
    std::vector<cplx> out(n_symbols * p.pilot_count());
    Rng rng(seed);
    for (auto &v : out)
        v = detail::qpsk(rng);
    return out;
}

// Gain applied to unit-energy carriers so OFDM symbols have unit mean power.
inline double carrier_scale(const OfdmParams &p)
{
    return std::sqrt(1.0 / p.inband_fraction());
}

namespace detail
{
// Appends CP + one OFDM symbol carrying `data` (data_carriers values) and the
// pilots for symbol index `s`.
inline void append_symbol(const OfdmParams &p, const Fft &fft, std::span<const cplx> data,
                          std::span<const cplx> pilots, std::vector<cplx> &out)
{
    std::vector<cplx> freq(p.fft_size);
    const double g = carrier_scale(p);
    std::size_t di = 0;
    std::size_t pi = 0;
    for (std::size_t a = 0; a < p.active_subcarriers; ++a)
        freq[p.bin(a)] = g * (p.is_pilot(a) ? pilots[pi++] : data[di++]);
    const auto time = fft.inverse(freq);
    out.insert(out.end(), time.end() - static_cast<long>(p.cp_length), time.end());
    out.insert(out.end(), time.begin(), time.end());
}
} // namespace detail

// Builds one frame carrying exactly p.payload_bits() information bits.
inline TxFrame build_frame(const OfdmParams &p, std::span<const std::uint8_t> payload)
{
    p.validate();
    if (payload.size() != p.payload_bits())
        throw std::invalid_argument("build_frame: payload has " + std::to_string(payload.size()) +
                                    " bits, frame carries " + std::to_string(p.payload_bits()));
    const Fft fft(p.fft_size);

    TxFrame tx;
    tx.payload.assign(payload.begin(), payload.end());
    auto &buf = tx.buffer;
    buf.preamble_length = p.preamble_length();
    buf.n_symbols = p.data_symbols;
    buf.symbol_length = p.symbol_length();
    buf.samples = make_preamble(p, fft);
    buf.samples.reserve(p.frame_length());

    if (p.data_symbols == 0)
        return tx;

    const auto coded = fec_encode(payload);
    tx.data_symbols = map_16qam(coded);
    const auto pilots = make_pilots(p, p.data_symbols);
    const std::size_t nd = p.data_carriers();
    const std::size_t np = p.pilot_count();
    for (std::size_t s = 0; s < p.data_symbols; ++s)
        detail::append_symbol(p, fft, std::span(tx.data_symbols).subspan(s * nd, nd),
                              std::span(pilots).subspan(s * np, np), buf.samples);
    return tx;
}

inline std::vector<std::uint8_t> random_payload(const OfdmParams &p, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<std::uint8_t> bits(p.payload_bits());
    for (auto &b : bits)
        b = rng.bit();
    return bits;
}

// Continuous stream of data symbols with no preamble, e.g. another node's
// steady-state uplink traffic seen by a receiver it was never synchronised to.
// Its pilot sequence is derived from `seed`, so it does not repeat the
// receiver's reference pilots.
inline std::vector<cplx> build_stream(const OfdmParams &p, std::size_t n_symbols, std::uint64_t seed)
{
    p.validate();
    const Fft fft(p.fft_size);
    Rng rng(seed);
    const std::size_t nd = p.data_carriers();
    const auto pilots = make_pilots(p, n_symbols, derive_seed(seed, 0x9170));
    std::vector<cplx> out;
    out.reserve(n_symbols * p.symbol_length());
    std::vector<std::uint8_t> bits(nd * 4);
    for (std::size_t s = 0; s < n_symbols; ++s)
    {
        for (auto &b : bits)
            b = rng.bit();
        const auto data = map_16qam(bits);
        detail::append_symbol(p, fft, data, std::span(pilots).subspan(s * p.pilot_count(), p.pilot_count()), out);
    }
    return out;
}

inline double mean_power(std::span<const cplx> x)
{
    if (x.empty())
        return 0.0;
    double acc = 0.0;
    for (const auto &v : x)
        acc += std::norm(v);
    return acc / static_cast<double>(x.size());
}

} // namespace uavfd::phy
