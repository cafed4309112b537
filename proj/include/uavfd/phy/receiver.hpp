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

// OFDM receiver: preamble acquisition, FFT, pilot channel estimation, one-tap
// equalization, EVM, soft demapping and Viterbi decoding.

#include "uavfd/phy/fec.hpp"
#include "uavfd/phy/fft.hpp"
#include "uavfd/phy/ofdm.hpp"
#include "uavfd/phy/qam.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

namespace uavfd::phy
{

struct SyncOptions
{
    // Detection threshold on the normalized preamble correlation.
    double threshold = 0.5;
    // Fine-timing search half-width around the coarse estimate; 0 = cp_length.
    std::size_t fine_window = 0;
    // Half-width, in pilots, of the moving average applied to the pilot
    // channel estimates (0 disables it).
    std::size_t pilot_smoothing = 2;
};

struct SyncResult
{
    bool success = false;
    std::size_t preamble_start = 0;
    std::size_t data_start = 0;      // first sample of the first OFDM symbol's CP
    double timing_metric = 0.0;      // peak |P|^2 / (E1 E2) of the half-lag autocorrelation
    double correlation = 0.0;        // detection statistic, compared to the threshold
    double cfo_hz = 0.0;             // acquisition estimate; RxResult holds the refined one
};

namespace detail
{
struct HalfLagCorrelation
{
    std::vector<cplx> p;
    std::vector<double> e1;
    std::vector<double> e2;
};

// P(d) = sum_{m<L} conj(r[d+m]) r[d+m+L] and the energies E1(d), E2(d) of the
// two half windows, for d in [0, last]. Sliding updates, re-seeded every L
// steps to bound accumulated rounding.
inline HalfLagCorrelation half_lag_correlation(std::span<const cplx> x, std::size_t lag, std::size_t last)
{
    HalfLagCorrelation out;
    out.p.resize(last + 1);
    out.e1.resize(last + 1);
    out.e2.resize(last + 1);
    cplx p{};
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t d = 0; d <= last; ++d)
    {
        if (d % lag == 0)
        {
            p = {};
            e1 = e2 = 0.0;
            for (std::size_t m = 0; m < lag; ++m)
            {
                p += std::conj(x[d + m]) * x[d + m + lag];
                e1 += std::norm(x[d + m]);
                e2 += std::norm(x[d + m + lag]);
            }
        }
        else
        {
            const std::size_t a = d - 1;
            p += std::conj(x[a + lag]) * x[a + 2 * lag] - std::conj(x[a]) * x[a + lag];
            e1 += std::norm(x[a + lag]) - std::norm(x[a]);
            e2 += std::norm(x[a + 2 * lag]) - std::norm(x[a + lag]);
        }
        out.p[d] = p;
        out.e1[d] = e1;
        out.e2[d] = e2;
    }
    return out;
}
} // namespace detail

// Two-stage acquisition. Coarse timing and the fractional frequency offset
// come from the half-lag autocorrelation metric |P|^2 / (E1 E2), which is at
// most 1 and reaches it only on an exact repetition. Fine timing and
// the detect decision come from the normalized cross-correlation with the
// known preamble after frequency correction, which for a signal-to-
// everything-else ratio rho behaves as sqrt(rho / (1 + rho)).
inline SyncResult synchronize(std::span<const cplx> x, const OfdmParams &p, const SyncOptions &opt = {})
{
    SyncResult res;
    const std::size_t n = p.fft_size;
    const std::size_t lag = n / 2;
    const std::size_t frame = p.frame_length();
    if (x.size() < frame)
        return res;
    const std::size_t last = x.size() - frame;

    const auto hc = detail::half_lag_correlation(x, lag, last);
    std::size_t coarse = 0;
    double best = -1.0;
    for (std::size_t d = 0; d <= last; ++d)
    {
        const double den = hc.e1[d] * hc.e2[d];
        const double m = den > 0.0 ? std::norm(hc.p[d]) / den : 0.0;
        if (m > best)
        {
            best = m;
            coarse = d;
        }
    }
    res.timing_metric = std::max(best, 0.0);
    const double cfo_norm = std::arg(hc.p[coarse]) / (2.0 * std::numbers::pi * static_cast<double>(lag));
    res.cfo_hz = cfo_norm * p.sampling_rate_hz;

    const auto pre = make_preamble(p);
    double pre_energy = 0.0;
    for (const auto &v : pre)
        pre_energy += std::norm(v);

    const std::size_t w = opt.fine_window ? opt.fine_window : p.cp_length;
    const std::size_t lo = coarse > w ? coarse - w : 0;
    const std::size_t hi = std::min(last, coarse + w);

    // Frequency-corrected copy of the search span, padded and passed through
    // a brick-wall channel filter so out-of-band noise does not dilute the
    // detection statistic.
    const std::size_t pad = std::min<std::size_t>(p.cp_length, 64);
    const std::size_t a0 = lo >= pad ? lo - pad : 0;
    const std::size_t a1 = std::min(x.size(), hi + n + pad);
    const std::size_t len = a1 - a0;
    std::vector<cplx> buf(len);
    for (std::size_t i = 0; i < len; ++i)
    {
        const double ph = -2.0 * std::numbers::pi * cfo_norm * static_cast<double>(a0 + i);
        buf[i] = x[a0 + i] * std::polar(1.0, ph);
    }
    {
        const Fft f(len);
        auto spec = f.forward(buf);
        // Keep |f| <= (active / 2 + 1) subcarrier spacings.
        const double edge = (static_cast<double>(p.active_subcarriers) / 2.0 + 1.0) * static_cast<double>(len) /
                            static_cast<double>(n);
        for (std::size_t k = 0; k < len; ++k)
        {
            const double kk = k <= len / 2 ? static_cast<double>(k) : static_cast<double>(len - k);
            if (kk > edge)
                spec[k] = 0.0;
        }
        buf = f.inverse(spec);
    }
    const cplx *y = buf.data() + (lo - a0);

    double best_rho = 0.0;
    std::size_t fine = coarse;
    for (std::size_t d = lo; d <= hi; ++d)
    {
        cplx c{};
        double e = 0.0;
        const cplx *seg = y + (d - lo);
        for (std::size_t m = 0; m < n; ++m)
        {
            c += seg[m] * std::conj(pre[m]);
            e += std::norm(seg[m]);
        }
        const double rho = e > 0.0 ? std::abs(c) / std::sqrt(e * pre_energy) : 0.0;
        if (rho > best_rho)
        {
            best_rho = rho;
            fine = d;
        }
    }
    res.correlation = best_rho;
    res.preamble_start = fine;
    res.data_start = fine + p.preamble_length();
    res.success = best_rho >= opt.threshold;
    return res;
}

struct RxResult
{
    bool sync_success = false;
    SyncResult sync;
    double cfo_hz = 0.0; // after pilot-based refinement
    std::vector<std::uint8_t> payload;
    double evm_rms = 0.0; // meaningful only when sync_success
    std::size_t bit_errors = 0;
};

// Demodulates the frame found by synchronize(). `reference` holds the
// transmitted data constellation points (symbol-major) used for EVM; when
// `truth_payload` is provided bit errors are counted against it.
inline RxResult receive_frame(std::span<const cplx> x, const OfdmParams &p, std::span<const cplx> reference,
                              std::span<const std::uint8_t> truth_payload = {}, const SyncOptions &opt = {})
{
    RxResult rx;
    rx.sync = synchronize(x, p, opt);
    rx.sync_success = rx.sync.success;
    if (!rx.sync_success || p.data_symbols == 0)
        return rx;

    const std::size_t n = p.fft_size;
    const std::size_t na = p.active_subcarriers;
    const std::size_t np = p.pilot_count();
    const std::size_t nd = p.data_carriers();
    const std::size_t ns = p.data_symbols;
    const Fft fft(n);
    const double g = carrier_scale(p);
    const auto pilots = make_pilots(p, ns);

    // Active carriers of every symbol, symbol-major.
    std::vector<cplx> grid(ns * na);
    std::vector<cplx> td(n);
    auto demodulate = [&](double cfo_norm) {
        for (std::size_t s = 0; s < ns; ++s)
        {
            const std::size_t start = rx.sync.data_start + s * p.symbol_length() + p.cp_length;
            for (std::size_t m = 0; m < n; ++m)
            {
                const double ph = -2.0 * std::numbers::pi * cfo_norm * static_cast<double>(start + m);
                td[m] = x[start + m] * std::polar(1.0, ph);
            }
            const auto fd = fft.forward(td);
            for (std::size_t a = 0; a < na; ++a)
                grid[s * na + a] = fd[p.bin(a)];
        }
    };
    auto pilot_ls = [&](std::size_t s, std::size_t j) {
        return grid[s * na + j * p.pilot_spacing] / (g * pilots[s * np + j]);
    };

    // Residual frequency offset from the pilot phase advance between
    // consecutive symbols, then a second pass with the refined offset.
    double cfo_norm = rx.sync.cfo_hz / p.sampling_rate_hz;
    demodulate(cfo_norm);
    if (ns > 1)
    {
        cplx adv{};
        for (std::size_t s = 0; s + 1 < ns; ++s)
            for (std::size_t j = 0; j < np; ++j)
                adv += pilot_ls(s + 1, j) * std::conj(pilot_ls(s, j));
        if (std::abs(adv) > 0.0)
        {
            cfo_norm += std::arg(adv) / (2.0 * std::numbers::pi * static_cast<double>(p.symbol_length()));
            demodulate(cfo_norm);
        }
    }
    rx.cfo_hz = cfo_norm * p.sampling_rate_hz;

    // LS estimates at pilots, averaged over the frame (static channel).
    std::vector<cplx> hp(np);
    for (std::size_t s = 0; s < ns; ++s)
        for (std::size_t j = 0; j < np; ++j)
            hp[j] += pilot_ls(s, j);
    for (auto &h : hp)
        h /= static_cast<double>(ns);

    // Moving average across pilots with the common phase slope (residual
    // timing offset) taken out first and restored afterwards.
    if (opt.pilot_smoothing > 0 && np > 1)
    {
        cplx slope{};
        for (std::size_t j = 0; j + 1 < np; ++j)
            slope += hp[j + 1] * std::conj(hp[j]);
        const double dphi = std::abs(slope) > 0.0 ? std::arg(slope) : 0.0;
        std::vector<cplx> flat(np);
        for (std::size_t j = 0; j < np; ++j)
            flat[j] = hp[j] * std::polar(1.0, -dphi * static_cast<double>(j));
        const std::size_t hw = opt.pilot_smoothing;
        for (std::size_t j = 0; j < np; ++j)
        {
            const std::size_t a = j > hw ? j - hw : 0;
            const std::size_t b = std::min(np - 1, j + hw);
            cplx acc{};
            for (std::size_t k = a; k <= b; ++k)
                acc += flat[k];
            hp[j] = acc / static_cast<double>(b - a + 1) * std::polar(1.0, dphi * static_cast<double>(j));
        }
    }

    // Linear interpolation between pilots, held flat past the last one.
    std::vector<cplx> h(na);
    for (std::size_t a = 0; a < na; ++a)
    {
        const std::size_t j = a / p.pilot_spacing;
        if (j + 1 >= np)
            h[a] = hp[np - 1];
        else
        {
            const double t = static_cast<double>(a % p.pilot_spacing) / static_cast<double>(p.pilot_spacing);
            h[a] = (1.0 - t) * hp[j] + t * hp[j + 1];
        }
    }

    std::vector<cplx> eq(ns * nd);
    std::vector<double> w(ns * nd);
    for (std::size_t s = 0; s < ns; ++s)
    {
        // Common phase error from the pilots of this symbol.
        cplx cpe{};
        for (std::size_t j = 0; j < np; ++j)
            cpe += grid[s * na + j * p.pilot_spacing] * std::conj(h[j * p.pilot_spacing] * g * pilots[s * np + j]);
        const cplx rot = std::abs(cpe) > 0.0 ? std::conj(cpe) / std::abs(cpe) : cplx{1.0, 0.0};

        std::size_t di = 0;
        for (std::size_t a = 0; a < na; ++a)
        {
            if (p.is_pilot(a))
                continue;
            const cplx ha = h[a] * g;
            const std::size_t k = s * nd + di++;
            eq[k] = std::norm(ha) > 0.0 ? grid[s * na + a] * rot / ha : cplx{};
            w[k] = std::norm(ha);
        }
    }

    if (reference.size() == eq.size())
    {
        double acc = 0.0;
        for (std::size_t k = 0; k < eq.size(); ++k)
            acc += std::norm(eq[k] - reference[k]);
        rx.evm_rms = std::sqrt(acc / static_cast<double>(eq.size()));
    }

    // Normalize weights so LLR magnitudes stay O(1) whatever the rx level.
    double wmean = 0.0;
    for (double v : w)
        wmean += v;
    wmean /= static_cast<double>(w.size());
    if (wmean > 0.0)
        for (double &v : w)
            v /= wmean;

    const auto llr = demap_16qam_soft(eq, w);
    rx.payload = fec_decode_soft(llr);
    if (truth_payload.size() == rx.payload.size())
        for (std::size_t i = 0; i < rx.payload.size(); ++i)
            rx.bit_errors += rx.payload[i] != truth_payload[i];
    return rx;
}

} // namespace uavfd::phy
