// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The uavfd authors

#include "uavfd/campaign.hpp"
#include "uavfd/phy.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <sstream>

using namespace uavfd;
using namespace uavfd::phy;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
std::vector<std::uint8_t> random_bits(std::size_t n, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<std::uint8_t> b(n);
    for (auto &v : b)
        v = rng.bit();
    return b;
}

constexpr double inf = std::numeric_limits<double>::infinity();

// Frame at 0 dBm with optional interferer stream and in-band noise.
struct Trial
{
    TxFrame tx;
    FrameBuffer rx;
    std::size_t delay = 0;
};

Trial make_trial(const OfdmParams &p, double snr_db, double sir_db, std::uint64_t seed, std::size_t delay)
{
    Trial t;
    t.tx = build_frame(p, random_payload(p, derive_seed(seed, 0)));
    const auto intf = build_stream(p, p.data_symbols + 2, derive_seed(seed, 1));
    auto cfg = ImpairConfig::from_levels(0.0, -sir_db, -snr_db, p);
    cfg.delay = delay;
    cfg.tail = p.cp_length;
    cfg.interferer_offset = static_cast<std::size_t>(Rng(derive_seed(seed, 2)).below(intf.size()));
    cfg.seed = derive_seed(seed, 3);
    t.rx = impair(t.tx.buffer, intf, cfg);
    t.delay = delay;
    return t;
}
} // namespace

// ---------------------------------------------------------------- FFT

TEST_CASE("fft round trip preserves the vector and its norm")
{
    Rng rng(1);
    for (std::size_t n : {8u, 64u, 1000u, 1024u})
    {
        const Fft f(n);
        std::vector<cplx> x(n);
        for (auto &v : x)
            v = rng.complex_normal(1.0);
        const auto X = f.forward(x);
        const auto y = f.inverse(X);
        double ex = 0, eX = 0, err = 0;
        for (std::size_t i = 0; i < n; ++i)
        {
            ex += std::norm(x[i]);
            eX += std::norm(X[i]);
            err += std::norm(y[i] - x[i]);
        }
        CHECK_THAT(eX / ex, WithinAbs(1.0, 1e-9));
        CHECK(std::sqrt(err / ex) < 1e-12);
    }
}

TEST_CASE("fft matches a direct DFT")
{
    const std::size_t n = 16;
    Rng rng(2);
    std::vector<cplx> x(n);
    for (auto &v : x)
        v = rng.complex_normal(1.0);
    const auto X = Fft(n).forward(x);
    for (std::size_t k = 0; k < n; ++k)
    {
        cplx acc{};
        for (std::size_t m = 0; m < n; ++m)
            acc += x[m] * std::polar(1.0, -2.0 * std::numbers::pi * double(k * m) / double(n));
        acc /= std::sqrt(double(n));
        CHECK(std::abs(acc - X[k]) < 1e-12);
    }
}

// ---------------------------------------------------------------- FEC

TEST_CASE("fec encodes all-zero input to an all-zero codeword")
{
    for (std::size_t n : {0u, 1u, 17u, 500u})
    {
        const std::vector<std::uint8_t> z(n, 0);
        const auto c = fec_encode(z);
        CHECK(c.size() == fec_coded_length(n));
        CHECK(c.size() == 2 * (n + fec_tail_bits));
        CHECK(std::all_of(c.begin(), c.end(), [](auto b) { return b == 0; }));
    }
}

TEST_CASE("fec impulse response equals the generator taps")
{
    const auto c = fec_encode(std::vector<std::uint8_t>{1});
    // g0 = 1011011, g1 = 1111001 (MSB = current input).
    const int g0[7] = {1, 0, 1, 1, 0, 1, 1};
    const int g1[7] = {1, 1, 1, 1, 0, 0, 1};
    REQUIRE(c.size() == 14);
    for (int i = 0; i < 7; ++i)
    {
        CHECK(c[2 * i] == g0[i]);
        CHECK(c[2 * i + 1] == g1[i]);
    }
}

TEST_CASE("fec round trip without noise")
{
    for (std::uint64_t s = 0; s < 20; ++s)
    {
        const auto x = random_bits(1 + 97 * s, s);
        CHECK(fec_decode(fec_encode(x)) == x);
    }
}

TEST_CASE("fec corrects one flipped bit in twenty")
{
    int ok = 0;
    for (std::uint64_t s = 0; s < 100; ++s)
    {
        const auto x = random_bits(1000, 1000 + s);
        auto c = fec_encode(x);
        Rng rng(s);
        for (std::size_t i = 0; i + 20 <= c.size(); i += 20)
            c[i + rng.below(20)] ^= 1;
        ok += fec_decode(c) == x;
    }
    CHECK(ok >= 99);
}

TEST_CASE("fec is linear")
{
    const auto a = random_bits(300, 1), b = random_bits(300, 2);
    std::vector<std::uint8_t> ab(300);
    for (int i = 0; i < 300; ++i)
        ab[i] = a[i] ^ b[i];
    const auto ca = fec_encode(a), cb = fec_encode(b), cab = fec_encode(ab);
    for (std::size_t i = 0; i < cab.size(); ++i)
        CHECK(cab[i] == (ca[i] ^ cb[i]));
}

// ---------------------------------------------------------------- 16QAM

TEST_CASE("16qam anchor point and normalization")
{
    const auto s = map_16qam(std::vector<std::uint8_t>{0, 0, 0, 0});
    REQUIRE(s.size() == 1);
    CHECK(std::abs(s[0] - cplx(1.0, 1.0) / std::sqrt(10.0)) < 1e-15);

    double e = 0.0;
    for (unsigned n = 0; n < 16; ++n)
        e += std::norm(qam16_point(n));
    CHECK_THAT(e / 16.0, WithinAbs(1.0, 1e-15));
}

TEST_CASE("16qam exhaustive round trip and Gray neighbours")
{
    for (unsigned n = 0; n < 16; ++n)
    {
        const std::vector<std::uint8_t> b{std::uint8_t(n >> 3 & 1), std::uint8_t(n >> 2 & 1), std::uint8_t(n >> 1 & 1),
                                          std::uint8_t(n & 1)};
        const auto s = map_16qam(b);
        CHECK(demap_16qam(s) == b);
        // Nearest neighbours differ in exactly one bit.
        for (unsigned m = 0; m < 16; ++m)
        {
            if (m == n)
                continue;
            const double d = std::abs(qam16_point(m) - qam16_point(n)) * std::sqrt(10.0);
            if (std::abs(d - 2.0) < 1e-9)
                CHECK(std::popcount(m ^ n) == 1);
        }
    }
    CHECK_THROWS_AS(map_16qam(std::vector<std::uint8_t>{1, 0, 1}), std::invalid_argument);
}

TEST_CASE("16qam soft demap signs agree with hard decisions under noise")
{
    Rng rng(3);
    const auto b = random_bits(4000, 4);
    auto s = map_16qam(b);
    for (auto &v : s)
        v += rng.complex_normal(0.01);
    const auto llr = demap_16qam_soft(s);
    const auto hard = demap_16qam(s);
    for (std::size_t i = 0; i < llr.size(); ++i)
        CHECK((llr[i] < 0) == (hard[i] == 1));
}

// ---------------------------------------------------------------- frame

TEST_CASE("ofdm parameter arithmetic")
{
    const OfdmParams p;
    CHECK(p.pilot_count() == 75);
    CHECK(p.data_carriers() == 525);
    CHECK(p.payload_bits() == 1050 * p.data_symbols - 6);
    CHECK_THAT(p.sampling_rate_hz / double(p.fft_size), WithinAbs(15e3, 1e-9));
}

TEST_CASE("frame layout")
{
    OfdmParams p;
    p.data_symbols = 1;
    const auto tx = build_frame(p, random_payload(p, 1));
    CHECK(tx.buffer.samples.size() == 2176);
    CHECK(tx.buffer.samples.size() == tx.buffer.expected_length());

    p.data_symbols = 0;
    const auto pre = build_frame(p, {});
    CHECK(pre.buffer.samples.size() == p.fft_size);
    CHECK(pre.buffer.n_symbols == 0);
}

TEST_CASE("frame length formula over parameter choices")
{
    for (std::size_t fft : {64u, 128u, 256u})
        for (std::size_t cp : {0u, 8u, 16u})
            for (std::size_t ns : {1u, 2u, 5u})
            {
                OfdmParams p;
                p.fft_size = fft;
                p.cp_length = cp;
                p.active_subcarriers = fft / 2;
                p.pilot_spacing = 4;
                p.data_symbols = ns;
                const auto tx = build_frame(p, random_payload(p, fft + cp + ns));
                CHECK(tx.buffer.samples.size() == fft + ns * (fft + cp));
                CHECK(p.frame_length() == fft + ns * (fft + cp));
            }
}

TEST_CASE("frame rejects a payload of the wrong size")
{
    const OfdmParams p;
    CHECK_THROWS_AS(build_frame(p, std::vector<std::uint8_t>(10)), std::invalid_argument);
}

TEST_CASE("frame mean power is unity")
{
    const OfdmParams p;
    double acc = 0.0;
    for (std::uint64_t s = 0; s < 100; ++s)
    {
        const auto tx = build_frame(p, random_payload(p, s));
        const double pw = mean_power(tx.buffer.samples);
        CHECK_THAT(pw, WithinAbs(1.0, 0.05));
        acc += pw;
    }
    CHECK_THAT(acc / 100.0, WithinAbs(1.0, 0.01));
}

TEST_CASE("preamble halves repeat")
{
    const OfdmParams p;
    const auto pre = make_preamble(p);
    REQUIRE(pre.size() == p.fft_size);
    for (std::size_t i = 0; i < p.fft_size / 2; ++i)
        CHECK(std::abs(pre[i] - pre[i + p.fft_size / 2]) < 1e-12);
    CHECK_THAT(mean_power(pre), WithinAbs(1.0, 0.05));
}

// ---------------------------------------------------------------- channel

TEST_CASE("impair without interferer or noise scales the desired signal")
{
    const OfdmParams p;
    const auto tx = build_frame(p, random_payload(p, 5));
    ImpairConfig cfg;
    cfg.atten_desired_db = 20.0;
    const auto out = impair(tx.buffer, {}, cfg);
    REQUIRE(out.samples.size() == tx.buffer.samples.size());
    for (std::size_t i = 0; i < out.samples.size(); ++i)
        CHECK(std::abs(out.samples[i] - 0.1 * tx.buffer.samples[i]) < 1e-15);
}

TEST_CASE("interferer arrives at transmit power plus channel gain")
{
    const OfdmParams p;
    const auto intf = build_stream(p, 40, 6);
    const double p_u = 0.0, gain = -80.0;
    FrameBuffer silent;
    silent.samples.assign(intf.size(), cplx{});
    const auto cfg = ImpairConfig::from_levels(-inf, p_u + gain, -inf, p);
    const auto out = impair(silent, intf, cfg);
    CHECK_THAT(10.0 * std::log10(mean_power(out.samples)), WithinAbs(-80.0, 0.1));
}

TEST_CASE("equal-power independent signals add in power")
{
    const OfdmParams p;
    double ratio = 0.0;
    const int n = 20;
    for (int s = 0; s < n; ++s)
    {
        const auto tx = build_frame(p, random_payload(p, 100 + s));
        const auto intf = build_stream(p, p.data_symbols + 2, 200 + s);
        const auto cfg = ImpairConfig::from_levels(0.0, 0.0, -inf, p);
        const auto out = impair(tx.buffer, intf, cfg);
        ratio += mean_power(out.samples) / mean_power(tx.buffer.samples);
    }
    CHECK_THAT(ratio / n, WithinAbs(2.0, 0.05));
}

TEST_CASE("in-band noise level matches the requested power")
{
    const OfdmParams p;
    FrameBuffer silent;
    silent.samples.assign(1 << 16, cplx{});
    auto cfg = ImpairConfig::from_levels(-inf, -inf, -10.0, p);
    cfg.seed = 9;
    const auto out = impair(silent, {}, cfg);
    // Full-band variance is the in-band power over the occupied fraction.
    CHECK_THAT(mean_power(out.samples) * p.inband_fraction(), WithinRel(0.1, 0.02));
}

// ---------------------------------------------------------------- sync

TEST_CASE("synchronize finds clean frames at any delay")
{
    const OfdmParams p;
    Rng rng(21);
    for (int i = 0; i < 25; ++i)
    {
        const std::size_t d = i == 0 ? 0 : i == 1 ? 5000 : static_cast<std::size_t>(rng.below(5001));
        const auto t = make_trial(p, inf, inf, 50 + i, d);
        const auto s = synchronize(t.rx.samples, p);
        INFO("delay " << d);
        CHECK(s.success);
        CHECK(std::llabs(static_cast<long long>(s.preamble_start) - static_cast<long long>(d)) <= 2);
    }
}

TEST_CASE("synchronize rejects pure noise")
{
    const OfdmParams p;
    for (std::uint64_t s = 0; s < 10; ++s)
    {
        FrameBuffer silent;
        silent.samples.assign(p.frame_length() + 2 * p.cp_length, cplx{});
        auto cfg = ImpairConfig::from_levels(-inf, -inf, 0.0, p);
        cfg.seed = s;
        const auto out = impair(silent, {}, cfg);
        CHECK_FALSE(synchronize(out.samples, p).success);
    }
}

TEST_CASE("synchronize fails at SIR -20 dB")
{
    const OfdmParams p;
    int fails = 0;
    for (std::uint64_t s = 0; s < 100; ++s)
        fails += !synchronize(make_trial(p, inf, -20.0, 300 + s, 100).rx.samples, p).success;
    CHECK(fails > 90);
}

TEST_CASE("synchronize rejects input shorter than a frame")
{
    const OfdmParams p;
    std::vector<cplx> x(p.frame_length() - 1);
    CHECK_FALSE(synchronize(x, p).success);
}

// ---------------------------------------------------------------- receiver

TEST_CASE("noiseless loopback is exact")
{
    const OfdmParams p;
    for (std::uint64_t s = 0; s < 10; ++s)
    {
        const auto t = make_trial(p, inf, inf, s, 37 * s);
        const auto rx = receive_frame(t.rx.samples, p, t.tx.data_symbols, t.tx.payload);
        REQUIRE(rx.sync_success);
        CHECK(rx.bit_errors == 0);
        CHECK(rx.payload == t.tx.payload);
        CHECK(rx.evm_rms < 1e-6);
    }
}

TEST_CASE("EVM tracks AWGN SNR")
{
    const OfdmParams p;
    for (double snr : {10.0, 20.0})
    {
        double e2 = 0.0;
        const int n = 30;
        for (int s = 0; s < n; ++s)
        {
            const auto t = make_trial(p, snr, inf, 400 + s, 64);
            const auto rx = receive_frame(t.rx.samples, p, t.tx.data_symbols);
            REQUIRE(rx.sync_success);
            e2 += rx.evm_rms * rx.evm_rms;
        }
        CHECK_THAT(-10.0 * std::log10(e2 / n), WithinAbs(snr, 0.5));
    }
}

TEST_CASE("EVM tracks combined interference and noise")
{
    const OfdmParams p;
    const double analytic = sinr_analytic(0.0, -10.0, -30.0);
    double e2 = 0.0;
    const int n = 30;
    for (int s = 0; s < n; ++s)
    {
        const auto t = make_trial(p, 30.0, 10.0, 500 + s, 90);
        const auto rx = receive_frame(t.rx.samples, p, t.tx.data_symbols);
        REQUIRE(rx.sync_success);
        e2 += rx.evm_rms * rx.evm_rms;
    }
    CHECK_THAT(-10.0 * std::log10(e2 / n), WithinAbs(analytic, 1.0));
}

TEST_CASE("receiver decodes error-free at moderate SNR")
{
    const OfdmParams p;
    const auto t = make_trial(p, 18.0, inf, 77, 10);
    const auto rx = receive_frame(t.rx.samples, p, t.tx.data_symbols, t.tx.payload);
    REQUIRE(rx.sync_success);
    CHECK(rx.bit_errors == 0);
}

TEST_CASE("receiver output is deterministic")
{
    const OfdmParams p;
    const auto a = make_trial(p, 12.0, 15.0, 88, 55);
    const auto b = make_trial(p, 12.0, 15.0, 88, 55);
    REQUIRE(a.rx.samples == b.rx.samples);
    const auto ra = receive_frame(a.rx.samples, p, a.tx.data_symbols, a.tx.payload);
    const auto rb = receive_frame(b.rx.samples, p, b.tx.data_symbols, b.tx.payload);
    CHECK(ra.sync_success == rb.sync_success);
    CHECK(ra.evm_rms == rb.evm_rms);
    CHECK(ra.payload == rb.payload);
    CHECK(ra.sync.preamble_start == rb.sync.preamble_start);
    CHECK(ra.cfo_hz == rb.cfo_hz);
}

TEST_CASE("receiver tolerates a carrier frequency offset")
{
    const OfdmParams p;
    auto t = make_trial(p, 25.0, inf, 99, 40);
    const double f = 3000.0 / p.sampling_rate_hz;
    for (std::size_t i = 0; i < t.rx.samples.size(); ++i)
        t.rx.samples[i] *= std::polar(1.0, 2.0 * std::numbers::pi * f * double(i));
    const auto rx = receive_frame(t.rx.samples, p, t.tx.data_symbols, t.tx.payload);
    REQUIRE(rx.sync_success);
    CHECK_THAT(rx.cfo_hz, WithinAbs(3000.0, 50.0));
    CHECK(rx.bit_errors == 0);
    CHECK(-20.0 * std::log10(rx.evm_rms) > 23.0);
}

// ---------------------------------------------------------------- IQ files

TEST_CASE("iq file round trip at float precision")
{
    Rng rng(8);
    std::vector<cplx> x(257);
    for (auto &v : x)
        v = rng.complex_normal(1.0);
    std::stringstream ss;
    write_iq(ss, x);
    CHECK(ss.str().size() == x.size() * 8);
    const auto y = read_iq(ss);
    REQUIRE(y.size() == x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        CHECK(y[i].real() == static_cast<float>(x[i].real()));
        CHECK(y[i].imag() == static_cast<float>(x[i].imag()));
    }
}
