// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The uavfd authors

#include "uavfd/propagation.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace uavfd;
using Catch::Matchers::WithinAbs;

namespace
{
// Friis loss as 1 / (lambda / (4 pi d))^2 in linear power.
double friis_oracle(double d, double f)
{
    const double lambda = 299792458.0 / f;
    const double ratio = lambda / (4.0 * 3.14159265358979323846 * d);
    return -10.0 * std::log10(ratio * ratio);
}

NodeConfig iso(Position p, Position aim)
{
    return NodeConfig::aimed_at(p, AntennaSpec::horn(0.0, 179.0, 1e-9), aim);
}
} // namespace

TEST_CASE("fspl examples")
{
    CHECK_THAT(fspl_db(60.0, 5.7e9), WithinAbs(friis_oracle(60.0, 5.7e9), 1e-9));
    CHECK_THAT(fspl_db(60.0, 5.7e9), WithinAbs(83.13, 0.01));
    CHECK_THAT(fspl_db(120.0, 5.7e9) - fspl_db(60.0, 5.7e9), WithinAbs(20.0 * std::log10(2.0), 1e-12));
    CHECK_THAT(fspl_db(speed_of_light / (4.0 * std::numbers::pi * 5.7e9), 5.7e9), WithinAbs(0.0, 1e-12));
}

TEST_CASE("fspl rejects non-positive arguments")
{
    CHECK_THROWS_AS(fspl_db(0.0, 5.7e9), std::invalid_argument);
    CHECK_THROWS_AS(fspl_db(-1.0, 5.7e9), std::invalid_argument);
    CHECK_THROWS_AS(fspl_db(10.0, 0.0), std::invalid_argument);
}

TEST_CASE("fspl is strictly increasing in distance and frequency")
{
    Rng rng(17);
    for (int i = 0; i < 1000; ++i)
    {
        const double d = 1.0 + 999.0 * rng.uniform();
        const double f = 1e9 + 9e9 * rng.uniform();
        CHECK(fspl_db(d * 1.001, f) > fspl_db(d, f));
        CHECK(fspl_db(d, f * 1.001) > fspl_db(d, f));
    }
}

TEST_CASE("noise floor examples")
{
    CHECK_THAT(noise_floor_dbm(10e6, 7.0), WithinAbs(-97.0, 1e-12));
    CHECK_THAT(noise_floor_dbm(1.0, 0.0), WithinAbs(-174.0, 1e-12));
    CHECK_THAT(noise_floor_dbm(10e6, 0.0), WithinAbs(-104.0, 1e-12));
}

TEST_CASE("link gain examples")
{
    const auto h = AntennaSpec::horn(21.0, 18.0, 30.0);
    const Position gs{0, 0, 0.1}, rx{60, 0, 0.1};
    const auto tx_node = NodeConfig::aimed_at(gs, h, rx);
    const auto rx_node = NodeConfig::aimed_at(rx, h, gs);
    const double aligned = link_gain_db(tx_node, rx_node, 5.7e9);
    CHECK_THAT(aligned, WithinAbs(42.0 - friis_oracle(60.0, 5.7e9), 1e-9));
    CHECK_THAT(aligned, WithinAbs(-41.13, 0.01));

    const auto rx_rot = NodeConfig::aimed_at(rx, h, {60, 10, 0.1});
    CHECK_THAT(link_gain_db(tx_node, rx_rot, 5.7e9), WithinAbs(aligned - 30.0, 1e-9));
    CHECK_THAT(link_gain_db(tx_node, rx_rot, 5.7e9), WithinAbs(-71.13, 0.01));

    CHECK_THAT(link_gain_db(iso(gs, rx), iso(rx, gs), 5.7e9), WithinAbs(-fspl_db(60.0, 5.7e9), 1e-12));
}

TEST_CASE("link budget identity and reciprocity")
{
    Rng rng(19);
    auto rp = [&] { return Position{100 * rng.normal(), 100 * rng.normal(), 5 * rng.normal()}; };
    for (int i = 0; i < 500; ++i)
    {
        const auto ant = rng.uniform() < 0.5 ? AntennaSpec::horn() : AntennaSpec::dipole();
        NodeConfig a = NodeConfig::aimed_at(rp(), ant, rp(), 10.0 * rng.normal());
        NodeConfig b = NodeConfig::aimed_at(rp(), AntennaSpec::horn(15, 30, 25), rp(), 10.0 * rng.normal());
        const auto ab = link_budget(a, b, 5.7e9);
        CHECK(ab.rx_power_dbm == ab.tx_power_dbm + ab.tx_gain_dbi + ab.rx_gain_dbi - ab.path_loss_db);
        CHECK_THAT(link_gain_db(a, b, 5.7e9), WithinAbs(link_gain_db(b, a, 5.7e9), 1e-9));
    }
}

TEST_CASE("link budget rejects coincident nodes")
{
    const auto h = AntennaSpec::horn();
    const auto a = NodeConfig::aimed_at({1, 1, 1}, h, {0, 0, 0});
    CHECK_THROWS_AS(link_budget(a, a, 5.7e9), std::invalid_argument);
    CHECK_THROWS_AS(NodeConfig::aimed_at({1, 1, 1}, h, {1, 1, 1}), std::invalid_argument);
}
