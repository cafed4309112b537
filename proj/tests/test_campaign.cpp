// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The uavfd authors

#include "uavfd/campaign.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

using namespace uavfd;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
const SweepRecord &at(const std::vector<SweepRecord> &r, double x, double y)
{
    const auto it = std::find_if(r.begin(), r.end(), [&](const SweepRecord &s) {
        return s.position.x == x && s.position.y == y;
    });
    REQUIRE(it != r.end());
    return *it;
}
} // namespace

TEST_CASE("grid enumeration")
{
    GridSpec g;
    const auto one = grid_points(g.at_height(0.1));
    CHECK(one.size() == 496);
    CHECK(one.front().x == 10.0);
    CHECK(one.front().y == 0.0);
    CHECK(one.front().z == 0.1);
    CHECK(one[1].x == 12.0);
    CHECK(one.back().x == 70.0);
    CHECK(one.back().y == 30.0);
    CHECK(grid_points(g).size() == 992);

    GridSpec single{5, 5, 1, 3, 3, 1, {2.0}};
    const auto s = grid_points(single);
    REQUIRE(s.size() == 1);
    CHECK(s[0] == Position{5, 3, 2});

    GridSpec bad;
    bad.x_step = 0;
    CHECK_THROWS_AS(grid_points(bad), std::invalid_argument);
}

TEST_CASE("scenario presets")
{
    for (const auto &id : scenario_ids())
    {
        const auto s = scenario_preset(id);
        REQUIRE(s);
        CHECK_NOTHROW(s->validate());
    }
    CHECK_FALSE(scenario_preset("nope"));
    const auto d = *scenario_preset("dipole-0.1");
    CHECK(d.p_g_dbm == -8.0);
    CHECK(d.p_u_dbm == 27.5);
    CHECK(d.antenna.kind == AntennaKind::Dipole);
    const auto a = *scenario_preset("directional-0.1");
    CHECK(a.p_g_dbm == -45.0);
    CHECK(a.p_u_dbm == 0.0);
    CHECK(scenario_preset("directional-1.8")->interferer_height_m == 1.8);
    CHECK(scenario_preset("tdd-baseline")->mode == DuplexMode::TDD);
}

TEST_CASE("desired link uses aligned horns")
{
    const auto s = *scenario_preset("directional-0.1");
    CHECK_THAT(desired_channel_gain_db(s), WithinAbs(42.0 - fspl_db(60.0, 5.7e9), 1e-9));
    CHECK_THAT(desired_channel_gain_db(s), WithinAbs(-41.13, 0.01));
}

TEST_CASE("power sweep shape")
{
    const auto s = *scenario_preset("directional-0.1");
    const auto r = run_power_sweep(s, s.grid());
    REQUIRE(r.size() == 496);
    for (std::size_t i = 0; i < r.size(); ++i)
    {
        CHECK(r[i].index == i);
        CHECK(r[i].interference_power_dbm >= s.floor_dbm);
        CHECK(r[i].desired_power_dbm == r[0].desired_power_dbm);
    }
    // On the GS-Rx axis Tx#1 sits in the victim's main beam.
    auto v = interference_values(r);
    std::sort(v.begin(), v.end(), std::greater<>());
    const double top_decile = v[v.size() / 10];
    CHECK(at(r, 30, 0).interference_power_dbm >= top_decile);
    // Far lateral offset ends up at the floor.
    CHECK(at(r, 10, 30).interference_power_dbm == s.floor_dbm);
}

TEST_CASE("power sweep matches the link-budget oracle per point")
{
    const auto s = *scenario_preset("directional-0.1");
    const auto r = run_power_sweep(s, s.grid());
    const auto rx = NodeConfig::aimed_at(s.victim_position, s.antenna, s.gs_position);
    for (const auto &rec : r)
    {
        if (distance(rec.position, s.victim_position) < s.min_separation_m)
            continue;
        const auto tx = NodeConfig::aimed_at(rec.position, s.antenna, s.gs_position, s.p_u_dbm);
        const double d = distance(rec.position, s.victim_position);
        const double gt = gain_db(s.antenna, *boresight_offset(rec.position, s.gs_position, s.victim_position));
        const double gr = gain_db(s.antenna, *boresight_offset(s.victim_position, s.gs_position, rec.position));
        const double oracle = gt + gr - 20.0 * std::log10(4.0 * std::numbers::pi * d * 5.7e9 / 299792458.0);
        CHECK_THAT(*rec.interference_gain_db, WithinAbs(oracle, 1e-9));
        CHECK_THAT(*rec.interference_gain_db, WithinAbs(link_gain_db(tx, rx, s.frequency_hz), 1e-12));
    }
}

TEST_CASE("a grid point on top of the victim gets the worst case")
{
    const auto s = *scenario_preset("directional-0.1");
    const auto r = run_power_sweep(s, s.grid());
    const auto &on = at(r, 60, 0);
    CHECK(std::isfinite(*on.interference_gain_db));
    CHECK_THAT(*on.interference_gain_db, WithinAbs(42.0 - fspl_db(1.0, 5.7e9), 1e-9));
    for (const auto &rec : r)
        CHECK(*rec.interference_gain_db <= *on.interference_gain_db);
}

TEST_CASE("raising the interferer reduces interference near the victim")
{
    const auto lo = *scenario_preset("directional-0.1");
    const auto hi = *scenario_preset("directional-1.8");
    const auto a = run_power_sweep(lo, lo.grid());
    const auto b = run_power_sweep(hi, hi.grid());
    REQUIRE(a.size() == b.size());
    int strictly = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        if (distance(a[i].position, lo.victim_position) >= 20.0)
            continue;
        CHECK(b[i].interference_power_dbm <= a[i].interference_power_dbm);
        strictly += b[i].interference_power_dbm < a[i].interference_power_dbm;
    }
    CHECK(strictly > 0);
}

TEST_CASE("analytic capacity sweep")
{
    const auto s = *scenario_preset("directional-0.1");
    const auto r = run_capacity_sweep(s, s.grid());
    const double snr = s.p_g_dbm + desired_channel_gain_db(s) - s.noise_dbm();
    const double ceiling = capacity_fd(s.capacity, snr);
    for (const auto &rec : r)
    {
        REQUIRE(rec.capacity_bps);
        CHECK(*rec.capacity_bps <= ceiling * (1 + 1e-12));
        CHECK(*rec.capacity_bps >= 0.0);
    }
    // Independent oracle in linear power: B log2(1 + S / (I + N)).
    for (const auto &rec : r)
    {
        if (!*rec.sync_ok)
            continue;
        const double s_mw = std::pow(10.0, rec.desired_power_dbm / 10.0);
        const double i_mw = std::pow(10.0, (s.p_u_dbm + *rec.interference_gain_db) / 10.0);
        const double n_mw = std::pow(10.0, s.noise_dbm() / 10.0);
        const double sinr = std::min(s_mw / (i_mw + n_mw), std::pow(10.0, s.sinr_ceiling_db / 10.0));
        CHECK_THAT(*rec.capacity_bps, WithinRel(s.capacity.bandwidth_hz * std::log2(1.0 + sinr), 1e-9));
    }
    // The quietest point approaches the noise-limited capacity.
    const auto quiet = std::min_element(r.begin(), r.end(), [](const SweepRecord &a, const SweepRecord &b) {
        return *a.interference_gain_db < *b.interference_gain_db;
    });
    CHECK(*quiet->capacity_bps > 0.9 * ceiling);
    // Strong interference near the victim keeps the link from synchronising.
    CHECK_FALSE(*at(r, 60, 0).sync_ok);
    CHECK(*at(r, 60, 0).capacity_bps == 0.0);
}

TEST_CASE("TDD capacity map is constant")
{
    const auto s = *scenario_preset("tdd-baseline");
    const auto r = run_capacity_sweep(s, s.grid());
    REQUIRE(r.size() == 496);
    for (const auto &rec : r)
    {
        CHECK(*rec.capacity_bps == r[0].capacity_bps);
        CHECK(*rec.sync_ok);
    }
    CHECK_THAT(*r[0].capacity_bps, WithinRel(11.6e6, 1e-12));
}

TEST_CASE("dipole scenario fails synchronisation everywhere")
{
    auto s = *scenario_preset("dipole-0.1");
    for (Engine e : {Engine::Analytic, Engine::Waveform})
    {
        s.engine = e;
        GridSpec g = s.grid();
        if (e == Engine::Waveform)
        {
            g.x_step = 10;
            g.y_step = 10;
        }
        const auto r = run_capacity_sweep(s, g);
        for (const auto &rec : r)
        {
            CHECK_FALSE(*rec.sync_ok);
            CHECK(*rec.capacity_bps == 0.0);
        }
    }
}

TEST_CASE("waveform sweep agrees with the analytic engine")
{
    auto s = *scenario_preset("directional-0.1");
    GridSpec g = s.grid();
    g.x_step = 6;
    g.y_step = 6;
    const auto power = run_power_sweep(s, g);
    const auto an = run_capacity_sweep(s, power);
    s.engine = Engine::Waveform;
    const auto wf = run_capacity_sweep(s, power);
    int compared = 0;
    for (std::size_t i = 0; i < an.size(); ++i)
    {
        if (!*wf[i].sync_ok || *an[i].sinr_db < 0.0 || *an[i].sinr_db > 25.0)
            continue;
        ++compared;
        CHECK(wf[i].evm);
        CHECK_THAT(*wf[i].sinr_db, WithinAbs(*an[i].sinr_db, 1.0));
    }
    CHECK(compared > 20);
}

TEST_CASE("pointing error is reproducible and changes the map")
{
    auto s = *scenario_preset("directional-0.1");
    const auto clean = run_power_sweep(s, s.grid());
    s.pointing_sigma_deg = 3.0;
    const auto a = run_power_sweep(s, s.grid());
    const auto b = run_power_sweep(s, s.grid());
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        CHECK(a[i].interference_power_dbm == b[i].interference_power_dbm);
        differs |= a[i].interference_power_dbm != clean[i].interference_power_dbm;
    }
    CHECK(differs);
}

TEST_CASE("mirror symmetry")
{
    const auto s = *scenario_preset("directional-0.1");
    const auto r = run_power_sweep(s, s.grid());
    const auto m = mirror_symmetry(r);
    CHECK(m.size() == 496 + 31 * 15);
    CHECK(m.size() == 961);
    for (std::size_t i = r.size(); i < m.size(); ++i)
    {
        const auto &src = r[m[i].index];
        CHECK(m[i].position.y == -src.position.y);
        CHECK(m[i].position.x == src.position.x);
        CHECK(m[i].position.z == src.position.z);
        CHECK(m[i].interference_power_dbm == src.interference_power_dbm);
        CHECK(m[i].desired_power_dbm == src.desired_power_dbm);
    }
    const std::vector<SweepRecord> one{r.front()};
    CHECK(mirror_symmetry(one).size() == 1);
}

TEST_CASE("sync threshold model")
{
    CHECK_THAT(sync_sinr_threshold_db(0.5), WithinAbs(10.0 * std::log10(1.0 / 3.0), 1e-12));
}

TEST_CASE("scenario validation")
{
    auto s = *scenario_preset("directional-0.1");
    s.victim_position = s.gs_position;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = *scenario_preset("directional-0.1");
    s.sync_threshold = 1.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = *scenario_preset("directional-0.1");
    s.pointing_sigma_deg = -1;
    CHECK_THROWS_AS(run_power_sweep(s, s.grid()), std::invalid_argument);
}
