// risup: link-level simulation of multi-RIS-aided multi-user uplinks
// Copyright (C) 2026 The risup authors
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

#include "risup/channel.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace risup;

TEST_CASE("m=1 magnitudes are Rayleigh")
{
    RandomStream rng(101);
    const NakagamiParams p{1.0, 1.0};
    std::vector<double> xs(100000);
    for (auto& x : xs)
        x = sample_nakagami(p, rng);
    // Rayleigh with E[X^2] = 1
    const double d = oracle::ks_statistic(xs, [](double x) { return 1.0 - std::exp(-x * x); });
    CHECK(d < oracle::ks_critical_001(xs.size()));
}

TEST_CASE("Nakagami samples match the analytic CDF")
{
    for (NakagamiParams p : {NakagamiParams{0.5, 1.0}, NakagamiParams{2.5, 2.0}, NakagamiParams{4.0, 1e-9}})
    {
        RandomStream rng(102);
        std::vector<double> xs(100000);
        for (auto& x : xs)
            x = sample_nakagami(p, rng);
        const double d = oracle::ks_statistic(xs, [&](double x) { return nakagami_cdf(p, x); });
        CAPTURE(p.m);
        CHECK(d < oracle::ks_critical_001(xs.size()));
    }
}

TEST_CASE("Nakagami CDF regression value")
{
    // scipy.stats.nakagami(2.5, scale=sqrt(2)).cdf(1.2)
    CHECK(std::abs(nakagami_cdf({2.5, 2.0}, 1.2) - 0.3916867079185312) < 1e-13);
}

TEST_CASE("second moment equals omega")
{
    for (NakagamiParams p : {NakagamiParams{0.5, 3.0}, NakagamiParams{1.0, 1.0}, NakagamiParams{2.5, 2.0}})
    {
        RandomStream rng(103);
        std::vector<double> sq(1000000);
        for (auto& x : sq)
        {
            const double v = sample_nakagami(p, rng);
            x = v * v;
        }
        const auto s = oracle::sample_stats(sq);
        CAPTURE(p.m);
        CHECK(std::abs(s.mean - p.omega) < 4.0 * s.std_error);
    }
}

TEST_CASE("first moment for m=2.5, omega=2")
{
    // Gamma(3)/Gamma(2.5) * (2.5/2)^(-1/2), frozen from an independent evaluation
    const double expected = 1.345670678410752;
    CHECK(nakagami_mean({2.5, 2.0}) == doctest::Approx(expected).epsilon(1e-13));
    RandomStream rng(104);
    std::vector<double> xs(1000000);
    for (auto& x : xs)
        x = sample_nakagami({2.5, 2.0}, rng);
    const auto s = oracle::sample_stats(xs);
    CHECK(std::abs(s.mean - expected) < 4.0 * s.std_error);
}

TEST_CASE("invalid Nakagami parameters")
{
    RandomStream rng(1);
    CHECK_THROWS_AS(sample_nakagami({0.4, 1.0}, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_nakagami({1.0, 0.0}, rng), std::invalid_argument);
}

TEST_CASE("UMi path loss")
{
    CHECK(umi_pathloss_db(1.0, 1.0) == doctest::Approx(-22.7).epsilon(1e-15));
    CHECK(std::abs(umi_pathloss_db(2.0, 300.0) - (-121.43712993547513)) < 1e-12);
    for (double fc : {0.9, 2.0, 28.0})
        CHECK(umi_pathloss_db(fc, 200.0) - umi_pathloss_db(fc, 100.0) ==
              doctest::Approx(-36.7 * std::log10(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(umi_pathloss_db(2.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(umi_pathloss_db(0.0, 10.0), std::invalid_argument);
}

TEST_CASE("LOS path loss")
{
    CHECK(los_pathloss_db(1.0, -30.0, 2.0) == -30.0);
    CHECK(std::abs(los_pathloss_db(60.0, -30.0, 2.0) - (-65.56302500767288)) < 1e-12);
    CHECK(los_pathloss_db(500.0, -30.0, 0.0) == -30.0);
    CHECK_THROWS_AS(los_pathloss_db(0.9, -30.0, 2.0), std::invalid_argument);
}

TEST_CASE("surface placement on the ring")
{
    Topology t;
    t.elements_per_surface = {4, 4, 4, 4};
    const auto pos = t.surface_positions();
    REQUIRE(pos.size() == 4);
    CHECK(pos[0].x == doctest::Approx(60.0));
    CHECK(pos[0].y == doctest::Approx(0.0));
    CHECK(pos[1].x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(pos[1].y == doctest::Approx(60.0));
    CHECK(t.total_elements() == 16);
}

TEST_CASE("drawn users stay in the cell and away from nodes")
{
    Topology t;
    t.num_users = 2000;
    t.elements_per_surface = {8, 8};
    RandomStream rng(105);
    const auto users = draw_user_positions(t, rng);
    REQUIRE(users.size() == 2000);
    const auto surfaces = t.surface_positions();
    for (const auto& u : users)
    {
        REQUIRE(distance(u, {0.0, 0.0}) <= 300.0);
        REQUIRE(distance(u, {0.0, 0.0}) >= 1.0);
        for (const auto& s : surfaces)
            REQUIRE(distance(u, s) >= 1.0);
    }
}

TEST_CASE("link statistics follow the path-loss models")
{
    Topology t;
    t.num_users = 1;
    t.elements_per_surface = {3};
    const std::vector<Point2> users{{0.0, 300.0}};
    const auto stats = link_statistics(t, users, FadingShapes{}, PathLossModel{});
    CHECK(stats.direct[0].omega == doctest::Approx(db_to_linear(umi_pathloss_db(2.0, 300.0))).epsilon(1e-12));
    CHECK(stats.ris_bs[0].omega == doctest::Approx(db_to_linear(los_pathloss_db(60.0, -30.0, 2.0))).epsilon(1e-12));
    const double dur = std::hypot(60.0, 300.0);
    CHECK(stats.user_ris_at(0, 0).omega == doctest::Approx(db_to_linear(umi_pathloss_db(2.0, dur))).epsilon(1e-12));
    CHECK(stats.direct[0].m == 2.5);
}

TEST_CASE("no surfaces: only the direct link")
{
    const auto stats = LinkStatistics::uniform(3, {}, {2.5, 1.0}, {2.5, 1.0}, {2.5, 1.0});
    RandomStream rng(106);
    const auto real = realize(stats, Correlation::independent, rng);
    CHECK(real.f.empty());
    CHECK(real.g.empty());
    CHECK(real.d.size() == 3);
    for (const auto& v : real.d)
        CHECK(std::abs(v) > 0.0);
}

TEST_CASE("full per-surface correlation shares draws")
{
    const auto stats = LinkStatistics::uniform(3, {100}, {2.5, 1.0}, {2.5, 1.0}, {2.5, 1.0});
    RandomStream rng(107);
    const auto real = realize(stats, Correlation::per_surface_full, rng);
    for (std::size_t m = 1; m < 100; ++m)
        CHECK(real.f[m] == real.f[0]);
    for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t m = 1; m < 100; ++m)
            CHECK(real.g_at(m, k) == real.g_at(0, k));
    CHECK(real.g_at(0, 0) != real.g_at(0, 1));
}

TEST_CASE("correlation is per surface, not across surfaces")
{
    const auto stats = LinkStatistics::uniform(1, {4, 4}, {2.5, 1.0}, {2.5, 1.0}, {2.5, 1.0});
    RandomStream rng(108);
    const auto real = realize(stats, Correlation::per_surface_full, rng);
    CHECK(real.f[0] == real.f[3]);
    CHECK(real.f[4] == real.f[7]);
    CHECK(real.f[0] != real.f[4]);
}

TEST_CASE("independent elements are uncorrelated")
{
    const auto stats = LinkStatistics::uniform(1, {2}, {2.5, 1.0}, {2.5, 1.0}, {2.5, 1.0});
    RandomStream rng(109);
    std::vector<double> a, b;
    for (int i = 0; i < 10000; ++i)
    {
        const auto real = realize(stats, Correlation::independent, rng);
        a.push_back(std::abs(real.f[0]));
        b.push_back(std::abs(real.f[1]));
    }
    const auto sa = oracle::sample_stats(a), sb = oracle::sample_stats(b);
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        cov += (a[i] - sa.mean) * (b[i] - sb.mean);
        va += (a[i] - sa.mean) * (a[i] - sa.mean);
        vb += (b[i] - sb.mean) * (b[i] - sb.mean);
    }
    CHECK(std::abs(cov / std::sqrt(va * vb)) < 0.05);
}

TEST_CASE("realize is reproducible from the stream state")
{
    const auto stats = LinkStatistics::uniform(4, {16, 16}, {2.5, 1e-11}, {2.5, 1e-10}, {2.5, 1e-6});
    RandomStream r1 = RandomStream::derive(5, {0, 9, 0});
    RandomStream r2 = RandomStream::derive(5, {0, 9, 0});
    const auto a = realize(stats, Correlation::independent, r1);
    const auto b = realize(stats, Correlation::independent, r2);
    CHECK(a.f == b.f);
    CHECK(a.g == b.g);
    CHECK(a.d == b.d);
}

TEST_CASE("dimensions, finiteness and phase range over many draws")
{
    const auto stats = LinkStatistics::uniform(4, {16, 16}, {0.5, 1e-12}, {2.5, 1e-10}, {2.5, 1e-7});
    RandomStream rng(110);
    std::size_t draws = 0;
    bool finite = true;
    while (draws < 1000000)
    {
        const auto real = realize(stats, Correlation::independent, rng);
        REQUIRE(real.f.size() == 32);
        REQUIRE(real.g.size() == 32 * 4);
        REQUIRE(real.d.size() == 4);
        for (const auto* vec : {&real.f, &real.g, &real.d})
            for (const auto& v : *vec)
            {
                finite = finite && std::isfinite(v.real()) && std::isfinite(v.imag());
                ++draws;
            }
    }
    CHECK(finite);
}

TEST_CASE("missing fading entries are rejected")
{
    auto stats = LinkStatistics::uniform(2, {4}, {2.5, 1.0}, {2.5, 1.0}, {2.5, 1.0});
    stats.user_ris.pop_back();
    RandomStream rng(1);
    CHECK_THROWS_AS(realize(stats, Correlation::independent, rng), std::invalid_argument);
}

TEST_CASE("correlation names")
{
    CHECK(parse_correlation("per-surface-full") == Correlation::per_surface_full);
    CHECK(parse_correlation("independent") == Correlation::independent);
    CHECK_FALSE(parse_correlation("partial"));
    CHECK(to_string(Correlation::per_surface_full) == "per-surface-full");
}
