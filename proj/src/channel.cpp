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

#include "risup/special.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace risup
{

void NakagamiParams::validate() const
{
    if (!(m >= 0.5) || !std::isfinite(m))
        throw std::invalid_argument("Nakagami shape m must be >= 0.5, got " + std::to_string(m));
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw std::invalid_argument("Nakagami spread omega must be > 0, got " + std::to_string(omega));
}

double sample_nakagami(const NakagamiParams& params, RandomStream& rng)
{
    params.validate();
    return std::sqrt(rng.gamma(params.m, params.omega / params.m));
}

double nakagami_cdf(const NakagamiParams& params, double x)
{
    params.validate();
    if (x <= 0.0)
        return 0.0;
    return regularized_gamma_p(params.m, params.m / params.omega * x * x);
}

double nakagami_mean(const NakagamiParams& params)
{
    params.validate();
    return gamma_ratio(params.m + 0.5, params.m) * std::sqrt(params.omega / params.m);
}

double umi_pathloss_db(double fc_ghz, double dist_m)
{
    if (!(fc_ghz > 0.0))
        throw std::invalid_argument("umi_pathloss_db: carrier frequency must be positive");
    if (!(dist_m >= 1.0))
        throw std::invalid_argument("umi_pathloss_db: distance below the 1 m reference");
    return -22.7 - 26.0 * std::log10(fc_ghz) - 36.7 * std::log10(dist_m);
}

double los_pathloss_db(double dist_m, double l0_db, double alpha)
{
    if (!(dist_m >= 1.0))
        throw std::invalid_argument("los_pathloss_db: distance below the 1 m reference");
    return l0_db - 10.0 * alpha * std::log10(dist_m);
}

double distance(Point2 a, Point2 b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

std::string_view to_string(Correlation c)
{
    switch (c)
    {
    case Correlation::independent:
        return "independent";
    case Correlation::per_surface_full:
        return "per-surface-full";
    }
    return "unknown";
}

std::optional<Correlation> parse_correlation(std::string_view name)
{
    if (name == "independent")
        return Correlation::independent;
    if (name == "per-surface-full")
        return Correlation::per_surface_full;
    return std::nullopt;
}

std::size_t Topology::total_elements() const
{
    return std::accumulate(elements_per_surface.begin(), elements_per_surface.end(), std::size_t{0});
}

std::vector<Point2> Topology::surface_positions() const
{
    std::vector<Point2> out;
    const std::size_t count = num_surfaces();
    out.reserve(count);
    for (std::size_t s = 0; s < count; ++s)
    {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(count);
        out.push_back({ris_distance_m * std::cos(angle), ris_distance_m * std::sin(angle)});
    }
    return out;
}

void Topology::validate() const
{
    if (num_users < 1)
        throw std::invalid_argument("topology: at least one user required");
    for (auto n : elements_per_surface)
        if (n < 1)
            throw std::invalid_argument("topology: every surface needs at least one element");
    if (!(cell_radius_m > 1.0))
        throw std::invalid_argument("topology: cell radius must exceed 1 m");
    if (num_surfaces() > 0 && !(ris_distance_m >= 1.0))
        throw std::invalid_argument("topology: surface distance must be >= 1 m");
    if (!(carrier_freq_ghz > 0.0))
        throw std::invalid_argument("topology: carrier frequency must be positive");
    if (user_positions && user_positions->size() != num_users)
        throw std::invalid_argument("topology: user_positions length differs from num_users");
}

std::vector<Point2> draw_user_positions(const Topology& topology, RandomStream& rng)
{
    const auto surfaces = topology.surface_positions();
    std::vector<Point2> users;
    users.reserve(topology.num_users);
    while (users.size() < topology.num_users)
    {
        const double r = topology.cell_radius_m * std::sqrt(rng.uniform());
        const double a = rng.phase();
        const Point2 p{r * std::cos(a), r * std::sin(a)};
        bool ok = distance(p, {}) >= 1.0;
        for (const auto& s : surfaces)
            ok = ok && distance(p, s) >= 1.0;
        if (ok)
            users.push_back(p);
    }
    return users;
}

std::size_t LinkStatistics::total_elements() const
{
    return std::accumulate(elements_per_surface.begin(), elements_per_surface.end(), std::size_t{0});
}

void LinkStatistics::validate() const
{
    const auto K = num_users();
    const auto S = num_surfaces();
    if (K < 1)
        throw std::invalid_argument("link statistics: no direct-link entries");
    if (ris_bs.size() != S)
        throw std::invalid_argument("link statistics: surface->BS table has " + std::to_string(ris_bs.size()) +
                                    " entries, expected " + std::to_string(S));
    if (user_ris.size() != S * K)
        throw std::invalid_argument("link statistics: user->surface table has " + std::to_string(user_ris.size()) +
                                    " entries, expected " + std::to_string(S * K));
    for (auto n : elements_per_surface)
        if (n < 1)
            throw std::invalid_argument("link statistics: surface with zero elements");
    for (const auto& p : direct)
        p.validate();
    for (const auto& p : ris_bs)
        p.validate();
    for (const auto& p : user_ris)
        p.validate();
}

LinkStatistics LinkStatistics::uniform(std::size_t num_users,
                                       std::vector<std::size_t> elements_per_surface,
                                       NakagamiParams direct,
                                       NakagamiParams user_ris,
                                       NakagamiParams ris_bs)
{
    LinkStatistics out;
    const auto S = elements_per_surface.size();
    out.elements_per_surface = std::move(elements_per_surface);
    out.direct.assign(num_users, direct);
    out.ris_bs.assign(S, ris_bs);
    out.user_ris.assign(S * num_users, user_ris);
    return out;
}

LinkStatistics link_statistics(const Topology& topology,
                               std::span<const Point2> users,
                               const FadingShapes& shapes,
                               const PathLossModel& pathloss)
{
    topology.validate();
    if (users.size() != topology.num_users)
        throw std::invalid_argument("link_statistics: position count differs from num_users");

    const auto surfaces = topology.surface_positions();
    const auto K = topology.num_users;
    const auto S = surfaces.size();

    LinkStatistics out;
    out.elements_per_surface = topology.elements_per_surface;
    out.direct.reserve(K);
    for (const auto& u : users)
        out.direct.push_back(
            {shapes.direct, db_to_linear(umi_pathloss_db(topology.carrier_freq_ghz, distance(u, {})))});
    out.ris_bs.reserve(S);
    for (const auto& s : surfaces)
        out.ris_bs.push_back(
            {shapes.ris_bs,
             db_to_linear(los_pathloss_db(distance(s, {}), pathloss.ris_bs_l0_db, pathloss.ris_bs_exponent))});
    out.user_ris.reserve(S * K);
    for (const auto& s : surfaces)
        for (const auto& u : users)
            out.user_ris.push_back(
                {shapes.user_ris, db_to_linear(umi_pathloss_db(topology.carrier_freq_ghz, distance(u, s)))});
    out.validate();
    return out;
}

ChannelRealization::ChannelRealization(std::size_t elements, std::size_t users)
    : num_elements(elements), num_users(users), f(elements), g(elements * users), d(users)
{
}

namespace
{

cplx draw_coefficient(const NakagamiParams& params, RandomStream& rng)
{
    const double magnitude = std::sqrt(rng.gamma(params.m, params.omega / params.m));
    return std::polar(magnitude, rng.phase());
}

} // namespace

ChannelRealization realize(const LinkStatistics& stats, Correlation correlation, RandomStream& rng)
{
    stats.validate();
    const auto K = stats.num_users();
    const auto S = stats.num_surfaces();
    ChannelRealization out(stats.total_elements(), K);

    const bool shared = correlation == Correlation::per_surface_full;

    std::size_t offset = 0;
    for (std::size_t s = 0; s < S; ++s)
    {
        const auto count = stats.elements_per_surface[s];
        if (shared)
        {
            const cplx value = draw_coefficient(stats.ris_bs[s], rng);
            std::fill_n(out.f.begin() + static_cast<std::ptrdiff_t>(offset), count, value);
        }
        else
        {
            for (std::size_t n = 0; n < count; ++n)
                out.f[offset + n] = draw_coefficient(stats.ris_bs[s], rng);
        }
        offset += count;
    }

    for (std::size_t k = 0; k < K; ++k)
    {
        offset = 0;
        for (std::size_t s = 0; s < S; ++s)
        {
            const auto count = stats.elements_per_surface[s];
            const auto& law = stats.user_ris_at(s, k);
            if (shared)
            {
                const cplx value = draw_coefficient(law, rng);
                for (std::size_t n = 0; n < count; ++n)
                    out.g_at(offset + n, k) = value;
            }
            else
            {
                for (std::size_t n = 0; n < count; ++n)
                    out.g_at(offset + n, k) = draw_coefficient(law, rng);
            }
            offset += count;
        }
    }

    for (std::size_t k = 0; k < K; ++k)
        out.d[k] = draw_coefficient(stats.direct[k], rng);

    return out;
}

} // namespace risup
