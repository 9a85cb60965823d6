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

#ifndef RISUP_CHANNEL_HPP
#define RISUP_CHANNEL_HPP

#include "risup/rng.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace risup
{

using cplx = std::complex<double>;

/// Nakagami-m magnitude law: shape m >= 0.5, spread omega = E[X^2] > 0.
struct NakagamiParams
{
    double m = 1.0;
    double omega = 1.0;

    /// Throws std::invalid_argument when outside the parameter domain.
    void validate() const;
};

/// Magnitude sample: sqrt of Gamma(m, omega/m).
double sample_nakagami(const NakagamiParams& params, RandomStream& rng);

/// F_X(x) = P(m, m x^2 / omega).
double nakagami_cdf(const NakagamiParams& params, double x);

/// E[X] = Gamma(m + 1/2) / Gamma(m) * (m / omega)^(-1/2).
double nakagami_mean(const NakagamiParams& params);

/// 3GPP UMi NLOS large-scale gain in dB; fc in GHz, dist in meters (>= 1).
double umi_pathloss_db(double fc_ghz, double dist_m);

/// Reference-distance law l0 - 10 alpha log10(dist); dist in meters (>= 1).
double los_pathloss_db(double dist_m, double l0_db, double alpha);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

struct Point2
{
    double x = 0.0;
    double y = 0.0;
};

double distance(Point2 a, Point2 b);

enum class Correlation
{
    independent,
    per_surface_full,
};

std::string_view to_string(Correlation c);
std::optional<Correlation> parse_correlation(std::string_view name);

/*!
 * Cell geometry. The BS sits at the origin; surfaces are spread evenly on
 * a circle of radius `ris_distance_m`, the first one at angle zero. Users
 * are either given explicitly or drawn uniformly in the disc.
 */
struct Topology
{
    double cell_radius_m = 300.0;
    std::size_t num_users = 4;
    std::vector<std::size_t> elements_per_surface;
    double ris_distance_m = 60.0;
    double carrier_freq_ghz = 2.0;
    std::optional<std::vector<Point2>> user_positions;

    std::size_t num_surfaces() const { return elements_per_surface.size(); }
    std::size_t total_elements() const;
    std::vector<Point2> surface_positions() const;
    void validate() const;
};

/// Uniform draw in the cell disc, rejecting points closer than 1 m to the
/// BS or to any surface (the path-loss laws start at 1 m).
std::vector<Point2> draw_user_positions(const Topology& topology, RandomStream& rng);

struct PathLossModel
{
    double ris_bs_l0_db = -30.0;
    double ris_bs_exponent = 2.0;
};

/// Nakagami shape per link class.
struct FadingShapes
{
    double direct = 2.5;
    double user_ris = 2.5;
    double ris_bs = 2.5;
};

/*!
 * Per-link Nakagami laws for one placement: what the channel sampler
 * draws from and what the moment analysis integrates over. Spreads are
 * linear powers with path loss already applied.
 */
struct LinkStatistics
{
    std::vector<std::size_t> elements_per_surface;
    std::vector<NakagamiParams> direct;   ///< user -> BS, one per user
    std::vector<NakagamiParams> ris_bs;   ///< surface -> BS, one per surface
    std::vector<NakagamiParams> user_ris; ///< user -> surface, index s * K + k

    std::size_t num_users() const { return direct.size(); }
    std::size_t num_surfaces() const { return elements_per_surface.size(); }
    std::size_t total_elements() const;

    const NakagamiParams& user_ris_at(std::size_t surface, std::size_t user) const
    {
        return user_ris[surface * num_users() + user];
    }

    /// Throws std::invalid_argument on a missing or out-of-domain entry.
    void validate() const;

    /// Same law for every link of a class; convenient for tests.
    static LinkStatistics uniform(std::size_t num_users,
                                  std::vector<std::size_t> elements_per_surface,
                                  NakagamiParams direct,
                                  NakagamiParams user_ris,
                                  NakagamiParams ris_bs);
};

LinkStatistics link_statistics(const Topology& topology,
                               std::span<const Point2> users,
                               const FadingShapes& shapes,
                               const PathLossModel& pathloss);

/*!
 * One draw of every fading coefficient. `g` is stored column-major,
 * M x K, so each user's reflected channel is contiguous.
 */
struct ChannelRealization
{
    std::size_t num_elements = 0;
    std::size_t num_users = 0;
    std::vector<cplx> f; ///< surface -> BS, length M
    std::vector<cplx> g; ///< user -> surface, M x K column-major
    std::vector<cplx> d; ///< user -> BS, length K

    ChannelRealization() = default;
    ChannelRealization(std::size_t elements, std::size_t users);

    cplx& g_at(std::size_t element, std::size_t user) { return g[user * num_elements + element]; }
    const cplx& g_at(std::size_t element, std::size_t user) const
    {
        return g[user * num_elements + element];
    }
    std::span<const cplx> user_column(std::size_t user) const
    {
        return {g.data() + user * num_elements, num_elements};
    }
};

/// Draws a realization. Draw order: f, then g user by user, then d; each
/// coefficient takes its magnitude before its phase. Under
/// per_surface_full correlation a surface shares one f draw and, per user,
/// one g draw across all of its elements.
ChannelRealization realize(const LinkStatistics& stats, Correlation correlation, RandomStream& rng);

} // namespace risup

#endif
