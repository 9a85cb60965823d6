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

#ifndef RISUP_SIMKIT_HPP
#define RISUP_SIMKIT_HPP

#include "risup/analysis.hpp"
#include "risup/channel.hpp"
#include "risup/optimize.hpp"
#include "risup/schemes.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace risup
{

enum class UserPlacement
{
    redraw_per_trial,
    fixed_per_sweep,
};

std::string_view to_string(UserPlacement p);
std::optional<UserPlacement> parse_user_placement(std::string_view name);

/*!
 * Full experiment description. Link laws come either from the topology
 * and path-loss models or, when `links` is set, verbatim from explicit
 * tables (placement is then irrelevant).
 */
struct SystemConfig
{
    Topology topology;
    PathLossModel pathloss;
    FadingShapes fading;
    std::optional<LinkStatistics> links;

    double pu_min_w = 0.1;
    std::vector<double> gain_sweep_db;
    double bandwidth_hz = 10e6;
    double noise_density_dbm_hz = -174.0;
    double noise_figure_db = 9.0;
    double r0 = 1.0;

    std::vector<Scheme> schemes;
    std::size_t trials = 100000;
    std::uint64_t seed = 1;
    Correlation correlation = Correlation::independent;
    UserPlacement user_placement = UserPlacement::redraw_per_trial;

    bool analytical = true;
    std::size_t oracle_samples = 100000;
    JrSolverConfig jr;

    std::size_t num_users() const { return links ? links->num_users() : topology.num_users; }
    double noise_power_w() const;
    double transmit_power_w(std::size_t point) const;
    /// P_u / noise at a sweep point.
    double snr_at(std::size_t point) const;

    /// Throws ConfigError listing every violated invariant.
    void validate() const;
};

/// 10^((density + 10 log10(bandwidth) + nf - 30) / 10) watts.
double noise_power_watts(double bandwidth_hz, double density_dbm_hz, double noise_figure_db);

/// Link laws shared by every trial, if the configuration pins them
/// (explicit tables, explicit positions, or fixed-per-sweep placement).
std::optional<LinkStatistics> fixed_link_statistics(const SystemConfig& config);

/// User positions used when the placement is pinned by the seed.
std::vector<Point2> fixed_user_positions(const SystemConfig& config);

/// Link laws seen by one trial.
LinkStatistics trial_link_statistics(const SystemConfig& config, std::size_t point, std::size_t trial);

/// E2E gain of `scheme` on one trial of one sweep point. Deterministic in
/// (config, point, trial); independent of which other schemes run.
double trial_gain(const SystemConfig& config, Scheme scheme, std::size_t point, std::size_t trial);

/// Gains of several schemes evaluated on the same channel draw.
std::vector<double> trial_gains(const SystemConfig& config,
                                std::span<const Scheme> schemes,
                                std::size_t point,
                                std::size_t trial);

/// Half-width of the Wilson score interval at 95 % confidence.
double wilson_halfwidth(std::size_t successes, std::size_t trials);

struct OpEstimate
{
    double probability = 0.0;
    double ci_halfwidth = 0.0;
    std::size_t outages = 0;
    std::size_t trials = 0;
};

/// Outage estimate of one scheme at one sweep point over config.trials.
OpEstimate estimate_op(Scheme scheme, std::size_t point, const SystemConfig& config, unsigned threads = 0);

struct OutagePoint
{
    double power_gain_db = 0.0;
    double op_estimate = 0.0;
    double ci_halfwidth = 0.0;
    std::size_t trials_used = 0;
    std::size_t outages = 0;
    /// No outage observed: the estimate is 0 and only the Wilson upper
    /// bound op_estimate + ci_halfwidth is informative.
    bool censored = false;
};

struct AnalyticalPoint
{
    double power_gain_db = 0.0;
    double op_value = 0.0;
    double std_error = 0.0; ///< nonzero only for oracle-evaluated values
};

struct OutageCurve
{
    Scheme scheme = Scheme::OR;
    std::vector<OutagePoint> points;
    std::optional<std::vector<AnalyticalPoint>> analytical;
};

/// Points up to (not including) the first one whose CI half-width exceeds
/// its estimate; the remainder is too noisy to plot.
std::vector<OutagePoint> reliable_prefix(const OutageCurve& curve);

/// Analytical overlays (SU, OR, IR bound) over the sweep grid, if available
/// for `scheme` under this configuration.
std::optional<std::vector<AnalyticalPoint>> analytical_curve(const SystemConfig& config, Scheme scheme);

/*!
 * Runs every configured scheme over the transmit-power grid. Each trial
 * draws its channel from a stream keyed by (seed, point, trial), so the
 * result is identical for any thread count. `threads` = 0 picks the
 * hardware concurrency.
 */
std::vector<OutageCurve> run_sweep(const SystemConfig& config, unsigned threads = 0);

struct TimingRow
{
    Scheme scheme = Scheme::OR;
    double mean_ms = 0.0;
    double relative_to_fastest = 1.0;
};

/// Wall-clock mean per realization over the same `realizations` channel
/// draws for every scheme (at least 100). Absolute values depend on the
/// machine; only the ordering is meaningful.
std::vector<TimingRow> timing_bench(const SystemConfig& config,
                                    std::span<const Scheme> schemes,
                                    std::size_t realizations = 100);

} // namespace risup

#endif
