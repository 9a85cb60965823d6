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

#include "risup/simkit.hpp"

#include "risup/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace risup
{

std::string_view to_string(UserPlacement p)
{
    switch (p)
    {
    case UserPlacement::redraw_per_trial:
        return "redraw-per-trial";
    case UserPlacement::fixed_per_sweep:
        return "fixed-per-sweep";
    }
    return "unknown";
}

std::optional<UserPlacement> parse_user_placement(std::string_view name)
{
    if (name == "redraw-per-trial")
        return UserPlacement::redraw_per_trial;
    if (name == "fixed-per-sweep")
        return UserPlacement::fixed_per_sweep;
    return std::nullopt;
}

double noise_power_watts(double bandwidth_hz, double density_dbm_hz, double noise_figure_db)
{
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("noise_power_watts: bandwidth must be positive");
    return std::pow(10.0, (density_dbm_hz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db - 30.0) / 10.0);
}

double SystemConfig::noise_power_w() const
{
    return noise_power_watts(bandwidth_hz, noise_density_dbm_hz, noise_figure_db);
}

double SystemConfig::transmit_power_w(std::size_t point) const
{
    return pu_min_w * db_to_linear(gain_sweep_db.at(point));
}

double SystemConfig::snr_at(std::size_t point) const
{
    return transmit_power_w(point) / noise_power_w();
}

void SystemConfig::validate() const
{
    std::vector<std::string> issues;
    auto check = [&](bool ok, std::string message) {
        if (!ok)
            issues.push_back(std::move(message));
    };

    try
    {
        topology.validate();
    }
    catch (const std::invalid_argument& e)
    {
        issues.emplace_back(e.what());
    }
    if (links)
    {
        try
        {
            links->validate();
        }
        catch (const std::invalid_argument& e)
        {
            issues.emplace_back(std::string("links: ") + e.what());
        }
        check(links->num_users() == topology.num_users, "links: user count differs from topology.num_users");
        check(links->elements_per_surface == topology.elements_per_surface,
              "links: elements_per_surface differs from the topology");
    }
    check(fading.direct >= 0.5 && fading.user_ris >= 0.5 && fading.ris_bs >= 0.5,
          "fading: Nakagami shapes must be >= 0.5");
    check(pu_min_w > 0.0 && std::isfinite(pu_min_w), "pu_min_w: must be positive");
    check(!gain_sweep_db.empty(), "gain_sweep_db: sweep must not be empty");
    for (std::size_t i = 0; i < gain_sweep_db.size(); ++i)
    {
        check(std::isfinite(gain_sweep_db[i]), "gain_sweep_db: entries must be finite");
        if (i > 0)
            check(gain_sweep_db[i] > gain_sweep_db[i - 1], "gain_sweep_db: entries must be strictly increasing");
    }
    check(bandwidth_hz > 0.0, "bandwidth_hz: must be positive");
    check(std::isfinite(noise_density_dbm_hz), "noise_density_dbm_hz: must be finite");
    check(std::isfinite(noise_figure_db), "noise_figure_db: must be finite");
    check(r0 >= 0.0 && std::isfinite(r0), "r0: must be a nonnegative rate");
    check(trials >= 1, "trials: must be >= 1");
    check(!analytical || oracle_samples >= 10000, "oracle_samples: at least 10000 required");
    try
    {
        jr.validate();
    }
    catch (const std::invalid_argument& e)
    {
        issues.emplace_back(e.what());
    }
    if (!issues.empty())
        throw ConfigError(std::move(issues));
}

std::vector<Point2> fixed_user_positions(const SystemConfig& config)
{
    if (config.topology.user_positions)
        return *config.topology.user_positions;
    auto rng = RandomStream::derive(config.seed, {static_cast<std::uint64_t>(StreamTag::positions)});
    return draw_user_positions(config.topology, rng);
}

std::optional<LinkStatistics> fixed_link_statistics(const SystemConfig& config)
{
    if (config.links)
        return config.links;
    if (config.topology.user_positions || config.user_placement == UserPlacement::fixed_per_sweep)
    {
        const auto users = fixed_user_positions(config);
        return link_statistics(config.topology, users, config.fading, config.pathloss);
    }
    return std::nullopt;
}

namespace
{

RandomStream trial_stream(const SystemConfig& config, std::size_t point, std::size_t trial, StreamTag tag)
{
    return RandomStream::derive(config.seed, {point, trial, static_cast<std::uint64_t>(tag)});
}

LinkStatistics drawn_link_statistics(const SystemConfig& config, std::size_t point, std::size_t trial)
{
    auto rng = trial_stream(config, point, trial, StreamTag::positions);
    const auto users = draw_user_positions(config.topology, rng);
    return link_statistics(config.topology, users, config.fading, config.pathloss);
}

/// Per-sweep state shared read-only by all workers.
struct SweepContext
{
    const SystemConfig& config;
    std::optional<LinkStatistics> fixed;

    explicit SweepContext(const SystemConfig& c) : config(c), fixed(fixed_link_statistics(c)) {}

    ChannelRealization draw(std::size_t point, std::size_t trial) const
    {
        auto rng = trial_stream(config, point, trial, StreamTag::channel);
        if (fixed)
            return realize(*fixed, config.correlation, rng);
        return realize(drawn_link_statistics(config, point, trial), config.correlation, rng);
    }

    double gain(Scheme scheme, const ChannelRealization& real, std::size_t point, std::size_t trial) const
    {
        // gains do not depend on the SNR; runners get a unit SNR
        switch (scheme)
        {
        case Scheme::IR:
            return run_ir(real, 1.0).gamma;
        case Scheme::SU:
            return run_su(real, 1.0).gamma;
        case Scheme::OR:
            return run_or(real, 1.0).gamma;
        case Scheme::OMUR:
            return run_omur(real, 1.0).gamma;
        case Scheme::OMUR_RP:
        {
            auto rng = trial_stream(config, point, trial, StreamTag::omur_rp_phases);
            return run_omur_rp(real, rng, 1.0).gamma;
        }
        case Scheme::OppBF:
        {
            auto rng = trial_stream(config, point, trial, StreamTag::oppbf_phases);
            return run_oppbf(real, rng, 1.0).gamma;
        }
        case Scheme::JR:
        {
            auto rng = trial_stream(config, point, trial, StreamTag::jr_init);
            return run_jr(real, config.jr, 1.0, &rng).gamma;
        }
        }
        throw std::logic_error("unhandled scheme");
    }
};

unsigned resolve_threads(unsigned requested, std::size_t work)
{
    unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (work < n)
        n = static_cast<unsigned>(std::max<std::size_t>(1, work));
    return n;
}

/// Splits [0, n) into contiguous chunks, one per worker; `body(begin, end,
/// slot)` must only touch state owned by `slot`.
template <typename Body>
void parallel_chunks(std::size_t n, unsigned threads, Body body)
{
    const unsigned workers = resolve_threads(threads, n);
    if (workers == 1)
    {
        body(std::size_t{0}, n, 0u);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w)
    {
        const std::size_t begin = std::min(n, w * chunk);
        const std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back([=, &body] { body(begin, end, w); });
    }
    for (auto& t : pool)
        t.join();
}

std::vector<std::size_t> count_outages(const SweepContext& ctx,
                                       std::span<const Scheme> schemes,
                                       std::size_t point,
                                       unsigned threads)
{
    const auto& config = ctx.config;
    const double snr = config.snr_at(point);
    const unsigned workers = resolve_threads(threads, config.trials);
    std::vector<std::vector<std::size_t>> partial(workers, std::vector<std::size_t>(schemes.size(), 0));

    parallel_chunks(config.trials, workers, [&](std::size_t begin, std::size_t end, unsigned slot) {
        auto& counts = partial[slot];
        for (std::size_t trial = begin; trial < end; ++trial)
        {
            const auto real = ctx.draw(point, trial);
            for (std::size_t i = 0; i < schemes.size(); ++i)
            {
                const double gamma = ctx.gain(schemes[i], real, point, trial);
                if (rate_from_gain(gamma, snr) < config.r0)
                    ++counts[i];
            }
        }
    });

    std::vector<std::size_t> total(schemes.size(), 0);
    for (const auto& counts : partial)
        for (std::size_t i = 0; i < counts.size(); ++i)
            total[i] += counts[i];
    return total;
}

OpEstimate make_estimate(std::size_t outages, std::size_t trials)
{
    OpEstimate e;
    e.outages = outages;
    e.trials = trials;
    e.probability = static_cast<double>(outages) / static_cast<double>(trials);
    e.ci_halfwidth = wilson_halfwidth(outages, trials);
    return e;
}

} // namespace

LinkStatistics trial_link_statistics(const SystemConfig& config, std::size_t point, std::size_t trial)
{
    if (auto fixed = fixed_link_statistics(config))
        return *fixed;
    return drawn_link_statistics(config, point, trial);
}

std::vector<double> trial_gains(const SystemConfig& config,
                                std::span<const Scheme> schemes,
                                std::size_t point,
                                std::size_t trial)
{
    const SweepContext ctx(config);
    const auto real = ctx.draw(point, trial);
    std::vector<double> out;
    out.reserve(schemes.size());
    for (auto s : schemes)
        out.push_back(ctx.gain(s, real, point, trial));
    return out;
}

double trial_gain(const SystemConfig& config, Scheme scheme, std::size_t point, std::size_t trial)
{
    const Scheme one[] = {scheme};
    return trial_gains(config, one, point, trial).front();
}

double wilson_halfwidth(std::size_t successes, std::size_t trials)
{
    if (trials == 0)
        throw std::invalid_argument("wilson_halfwidth: no trials");
    constexpr double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    return z / (1.0 + z2 / n) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
}

OpEstimate estimate_op(Scheme scheme, std::size_t point, const SystemConfig& config, unsigned threads)
{
    config.validate();
    if (point >= config.gain_sweep_db.size())
        throw std::out_of_range("estimate_op: sweep point out of range");
    const SweepContext ctx(config);
    const Scheme one[] = {scheme};
    const auto counts = count_outages(ctx, one, point, threads);
    return make_estimate(counts.front(), config.trials);
}

std::vector<OutagePoint> reliable_prefix(const OutageCurve& curve)
{
    std::vector<OutagePoint> out;
    for (const auto& p : curve.points)
    {
        if (p.ci_halfwidth > p.op_estimate)
            break;
        out.push_back(p);
    }
    return out;
}

std::optional<std::vector<AnalyticalPoint>> analytical_curve(const SystemConfig& config, Scheme scheme)
{
    if (scheme != Scheme::SU && scheme != Scheme::OR && scheme != Scheme::IR)
        return std::nullopt;
    // the closed forms assume independent links with pinned laws
    if (config.correlation != Correlation::independent)
        return std::nullopt;
    const auto stats = fixed_link_statistics(config);
    if (!stats)
        return std::nullopt;

    const auto fits = fit_users(*stats);
    std::vector<AnalyticalPoint> out;
    out.reserve(config.gain_sweep_db.size());
    for (std::size_t p = 0; p < config.gain_sweep_db.size(); ++p)
    {
        AnalyticalPoint a;
        a.power_gain_db = config.gain_sweep_db[p];
        if (config.r0 > 0.0)
        {
            const double snr = config.snr_at(p);
            switch (scheme)
            {
            case Scheme::SU:
                a.op_value = outage_su(fits.front(), config.r0, snr);
                break;
            case Scheme::OR:
                a.op_value = outage_or(fits, config.r0, snr);
                break;
            default:
            {
                // one stream for the whole grid keeps the bound monotone in power
                auto rng = RandomStream::derive(config.seed, {static_cast<std::uint64_t>(StreamTag::oracle)});
                const auto bound = outage_ir_upper_bound(fits, config.r0, snr, config.oracle_samples, rng);
                a.op_value = bound.probability;
                a.std_error = bound.std_error;
                break;
            }
            }
        }
        out.push_back(a);
    }
    return out;
}

std::vector<OutageCurve> run_sweep(const SystemConfig& config, unsigned threads)
{
    config.validate();
    const SweepContext ctx(config);
    const auto& schemes = config.schemes;

    std::vector<OutageCurve> curves(schemes.size());
    for (std::size_t i = 0; i < schemes.size(); ++i)
        curves[i].scheme = schemes[i];

    for (std::size_t p = 0; p < config.gain_sweep_db.size(); ++p)
    {
        const auto counts = count_outages(ctx, schemes, p, threads);
        for (std::size_t i = 0; i < schemes.size(); ++i)
        {
            const auto e = make_estimate(counts[i], config.trials);
            OutagePoint point;
            point.power_gain_db = config.gain_sweep_db[p];
            point.op_estimate = e.probability;
            point.ci_halfwidth = e.ci_halfwidth;
            point.trials_used = e.trials;
            point.outages = e.outages;
            point.censored = e.outages == 0;
            curves[i].points.push_back(point);
        }
    }

    if (config.analytical)
        for (auto& curve : curves)
            curve.analytical = analytical_curve(config, curve.scheme);
    return curves;
}

std::vector<TimingRow> timing_bench(const SystemConfig& config, std::span<const Scheme> schemes, std::size_t realizations)
{
    if (schemes.empty())
        return {};
    config.validate();
    realizations = std::max<std::size_t>(realizations, 100);
    const SweepContext ctx(config);

    std::vector<ChannelRealization> draws;
    draws.reserve(realizations);
    for (std::size_t t = 0; t < realizations; ++t)
        draws.push_back(ctx.draw(0, t));

    using clock = std::chrono::steady_clock;
    std::vector<TimingRow> rows;
    volatile double sink = 0.0;
    for (auto scheme : schemes)
    {
        // untimed pass so the first scheme is not charged for cold caches
        for (std::size_t t = 0; t < std::min<std::size_t>(realizations, 10); ++t)
            sink = sink + ctx.gain(scheme, draws[t], 0, t);
        const auto start = clock::now();
        for (std::size_t t = 0; t < realizations; ++t)
            sink = sink + ctx.gain(scheme, draws[t], 0, t);
        const std::chrono::duration<double, std::milli> elapsed = clock::now() - start;
        rows.push_back({scheme, elapsed.count() / static_cast<double>(realizations), 1.0});
    }
    double fastest = rows.front().mean_ms;
    for (const auto& r : rows)
        fastest = std::min(fastest, r.mean_ms);
    for (auto& r : rows)
        r.relative_to_fastest = fastest > 0.0 ? r.mean_ms / fastest : 1.0;
    return rows;
}

} // namespace risup
