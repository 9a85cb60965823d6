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

#include "risup/schemes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace risup
{

namespace
{

constexpr double two_pi = 2.0 * std::numbers::pi;

void check_user(const ChannelRealization& real, std::size_t user)
{
    if (user >= real.num_users)
        throw std::out_of_range("user index " + std::to_string(user) + " out of range for " +
                                std::to_string(real.num_users) + " users");
}

void check_phases(const ChannelRealization& real, std::size_t count)
{
    if (count != real.num_elements)
        throw std::invalid_argument("phase configuration has " + std::to_string(count) + " entries, channel has " +
                                    std::to_string(real.num_elements) + " elements");
}

cplx reflected_sum(const ChannelRealization& real, std::span<const cplx> q, std::size_t user)
{
    const auto column = real.user_column(user);
    cplx acc{0.0, 0.0};
    for (std::size_t m = 0; m < real.num_elements; ++m)
        acc += real.f[m] * q[m] * column[m];
    return acc;
}

} // namespace

double wrap_phase(double theta)
{
    double r = std::fmod(theta, two_pi);
    if (r < 0.0)
        r += two_pi;
    // fmod of a tiny negative angle can round back up to 2pi
    return r < two_pi ? r : 0.0;
}

PhaseConfig::PhaseConfig(std::vector<double> theta) : theta_(std::move(theta))
{
    for (auto& t : theta_)
        t = wrap_phase(t);
}

PhaseConfig PhaseConfig::zeros(std::size_t elements)
{
    return PhaseConfig(std::vector<double>(elements, 0.0));
}

PhaseConfig PhaseConfig::random(std::size_t elements, RandomStream& rng)
{
    std::vector<double> theta(elements);
    for (auto& t : theta)
        t = rng.phase();
    return PhaseConfig(std::move(theta));
}

std::vector<cplx> PhaseConfig::coefficients() const
{
    std::vector<cplx> q(theta_.size());
    for (std::size_t m = 0; m < theta_.size(); ++m)
        q[m] = std::polar(1.0, theta_[m]);
    return q;
}

std::string_view to_string(Scheme scheme)
{
    switch (scheme)
    {
    case Scheme::IR:
        return "IR";
    case Scheme::JR:
        return "JR";
    case Scheme::OR:
        return "OR";
    case Scheme::OMUR:
        return "OMUR";
    case Scheme::OMUR_RP:
        return "OMUR-RP";
    case Scheme::OppBF:
        return "OppBF";
    case Scheme::SU:
        return "SU";
    }
    return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name)
{
    for (auto s : {Scheme::IR, Scheme::JR, Scheme::OR, Scheme::OMUR, Scheme::OMUR_RP, Scheme::OppBF, Scheme::SU})
        if (name == to_string(s))
            return s;
    if (name == "OMUR_RP")
        return Scheme::OMUR_RP;
    return std::nullopt;
}

double rate_from_gain(double gamma, double snr)
{
    return std::log2(1.0 + gamma * snr);
}

cplx effective_channel(const ChannelRealization& real, const PhaseConfig& phases, std::size_t user)
{
    check_user(real, user);
    check_phases(real, phases.size());
    const auto column = real.user_column(user);
    cplx acc = real.d[user];
    for (std::size_t m = 0; m < real.num_elements; ++m)
        acc += real.f[m] * std::polar(1.0, phases[m]) * column[m];
    return acc;
}

std::vector<cplx> effective_channels(const ChannelRealization& real, std::span<const cplx> q)
{
    check_phases(real, q.size());
    std::vector<cplx> h(real.num_users);
    for (std::size_t k = 0; k < real.num_users; ++k)
        h[k] = reflected_sum(real, q, k) + real.d[k];
    return h;
}

double sum_gain(const ChannelRealization& real, std::span<const cplx> q)
{
    double total = 0.0;
    for (const auto& h : effective_channels(real, q))
        total += std::norm(h);
    return total;
}

double coherent_gain(const ChannelRealization& real, std::size_t user)
{
    check_user(real, user);
    const auto column = real.user_column(user);
    double amplitude = std::abs(real.d[user]);
    for (std::size_t m = 0; m < real.num_elements; ++m)
        amplitude += std::abs(real.f[m]) * std::abs(column[m]);
    return amplitude * amplitude;
}

std::vector<double> coherent_gains(const ChannelRealization& real)
{
    std::vector<double> out(real.num_users);
    for (std::size_t k = 0; k < real.num_users; ++k)
        out[k] = coherent_gain(real, k);
    return out;
}

std::size_t best_user(std::span<const double> gains)
{
    if (gains.empty())
        throw std::invalid_argument("best_user: no candidates");
    std::size_t best = 0;
    for (std::size_t k = 1; k < gains.size(); ++k)
        if (gains[k] > gains[best])
            best = k;
    return best;
}

double gain_ideal(const ChannelRealization& real)
{
    double total = 0.0;
    for (std::size_t k = 0; k < real.num_users; ++k)
        total += coherent_gain(real, k);
    return total;
}

PhaseConfig anchor_phases(const ChannelRealization& real, std::size_t user)
{
    check_user(real, user);
    const auto column = real.user_column(user);
    const double target = std::arg(real.d[user]);
    std::vector<double> theta(real.num_elements);
    for (std::size_t m = 0; m < real.num_elements; ++m)
    {
        const cplx path = real.f[m] * column[m];
        // std::arg(0) is 0, which is the convention for a vanishing path
        theta[m] = target - std::arg(path);
    }
    return PhaseConfig(std::move(theta));
}

double sum_capacity(const ChannelRealization& real, const PhaseConfig& phases, double pu, double noise)
{
    if (!(pu > 0.0) || !(noise > 0.0))
        throw std::invalid_argument("sum_capacity: power and noise must be positive");
    check_phases(real, phases.size());
    const auto q = phases.coefficients();
    return std::log2(1.0 + sum_gain(real, q) * pu / noise);
}

SchemeOutcome run_ir(const ChannelRealization& real, double snr)
{
    SchemeOutcome out;
    out.scheme = Scheme::IR;
    out.gamma = gain_ideal(real);
    out.rate = rate_from_gain(out.gamma, snr);
    return out;
}

SchemeOutcome run_su(const ChannelRealization& real, double snr)
{
    SchemeOutcome out;
    out.scheme = Scheme::SU;
    out.selected_user = 0;
    out.gamma = coherent_gain(real, 0);
    out.rate = rate_from_gain(out.gamma, snr);
    out.phases = anchor_phases(real, 0);
    return out;
}

SchemeOutcome run_or(const ChannelRealization& real, double snr)
{
    const auto gains = coherent_gains(real);
    const auto k = best_user(gains);
    SchemeOutcome out;
    out.scheme = Scheme::OR;
    out.selected_user = k;
    out.gamma = gains[k];
    out.rate = rate_from_gain(out.gamma, snr);
    out.phases = anchor_phases(real, k);
    return out;
}

SchemeOutcome run_omur(const ChannelRealization& real, double snr)
{
    const auto gains = coherent_gains(real);
    const auto anchor = best_user(gains);
    auto phases = anchor_phases(real, anchor);
    const auto h = effective_channels(real, phases.coefficients());

    // the anchor contributes its closed-form coherent gain; the rest add
    // whatever their non-aligned channels deliver
    double gamma = gains[anchor];
    for (std::size_t k = 0; k < h.size(); ++k)
        if (k != anchor)
            gamma += std::norm(h[k]);

    SchemeOutcome out;
    out.scheme = Scheme::OMUR;
    out.selected_user = anchor;
    out.gamma = gamma;
    out.rate = rate_from_gain(gamma, snr);
    out.phases = std::move(phases);
    return out;
}

SchemeOutcome run_omur_rp(const ChannelRealization& real, RandomStream& rng, double snr)
{
    auto phases = PhaseConfig::random(real.num_elements, rng);
    SchemeOutcome out;
    out.scheme = Scheme::OMUR_RP;
    out.gamma = sum_gain(real, phases.coefficients());
    out.rate = rate_from_gain(out.gamma, snr);
    out.phases = std::move(phases);
    return out;
}

SchemeOutcome run_oppbf(const ChannelRealization& real, RandomStream& rng, double snr)
{
    if (real.num_users < 1)
        throw std::invalid_argument("run_oppbf: no users");
    auto phases = PhaseConfig::random(real.num_elements, rng);
    const auto h = effective_channels(real, phases.coefficients());
    std::vector<double> gains(h.size());
    for (std::size_t k = 0; k < h.size(); ++k)
        gains[k] = std::norm(h[k]);
    const auto k = best_user(gains);

    SchemeOutcome out;
    out.scheme = Scheme::OppBF;
    out.selected_user = k;
    out.gamma = gains[k];
    out.rate = rate_from_gain(out.gamma, snr);
    out.phases = std::move(phases);
    return out;
}

} // namespace risup
