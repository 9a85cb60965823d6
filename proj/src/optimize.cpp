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

#include "risup/optimize.hpp"

#include <cmath>
#include <stdexcept>

namespace risup
{

std::string_view to_string(JrInit init)
{
    switch (init)
    {
    case JrInit::omur_anchor:
        return "omur_anchor";
    case JrInit::zero:
        return "zero";
    case JrInit::random:
        return "random";
    }
    return "unknown";
}

std::optional<JrInit> parse_jr_init(std::string_view name)
{
    for (auto i : {JrInit::omur_anchor, JrInit::zero, JrInit::random})
        if (name == to_string(i))
            return i;
    return std::nullopt;
}

void JrSolverConfig::validate() const
{
    if (max_sweeps < 1)
        throw std::invalid_argument("jr: max_sweeps must be >= 1");
    if (!(rel_tolerance > 0.0))
        throw std::invalid_argument("jr: rel_tolerance must be > 0");
}

double jr_objective(const ChannelRealization& real, const PhaseConfig& phases)
{
    return sum_gain(real, phases.coefficients());
}

namespace
{

PhaseConfig initial_phases(const ChannelRealization& real, JrInit init, RandomStream* rng)
{
    switch (init)
    {
    case JrInit::zero:
        return PhaseConfig::zeros(real.num_elements);
    case JrInit::random:
        if (rng == nullptr)
            throw std::invalid_argument("jr: random init requires a random stream");
        return PhaseConfig::random(real.num_elements, *rng);
    case JrInit::omur_anchor:
        break;
    }
    return anchor_phases(real, best_user(coherent_gains(real)));
}

} // namespace

JrResult jr_optimize(const ChannelRealization& real, const JrSolverConfig& cfg, RandomStream* rng)
{
    cfg.validate();
    const auto M = real.num_elements;
    const auto K = real.num_users;

    std::vector<double> theta = initial_phases(real, cfg.init, rng).angles();
    std::vector<cplx> q(M);
    for (std::size_t m = 0; m < M; ++m)
        q[m] = std::polar(1.0, theta[m]);

    // reflected path of element m towards user k, before the phase shift
    std::vector<cplx> path(M * K);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t m = 0; m < M; ++m)
            path[k * M + m] = real.f[m] * real.g_at(m, k);

    auto h = effective_channels(real, q);
    auto objective_of = [&] {
        double total = 0.0;
        for (const auto& v : h)
            total += std::norm(v);
        return total;
    };

    JrResult result;
    double objective = objective_of();
    result.trace.push_back(objective);

    for (std::size_t sweep = 0; sweep < cfg.max_sweeps && M > 0; ++sweep)
    {
        for (std::size_t m = 0; m < M; ++m)
        {
            cplx b{0.0, 0.0};
            for (std::size_t k = 0; k < K; ++k)
            {
                const cplx a = path[k * M + m];
                const cplx residual = h[k] - q[m] * a;
                b += a * std::conj(residual);
            }
            const double magnitude = std::abs(b);
            if (magnitude == 0.0)
                continue;
            // gain of the update is 2(|B| - Re(q_m B)); skip non-improving moves
            if (magnitude - std::real(q[m] * b) <= 0.0)
                continue;
            const cplx q_new = std::conj(b) / magnitude;
            for (std::size_t k = 0; k < K; ++k)
                h[k] += (q_new - q[m]) * path[k * M + m];
            q[m] = q_new;
            theta[m] = -std::arg(b);
        }

        // one extra block: rotate all elements together against d. Single
        // element moves make little progress along this direction when the
        // reflected paths dominate.
        cplx c{0.0, 0.0};
        for (std::size_t k = 0; k < K; ++k)
            c += (h[k] - real.d[k]) * std::conj(real.d[k]);
        const double c_abs = std::abs(c);
        if (c_abs > 0.0 && c_abs - std::real(c) > 0.0)
        {
            const cplx turn = std::conj(c) / c_abs;
            for (std::size_t m = 0; m < M; ++m)
            {
                q[m] *= turn;
                theta[m] += std::arg(turn);
            }
        }

        // recompute from scratch so the trace is free of residual drift
        h = effective_channels(real, q);
        const double updated = objective_of();
        result.sweeps = sweep + 1;
        const double improvement = updated - objective;
        objective = updated;
        result.trace.push_back(objective);
        if (improvement <= cfg.rel_tolerance * std::abs(objective))
            break;
    }

    result.phases = PhaseConfig(std::move(theta));
    result.objective = jr_objective(real, result.phases);
    return result;
}

SchemeOutcome run_jr(const ChannelRealization& real, const JrSolverConfig& cfg, double snr, RandomStream* rng)
{
    auto solved = jr_optimize(real, cfg, rng);
    SchemeOutcome out;
    out.scheme = Scheme::JR;
    out.gamma = solved.objective;
    out.rate = rate_from_gain(out.gamma, snr);
    out.phases = std::move(solved.phases);
    return out;
}

} // namespace risup
