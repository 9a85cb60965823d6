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

#include "risup/analysis.hpp"

#include "risup/errors.hpp"
#include "risup/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace risup
{

GammaFit GammaFit::from_moments(Moments m)
{
    const double variance = m.mu2 - m.mu1 * m.mu1;
    if (!(m.mu1 > 0.0) || !(variance > 0.0))
        throw std::invalid_argument("GammaFit: moments need mu1 > 0 and mu2 > mu1^2");
    GammaFit fit;
    fit.mu1 = m.mu1;
    fit.mu2 = m.mu2;
    fit.alpha = m.mu1 * m.mu1 / variance;
    fit.beta = m.mu1 / variance;
    return fit;
}

GammaFit GammaFit::from_shape_rate(double alpha, double beta)
{
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw std::invalid_argument("GammaFit: shape and rate must be positive");
    GammaFit fit;
    fit.alpha = alpha;
    fit.beta = beta;
    fit.mu1 = alpha / beta;
    fit.mu2 = alpha * (alpha + 1.0) / (beta * beta);
    return fit;
}

double u_term(const NakagamiParams& g, const NakagamiParams& f, int a)
{
    if (a != 1 && a != 2)
        throw std::invalid_argument("u_term: order must be 1 or 2");
    g.validate();
    f.validate();
    const double half = 0.5 * a;
    const double scale = std::sqrt(g.m / g.omega * f.m / f.omega);
    return std::pow(scale, -a) * gamma_ratio(g.m + half, g.m) * gamma_ratio(f.m + half, f.m);
}

Moments moments_ak(const LinkMomentInputs& inputs, std::size_t user)
{
    inputs.validate();
    if (user >= inputs.num_users())
        throw std::out_of_range("moments_ak: user " + std::to_string(user) + " out of range");

    const auto S = inputs.num_surfaces();
    const auto& direct = inputs.direct[user];
    const double direct_mean = nakagami_mean(direct);

    // U(1), U(2) per element, grouped by surface
    std::vector<std::vector<double>> u1(S), u2(S);
    for (std::size_t s = 0; s < S; ++s)
    {
        const auto& g = inputs.user_ris_at(s, user);
        const auto& f = inputs.ris_bs[s];
        u1[s].assign(inputs.elements_per_surface[s], u_term(g, f, 1));
        u2[s].assign(inputs.elements_per_surface[s], u_term(g, f, 2));
    }

    double reflected_mean = 0.0;
    for (std::size_t s = 0; s < S; ++s)
        for (double v : u1[s])
            reflected_mean += v;

    Moments out;
    out.mu1 = direct_mean + reflected_mean;

    double mu2 = direct.omega + 2.0 * direct_mean * reflected_mean;
    for (std::size_t s = 0; s < S; ++s)
    {
        const auto n = u1[s].size();
        double within = 0.0;
        for (std::size_t i = 0; i < n; ++i)
        {
            within += u2[s][i];
            double tail = 0.0;
            for (std::size_t j = i + 1; j < n; ++j)
                tail += u1[s][j];
            within += 2.0 * u1[s][i] * tail;
        }
        mu2 += within;
    }
    for (std::size_t s = 0; s < S; ++s)
    {
        double later = 0.0;
        for (std::size_t t = s + 1; t < S; ++t)
            for (double v : u1[t])
                later += v;
        for (double v : u1[s])
            mu2 += 2.0 * v * later;
    }
    out.mu2 = mu2;
    return out;
}

GammaFit fit_user(const LinkMomentInputs& inputs, std::size_t user)
{
    return GammaFit::from_moments(moments_ak(inputs, user));
}

std::vector<GammaFit> fit_users(const LinkMomentInputs& inputs)
{
    std::vector<GammaFit> out;
    out.reserve(inputs.num_users());
    for (std::size_t k = 0; k < inputs.num_users(); ++k)
        out.push_back(fit_user(inputs, k));
    return out;
}

double cdf_ak(const GammaFit& fit, double x)
{
    if (!(x >= 0.0))
        throw std::invalid_argument("cdf_ak: x must be nonnegative");
    return regularized_gamma_p(fit.alpha, fit.beta * x);
}

double rate_threshold(double r0)
{
    return std::exp2(r0) - 1.0;
}

namespace
{

void check_outage_args(double r0, double snr_bar)
{
    if (!(r0 > 0.0))
        throw std::invalid_argument("outage: target rate must be positive");
    if (!(snr_bar > 0.0))
        throw std::invalid_argument("outage: transmit SNR must be positive");
}

} // namespace

double outage_su(const GammaFit& fit, double r0, double snr_bar)
{
    check_outage_args(r0, snr_bar);
    return cdf_ak(fit, std::sqrt(rate_threshold(r0) / snr_bar));
}

double outage_or(std::span<const GammaFit> fits, double r0, double snr_bar)
{
    if (fits.empty())
        throw ConfigError("fits: at least one user required for the OR outage");
    check_outage_args(r0, snr_bar);
    const double x = std::sqrt(rate_threshold(r0) / snr_bar);
    double p = 1.0;
    for (const auto& fit : fits)
        p *= cdf_ak(fit, x);
    return p;
}

double gen_gamma_pdf(const GammaFit& fit, double x)
{
    if (!(x > 0.0))
        throw std::invalid_argument("gen_gamma_pdf: x must be positive");
    const double root = std::sqrt(x);
    const double log_density = -std::log(2.0 * root) + fit.alpha * std::log(fit.beta) - std::lgamma(fit.alpha) +
                               (fit.alpha - 1.0) * std::log(root) - fit.beta * root;
    return std::exp(log_density);
}

OracleEstimate cdf_product_oracle_log(std::span<const GammaFit> fits,
                                      double log_x,
                                      std::size_t samples,
                                      RandomStream& rng)
{
    if (fits.empty())
        throw ConfigError("fits: at least one user required for the product oracle");
    if (samples < 10000)
        throw std::invalid_argument("cdf_product_oracle: at least 10^4 samples required");

    std::size_t hits = 0;
    for (std::size_t i = 0; i < samples; ++i)
    {
        double log_product = 0.0;
        for (const auto& fit : fits)
            log_product += 2.0 * std::log(rng.gamma(fit.alpha, 1.0 / fit.beta));
        if (log_product <= log_x)
            ++hits;
    }
    const double n = static_cast<double>(samples);
    const double p = static_cast<double>(hits) / n;
    return {p, std::sqrt(p * (1.0 - p) / n)};
}

OracleEstimate cdf_product_oracle(std::span<const GammaFit> fits, double x, std::size_t samples, RandomStream& rng)
{
    if (!(x > 0.0))
    {
        // the product is strictly positive; still validate the inputs
        if (fits.empty())
            throw ConfigError("fits: at least one user required for the product oracle");
        if (samples < 10000)
            throw std::invalid_argument("cdf_product_oracle: at least 10^4 samples required");
        return {0.0, 0.0};
    }
    return cdf_product_oracle_log(fits, std::log(x), samples, rng);
}

OracleEstimate outage_ir_upper_bound(std::span<const GammaFit> fits,
                                     double r0,
                                     double snr_bar,
                                     std::size_t samples,
                                     RandomStream& rng)
{
    check_outage_args(r0, snr_bar);
    const double K = static_cast<double>(fits.size());
    const double log_x = K * std::log(rate_threshold(r0) / (K * snr_bar));
    return cdf_product_oracle_log(fits, log_x, samples, rng);
}

} // namespace risup
