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

#ifndef RISUP_ANALYSIS_HPP
#define RISUP_ANALYSIS_HPP

#include "risup/channel.hpp"
#include "risup/rng.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace risup
{

using LinkMomentInputs = LinkStatistics;

/// First two raw moments of a nonnegative variable.
struct Moments
{
    double mu1 = 0.0;
    double mu2 = 0.0;
};

/*!
 * Moment-matched Gamma law with shape alpha and rate beta:
 * alpha = mu1^2 / var, beta = mu1 / var, var = mu2 - mu1^2 > 0.
 */
struct GammaFit
{
    double alpha = 1.0;
    double beta = 1.0;
    double mu1 = 1.0;
    double mu2 = 2.0;

    static GammaFit from_moments(Moments m);
    /// Direct construction from shape and rate (moments filled in).
    static GammaFit from_shape_rate(double alpha, double beta);

    double mean() const { return alpha / beta; }
    double variance() const { return alpha / (beta * beta); }
};

/// E[(|g| |f|)^a] for independent Nakagami magnitudes, a in {1, 2}.
double u_term(const NakagamiParams& g, const NakagamiParams& f, int a);

/// Exact first and second moments of A_k = sum_s sum_n |f_sn||g_k,sn| + |d_k|
/// for independent links, with every within-surface and cross-surface
/// cross product spelled out.
Moments moments_ak(const LinkMomentInputs& inputs, std::size_t user);

GammaFit fit_user(const LinkMomentInputs& inputs, std::size_t user);
std::vector<GammaFit> fit_users(const LinkMomentInputs& inputs);

/// Gamma approximation of the CDF of A_k: P(alpha, beta x).
double cdf_ak(const GammaFit& fit, double x);

/// 2^r0 - 1.
double rate_threshold(double r0);

/// Single-user outage F_A(sqrt(gamma_0 / snr_bar)).
double outage_su(const GammaFit& fit, double r0, double snr_bar);

/// Opportunistic-reflection outage: product of per-user CDFs at the same
/// threshold. Throws ConfigError on an empty user list.
double outage_or(std::span<const GammaFit> fits, double r0, double snr_bar);

/// Density of gamma_k = A_k^2 when A_k ~ Gamma(alpha, beta).
double gen_gamma_pdf(const GammaFit& fit, double x);

struct OracleEstimate
{
    double probability = 0.0;
    double std_error = 0.0;
};

/*!
 * Monte-Carlo estimate of P(prod_k gamma_k <= x) with gamma_k the square of
 * an independent Gamma(alpha_k, beta_k) draw. Comparison happens in the
 * log domain so large user counts do not underflow. `samples` >= 10^4.
 */
OracleEstimate cdf_product_oracle(std::span<const GammaFit> fits, double x, std::size_t samples, RandomStream& rng);

/// Same as cdf_product_oracle with the threshold given as log(x).
OracleEstimate cdf_product_oracle_log(std::span<const GammaFit> fits,
                                      double log_x,
                                      std::size_t samples,
                                      RandomStream& rng);

/// Upper bound on the ideal-reflection outage: F_Y((gamma_0 / (K snr_bar))^K).
OracleEstimate outage_ir_upper_bound(std::span<const GammaFit> fits,
                                     double r0,
                                     double snr_bar,
                                     std::size_t samples,
                                     RandomStream& rng);

} // namespace risup

#endif
