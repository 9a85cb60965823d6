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

#ifndef RISUP_SCHEMES_HPP
#define RISUP_SCHEMES_HPP

#include "risup/channel.hpp"
#include "risup/rng.hpp"

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace risup
{

/// Reduce an angle into [0, 2*pi).
double wrap_phase(double theta);

/// Diagonal of the reflection matrix: one phase per element across all
/// surfaces, always stored wrapped into [0, 2*pi).
class PhaseConfig
{
  public:
    PhaseConfig() = default;
    explicit PhaseConfig(std::vector<double> theta);

    static PhaseConfig zeros(std::size_t elements);
    static PhaseConfig random(std::size_t elements, RandomStream& rng);

    std::size_t size() const { return theta_.size(); }
    double operator[](std::size_t m) const { return theta_[m]; }
    const std::vector<double>& angles() const { return theta_; }

    /// Unit-modulus reflection coefficients e^{j theta_m}.
    std::vector<cplx> coefficients() const;

  private:
    std::vector<double> theta_;
};

enum class Scheme
{
    IR,
    JR,
    OR,
    OMUR,
    OMUR_RP,
    OppBF,
    SU,
};

std::string_view to_string(Scheme scheme);
/// Accepts the canonical names (IR, JR, OR, OMUR, OMUR-RP, OppBF, SU) and
/// OMUR_RP as an alias.
std::optional<Scheme> parse_scheme(std::string_view name);

struct SchemeOutcome
{
    Scheme scheme = Scheme::IR;
    std::optional<std::size_t> selected_user;
    double gamma = 0.0; ///< E2E power gain, linear
    double rate = 0.0;  ///< bits/s/Hz
    std::optional<PhaseConfig> phases;
};

/// log2(1 + gamma * snr) with snr = P_u / noise.
double rate_from_gain(double gamma, double snr);

/// f^T Theta g_k + d_k.
cplx effective_channel(const ChannelRealization& real, const PhaseConfig& phases, std::size_t user);

/// Effective channel of every user for reflection coefficients `q`.
std::vector<cplx> effective_channels(const ChannelRealization& real, std::span<const cplx> q);

/// Sum over users of |effective channel|^2, i.e. ||f^T Theta G + d^T||^2.
double sum_gain(const ChannelRealization& real, std::span<const cplx> q);

/// Coherently combined gain of one user, (sum_m |f_m||g_mk| + |d_k|)^2.
double coherent_gain(const ChannelRealization& real, std::size_t user);
std::vector<double> coherent_gains(const ChannelRealization& real);

/// Index of the largest coherent gain; ties go to the lowest index.
std::size_t best_user(std::span<const double> gains);

/// Ideal-reflection bound: sum of every user's coherent gain.
double gain_ideal(const ChannelRealization& real);

/// Phases aligning every reflected path of `user` with its direct path.
/// A vanishing product f_m g_mk contributes phase 0.
PhaseConfig anchor_phases(const ChannelRealization& real, std::size_t user);

/// log2(1 + ||f^T Theta G + d^T||^2 pu / noise): SIC sum capacity.
double sum_capacity(const ChannelRealization& real, const PhaseConfig& phases, double pu, double noise);

SchemeOutcome run_ir(const ChannelRealization& real, double snr);

/// Single-user reference: user 0 alone with coherent phases.
SchemeOutcome run_su(const ChannelRealization& real, double snr);

SchemeOutcome run_or(const ChannelRealization& real, double snr);

/// Anchor on the best user, then let everyone transmit and decode by SIC.
SchemeOutcome run_omur(const ChannelRealization& real, double snr);

SchemeOutcome run_omur_rp(const ChannelRealization& real, RandomStream& rng, double snr);

/*!
 * Opportunistic beamforming baseline: random phases, then the user with
 * the strongest resulting channel transmits alone. No CSI goes into the
 * phases, only best-user feedback; with many users it lands close to OR.
 */
SchemeOutcome run_oppbf(const ChannelRealization& real, RandomStream& rng, double snr);

} // namespace risup

#endif
