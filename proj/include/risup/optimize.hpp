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

#ifndef RISUP_OPTIMIZE_HPP
#define RISUP_OPTIMIZE_HPP

#include "risup/channel.hpp"
#include "risup/schemes.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace risup
{

enum class JrInit
{
    omur_anchor,
    zero,
    random,
};

std::string_view to_string(JrInit init);
std::optional<JrInit> parse_jr_init(std::string_view name);

struct JrSolverConfig
{
    std::size_t max_sweeps = 200;
    double rel_tolerance = 1e-8;
    JrInit init = JrInit::omur_anchor;

    void validate() const;
};

struct JrResult
{
    PhaseConfig phases;
    double objective = 0.0;
    std::size_t sweeps = 0;
    /// Objective at the initial point followed by the value after each sweep.
    std::vector<double> trace;
};

/// ||f^T Theta G + d^T||^2, the joint-reflection sum gain.
double jr_objective(const ChannelRealization& real, const PhaseConfig& phases);

/*!
 * Maximize the joint-reflection objective over unit-modulus phases by
 * element-wise coordinate ascent.
 *
 * With every phase but theta_m fixed the objective is
 * A + 2 Re(e^{j theta_m} B_m), B_m = sum_k f_m g_mk conj(c_mk), where c_mk is
 * user k's effective channel without element m, so theta_m = -arg(B_m) is
 * the exact coordinate maximizer. Residuals are updated in place, giving
 * O(MK) per sweep. The objective never decreases; iteration stops once a
 * sweep improves it by less than `rel_tolerance` (relative) or after
 * `max_sweeps`.
 *
 * `rng` is required only for JrInit::random.
 */
JrResult jr_optimize(const ChannelRealization& real, const JrSolverConfig& cfg, RandomStream* rng = nullptr);

SchemeOutcome run_jr(const ChannelRealization& real, const JrSolverConfig& cfg, double snr, RandomStream* rng = nullptr);

} // namespace risup

#endif
