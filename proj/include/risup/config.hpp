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

#ifndef RISUP_CONFIG_HPP
#define RISUP_CONFIG_HPP

#include "risup/simkit.hpp"

#include <filesystem>
#include <string>

#include <json.hpp>

namespace risup
{

/*!
 * JSON experiment files.
 *
 * Parsing collects every problem before failing, so a ConfigError lists
 * all offending fields at once. `r0` and `schemes` are required; every
 * other field falls back to the desk-scale defaults of SystemConfig.
 * `gain_sweep_db` accepts either an explicit list or
 * {"start", "stop", "step"}; `elements_per_surface` accepts a list or a
 * scalar replicated over `num_surfaces`.
 */
SystemConfig config_from_json(const nlohmann::json& doc);

/// Canonical form: every field explicit, sweeps expanded, keys sorted.
nlohmann::json config_to_json(const SystemConfig& config);

SystemConfig load_config(const std::filesystem::path& path);

std::string canonical_config_text(const SystemConfig& config);

/// Lower-case hex SHA-256 of the canonical text.
std::string config_hash(const SystemConfig& config);

std::string sha256_hex(const std::string& data);

} // namespace risup

#endif
