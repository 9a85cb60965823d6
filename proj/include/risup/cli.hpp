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

#ifndef RISUP_CLI_HPP
#define RISUP_CLI_HPP

#include "risup/simkit.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace risup
{

inline constexpr const char* tool_version = "0.1.0";

/// Name of the environment variable overriding the worker-thread count.
inline constexpr const char* threads_env_var = "RISUP_THREADS";

/// Stable process exit statuses.
enum ExitStatus : int
{
    exit_ok = 0,
    exit_config_error = 2,
    exit_runtime_error = 3,
};

struct RunManifest
{
    std::string command;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string tool_version = risup::tool_version;
    std::string started;
    std::string finished;
    std::string status = "running";
    std::string error;
    unsigned threads = 0;
    std::vector<std::string> output_files;
};

/// Threads from RISUP_THREADS, or 0 (hardware concurrency) when unset or
/// unparsable.
unsigned threads_from_env();

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// `power_gain_db,op_estimate,ci_halfwidth,op_analytical` rows; the last
/// column is empty where no analytical value exists.
void write_curve_csv(const OutageCurve& curve, std::ostream& out);

/// `sweep <config> -o <dir>`: one CSV per scheme plus manifest.json and a
/// canonical copy of the configuration.
int cmd_sweep(const std::filesystem::path& config_path,
              const std::filesystem::path& out_dir,
              unsigned threads,
              std::ostream& log,
              std::ostream& err);

/// `analyze <config> -o <dir>`: closed-form SU and OR curves and the IR
/// bound, without simulation. Per-user moments go into the manifest.
int cmd_analyze(const std::filesystem::path& config_path,
                const std::filesystem::path& out_dir,
                std::ostream& log,
                std::ostream& err);

/// `validate <config>`: parse, canonicalize and print derived quantities.
int cmd_validate(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err);

/// `bench <config>`: mean time per realization for each configured scheme.
int cmd_bench(const std::filesystem::path& config_path,
              std::size_t realizations,
              std::ostream& out,
              std::ostream& err);

} // namespace risup

#endif
