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

// Command-line front end. Exit statuses: 0 success, 2 configuration error,
// 3 runtime or I/O error. RISUP_THREADS overrides the worker count.

#include "risup/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Multi-RIS multi-user uplink simulator"};
    app.set_version_flag("--version", risup::tool_version);
    app.require_subcommand(1);

    std::string config;
    std::string out_dir;
    unsigned threads = risup::threads_from_env();
    std::size_t realizations = 200;

    auto* sweep = app.add_subcommand("sweep", "Monte-Carlo outage sweep, one CSV per scheme");
    sweep->add_option("config", config, "experiment file (JSON)")->required();
    sweep->add_option("-o,--out", out_dir, "output directory")->required();
    sweep->add_option("-j,--threads", threads, "worker threads (0 = all cores)");

    auto* analyze = app.add_subcommand("analyze", "closed-form outage curves without simulation");
    analyze->add_option("config", config, "experiment file (JSON)")->required();
    analyze->add_option("-o,--out", out_dir, "output directory")->required();

    auto* validate = app.add_subcommand("validate", "check a configuration and print derived quantities");
    validate->add_option("config", config, "experiment file (JSON)")->required();

    auto* bench = app.add_subcommand("bench", "mean run time per channel realization for each scheme");
    bench->add_option("config", config, "experiment file (JSON)")->required();
    bench->add_option("-n,--realizations", realizations, "realizations per scheme (>= 100)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : risup::exit_config_error;
    }

    if (sweep->parsed())
        return risup::cmd_sweep(config, out_dir, threads, std::cout, std::cerr);
    if (analyze->parsed())
        return risup::cmd_analyze(config, out_dir, std::cout, std::cerr);
    if (validate->parsed())
        return risup::cmd_validate(config, std::cout, std::cerr);
    return risup::cmd_bench(config, realizations, std::cout, std::cerr);
}
