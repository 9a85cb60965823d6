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

#include "risup/cli.hpp"

#include "risup/config.hpp"
#include "risup/errors.hpp"

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace risup
{

namespace fs = std::filesystem;
using nlohmann::json;

unsigned threads_from_env()
{
    const char* raw = std::getenv(threads_env_var);
    if (raw == nullptr)
        return 0;
    unsigned value = 0;
    const std::string_view text(raw);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        return 0;
    return value;
}

std::string format_double(double value)
{
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

void write_curve_csv(const OutageCurve& curve, std::ostream& out)
{
    out << "power_gain_db,op_estimate,ci_halfwidth,op_analytical\n";
    for (std::size_t i = 0; i < curve.points.size(); ++i)
    {
        const auto& p = curve.points[i];
        out << format_double(p.power_gain_db) << ',' << format_double(p.op_estimate) << ','
            << format_double(p.ci_halfwidth) << ',';
        if (curve.analytical && i < curve.analytical->size())
            out << format_double((*curve.analytical)[i].op_value);
        out << '\n';
    }
}

namespace
{

std::string utc_now()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

json manifest_to_json(const RunManifest& m)
{
    return json{{"command", m.command},
                {"config_hash", m.config_hash},
                {"seed", m.seed},
                {"tool_version", m.tool_version},
                {"started", m.started},
                {"finished", m.finished},
                {"status", m.status},
                {"error", m.error},
                {"threads", m.threads},
                {"output_files", m.output_files}};
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
}

void write_manifest(const fs::path& dir, const RunManifest& m, const json& extra = {})
{
    json doc = manifest_to_json(m);
    if (!extra.is_null())
        doc.update(extra);
    write_text(dir / "manifest.json", doc.dump(2) + "\n");
}

std::optional<SystemConfig> load_or_report(const fs::path& path, std::ostream& err)
{
    try
    {
        return load_config(path);
    }
    catch (const ConfigError& e)
    {
        err << "invalid configuration " << path.string() << ":\n";
        for (const auto& issue : e.issues())
            err << "  " << issue << '\n';
        return std::nullopt;
    }
}

bool prepare_dir(const fs::path& dir, std::ostream& err)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
    {
        err << "cannot create output directory " << dir.string() << ": " << ec.message() << '\n';
        return false;
    }
    const auto probe = dir / ".risup_write_probe";
    std::ofstream test(probe);
    if (!test)
    {
        err << "output directory " << dir.string() << " is not writable\n";
        return false;
    }
    test.close();
    fs::remove(probe, ec);
    return true;
}

std::string csv_name(Scheme scheme)
{
    return std::string(to_string(scheme)) + ".csv";
}

void write_analytical_csv(const std::vector<AnalyticalPoint>& points, bool with_error, std::ostream& out)
{
    out << "power_gain_db,op_analytical" << (with_error ? ",oracle_std_error" : "") << '\n';
    for (const auto& p : points)
    {
        out << format_double(p.power_gain_db) << ',' << format_double(p.op_value);
        if (with_error)
            out << ',' << format_double(p.std_error);
        out << '\n';
    }
}

} // namespace

int cmd_sweep(const fs::path& config_path, const fs::path& out_dir, unsigned threads, std::ostream& log, std::ostream& err)
{
    auto config = load_or_report(config_path, err);
    if (!config)
        return exit_config_error;
    if (!prepare_dir(out_dir, err))
        return exit_runtime_error;

    RunManifest manifest;
    manifest.command = "sweep";
    manifest.config_hash = config_hash(*config);
    manifest.seed = config->seed;
    manifest.threads = threads;
    manifest.started = utc_now();

    try
    {
        write_text(out_dir / "config.json", canonical_config_text(*config));
        manifest.output_files.push_back("config.json");

        const auto curves = run_sweep(*config, threads);
        for (const auto& curve : curves)
        {
            std::ostringstream csv;
            write_curve_csv(curve, csv);
            write_text(out_dir / csv_name(curve.scheme), csv.str());
            manifest.output_files.push_back(csv_name(curve.scheme));
            log << "wrote " << (out_dir / csv_name(curve.scheme)).string() << '\n';
        }
        manifest.status = "ok";
    }
    catch (const std::exception& e)
    {
        manifest.status = "failed";
        manifest.error = e.what();
        err << "sweep failed: " << e.what() << '\n';
    }
    manifest.finished = utc_now();
    try
    {
        write_manifest(out_dir, manifest);
    }
    catch (const std::exception& e)
    {
        err << e.what() << '\n';
        return exit_runtime_error;
    }
    return manifest.status == "ok" ? exit_ok : exit_runtime_error;
}

int cmd_analyze(const fs::path& config_path, const fs::path& out_dir, std::ostream& log, std::ostream& err)
{
    auto loaded = load_or_report(config_path, err);
    if (!loaded)
        return exit_config_error;
    if (!prepare_dir(out_dir, err))
        return exit_runtime_error;

    // closed forms need pinned, independent link laws
    SystemConfig config = *loaded;
    config.correlation = Correlation::independent;
    if (!config.links && !config.topology.user_positions)
        config.user_placement = UserPlacement::fixed_per_sweep;

    RunManifest manifest;
    manifest.command = "analyze";
    manifest.config_hash = config_hash(*loaded);
    manifest.seed = config.seed;
    manifest.started = utc_now();
    json extra;

    try
    {
        write_text(out_dir / "config.json", canonical_config_text(*loaded));
        manifest.output_files.push_back("config.json");

        const auto stats = *fixed_link_statistics(config);
        json users = json::array();
        for (std::size_t k = 0; k < stats.num_users(); ++k)
        {
            const auto m = moments_ak(stats, k);
            const auto fit = GammaFit::from_moments(m);
            users.push_back({{"user", k}, {"mu1", m.mu1}, {"mu2", m.mu2}, {"alpha", fit.alpha}, {"beta", fit.beta}});
        }
        extra["moments"] = users;
        if (!config.links)
        {
            json positions = json::array();
            for (const auto& p : fixed_user_positions(config))
                positions.push_back({p.x, p.y});
            extra["user_positions"] = positions;
        }

        const std::pair<Scheme, const char*> outputs[] = {
            {Scheme::SU, "SU_analytical.csv"}, {Scheme::OR, "OR_analytical.csv"}, {Scheme::IR, "IR_bound.csv"}};
        for (const auto& [scheme, name] : outputs)
        {
            const auto curve = analytical_curve(config, scheme);
            std::ostringstream csv;
            write_analytical_csv(*curve, scheme == Scheme::IR, csv);
            write_text(out_dir / name, csv.str());
            manifest.output_files.emplace_back(name);
            log << "wrote " << (out_dir / name).string() << '\n';
        }
        manifest.status = "ok";
    }
    catch (const std::exception& e)
    {
        manifest.status = "failed";
        manifest.error = e.what();
        err << "analyze failed: " << e.what() << '\n';
    }
    manifest.finished = utc_now();
    try
    {
        write_manifest(out_dir, manifest, extra);
    }
    catch (const std::exception& e)
    {
        err << e.what() << '\n';
        return exit_runtime_error;
    }
    return manifest.status == "ok" ? exit_ok : exit_runtime_error;
}

int cmd_validate(const fs::path& config_path, std::ostream& out, std::ostream& err)
{
    auto config = load_or_report(config_path, err);
    if (!config)
        return exit_config_error;

    const auto& topo = config->topology;
    const double noise = config->noise_power_w();
    out << "config valid (sha256 " << config_hash(*config) << ")\n";
    out << "users K = " << config->num_users() << '\n';
    out << "surfaces S = " << topo.num_surfaces() << '\n';
    out << "elements M = " << topo.total_elements() << '\n';
    out << "noise power = " << format_double(linear_to_db(noise) + 30.0) << " dBm (" << format_double(noise)
        << " W)\n";
    out << "transmit SNR = " << format_double(linear_to_db(config->snr_at(0))) << " .. "
        << format_double(linear_to_db(config->snr_at(config->gain_sweep_db.size() - 1))) << " dB over "
        << config->gain_sweep_db.size() << " points\n";
    out << "target rate r0 = " << format_double(config->r0) << " bit/s/Hz\n";

    const bool pinned = static_cast<bool>(fixed_link_statistics(*config));
    SystemConfig shown = *config;
    if (!pinned)
        shown.user_placement = UserPlacement::fixed_per_sweep;
    const auto stats = *fixed_link_statistics(shown);
    out << "link spreads (dB)" << (pinned ? "" : ", example placement drawn from the seed") << ":\n";
    for (std::size_t k = 0; k < stats.num_users(); ++k)
        out << "  direct user " << k << ": " << format_double(linear_to_db(stats.direct[k].omega)) << '\n';
    for (std::size_t s = 0; s < stats.num_surfaces(); ++s)
    {
        out << "  surface " << s << " -> BS: " << format_double(linear_to_db(stats.ris_bs[s].omega)) << '\n';
        for (std::size_t k = 0; k < stats.num_users(); ++k)
            out << "  user " << k << " -> surface " << s << ": "
                << format_double(linear_to_db(stats.user_ris_at(s, k).omega)) << '\n';
    }
    return exit_ok;
}

int cmd_bench(const fs::path& config_path, std::size_t realizations, std::ostream& out, std::ostream& err)
{
    auto config = load_or_report(config_path, err);
    if (!config)
        return exit_config_error;
    try
    {
        const auto rows = timing_bench(*config, config->schemes, realizations);
        out << "scheme,mean_ms_per_realization,relative_to_fastest\n";
        for (const auto& r : rows)
            out << to_string(r.scheme) << ',' << format_double(r.mean_ms) << ','
                << format_double(r.relative_to_fastest) << '\n';
        out << "# absolute times depend on the machine; compare ratios only\n";
    }
    catch (const std::exception& e)
    {
        err << "bench failed: " << e.what() << '\n';
        return exit_runtime_error;
    }
    return exit_ok;
}

} // namespace risup
