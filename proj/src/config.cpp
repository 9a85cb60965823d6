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

#include "risup/config.hpp"

#include "risup/errors.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace risup
{

using nlohmann::json;

namespace
{

/// Walks a JSON document and records every problem instead of stopping at
/// the first one.
class Reader
{
  public:
    std::vector<std::string> issues;

    void fail(const std::string& field, const std::string& problem) { issues.push_back(field + ": " + problem); }

    void reject_unknown(const json& obj, const std::string& prefix, std::initializer_list<const char*> known)
    {
        if (!obj.is_object())
            return;
        std::set<std::string> allowed(known.begin(), known.end());
        for (const auto& [key, _] : obj.items())
            if (!allowed.count(key))
                fail(prefix + key, "unknown field");
    }

    const json* find(const json& obj, const char* key) const
    {
        if (!obj.is_object())
            return nullptr;
        auto it = obj.find(key);
        return it == obj.end() ? nullptr : &*it;
    }

    void number(const json& obj, const char* key, const std::string& field, double& out, bool required = false)
    {
        const json* v = find(obj, key);
        if (v == nullptr)
        {
            if (required)
                fail(field, field + " required");
            return;
        }
        if (!v->is_number())
        {
            fail(field, "must be a number");
            return;
        }
        out = v->get<double>();
        if (!std::isfinite(out))
            fail(field, "must be finite");
    }

    void count(const json& obj, const char* key, const std::string& field, std::size_t& out, std::size_t minimum)
    {
        const json* v = find(obj, key);
        if (v == nullptr)
            return;
        if (!v->is_number_integer())
        {
            fail(field, "must be an integer");
            return;
        }
        const auto value = v->get<std::int64_t>();
        if (value < static_cast<std::int64_t>(minimum))
        {
            fail(field, "must be >= " + std::to_string(minimum));
            return;
        }
        out = static_cast<std::size_t>(value);
    }

    void boolean(const json& obj, const char* key, const std::string& field, bool& out)
    {
        const json* v = find(obj, key);
        if (v == nullptr)
            return;
        if (!v->is_boolean())
        {
            fail(field, "must be true or false");
            return;
        }
        out = v->get<bool>();
    }

    std::optional<std::string> string(const json& obj, const char* key, const std::string& field)
    {
        const json* v = find(obj, key);
        if (v == nullptr)
            return std::nullopt;
        if (!v->is_string())
        {
            fail(field, "must be a string");
            return std::nullopt;
        }
        return v->get<std::string>();
    }
};

void read_topology(Reader& r, const json& node, Topology& topo)
{
    if (!node.is_object())
    {
        r.fail("topology", "must be an object");
        return;
    }
    r.reject_unknown(node, "topology.",
                     {"cell_radius_m", "num_users", "num_surfaces", "elements_per_surface", "ris_distance_m",
                      "carrier_freq_ghz", "user_positions"});
    r.number(node, "cell_radius_m", "topology.cell_radius_m", topo.cell_radius_m);
    r.number(node, "ris_distance_m", "topology.ris_distance_m", topo.ris_distance_m);
    r.number(node, "carrier_freq_ghz", "topology.carrier_freq_ghz", topo.carrier_freq_ghz);
    r.count(node, "num_users", "topology.num_users", topo.num_users, 1);

    std::optional<std::size_t> surfaces;
    if (r.find(node, "num_surfaces"))
    {
        std::size_t s = 0;
        const auto before = r.issues.size();
        r.count(node, "num_surfaces", "topology.num_surfaces", s, 0);
        if (r.issues.size() == before)
            surfaces = s;
    }

    if (const json* e = r.find(node, "elements_per_surface"))
    {
        if (e->is_array())
        {
            topo.elements_per_surface.clear();
            for (const auto& item : *e)
            {
                if (!item.is_number_integer() || item.get<std::int64_t>() < 1)
                {
                    r.fail("topology.elements_per_surface", "entries must be integers >= 1");
                    break;
                }
                topo.elements_per_surface.push_back(item.get<std::size_t>());
            }
            if (surfaces && *surfaces != topo.elements_per_surface.size())
                r.fail("topology.num_surfaces", "differs from the length of elements_per_surface");
        }
        else if (e->is_number_integer())
        {
            if (e->get<std::int64_t>() < 1)
                r.fail("topology.elements_per_surface", "must be >= 1");
            else
                topo.elements_per_surface.assign(surfaces.value_or(topo.elements_per_surface.size()),
                                                 e->get<std::size_t>());
        }
        else
        {
            r.fail("topology.elements_per_surface", "must be an integer or a list of integers");
        }
    }
    else if (surfaces)
    {
        const std::size_t per = topo.elements_per_surface.empty() ? 16 : topo.elements_per_surface.front();
        topo.elements_per_surface.assign(*surfaces, per);
    }

    if (const json* p = r.find(node, "user_positions"))
    {
        std::vector<Point2> users;
        bool ok = p->is_array();
        if (ok)
            for (const auto& item : *p)
            {
                if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number())
                {
                    ok = false;
                    break;
                }
                users.push_back({item[0].get<double>(), item[1].get<double>()});
            }
        if (!ok)
            r.fail("topology.user_positions", "must be a list of [x, y] pairs in meters");
        else
            topo.user_positions = std::move(users);
    }
}

std::optional<NakagamiParams> read_law(Reader& r, const json& node, const std::string& field)
{
    if (!node.is_object())
    {
        r.fail(field, "must be an object with m and omega (or omega_db)");
        return std::nullopt;
    }
    r.reject_unknown(node, field + ".", {"m", "omega", "omega_db"});
    NakagamiParams law{-1.0, -1.0};
    r.number(node, "m", field + ".m", law.m, true);
    if (r.find(node, "omega"))
        r.number(node, "omega", field + ".omega", law.omega);
    else if (r.find(node, "omega_db"))
    {
        double db = 0.0;
        r.number(node, "omega_db", field + ".omega_db", db);
        law.omega = db_to_linear(db);
    }
    else
        r.fail(field, "omega or omega_db required");
    return law;
}

void read_links(Reader& r, const json& node, SystemConfig& cfg)
{
    if (!node.is_object())
    {
        r.fail("links", "must be an object");
        return;
    }
    r.reject_unknown(node, "links.", {"direct", "ris_bs", "user_ris"});
    LinkStatistics links;
    links.elements_per_surface = cfg.topology.elements_per_surface;

    auto read_list = [&](const char* key, std::vector<NakagamiParams>& out) {
        const json* list = r.find(node, key);
        const std::string field = std::string("links.") + key;
        if (list == nullptr || !list->is_array())
        {
            r.fail(field, "list required");
            return;
        }
        for (std::size_t i = 0; i < list->size(); ++i)
            if (auto law = read_law(r, (*list)[i], field + "[" + std::to_string(i) + "]"))
                out.push_back(*law);
    };
    read_list("direct", links.direct);
    read_list("ris_bs", links.ris_bs);

    const json* table = r.find(node, "user_ris");
    if (table == nullptr || !table->is_array())
        r.fail("links.user_ris", "list of per-surface user lists required");
    else
        for (std::size_t s = 0; s < table->size(); ++s)
        {
            const auto& row = (*table)[s];
            const std::string field = "links.user_ris[" + std::to_string(s) + "]";
            if (!row.is_array())
            {
                r.fail(field, "must be a list with one entry per user");
                continue;
            }
            for (std::size_t k = 0; k < row.size(); ++k)
                if (auto law = read_law(r, row[k], field + "[" + std::to_string(k) + "]"))
                    links.user_ris.push_back(*law);
        }
    cfg.links = std::move(links);
}

void read_sweep(Reader& r, const json& node, std::vector<double>& out)
{
    out.clear();
    if (node.is_array())
    {
        for (const auto& v : node)
        {
            if (!v.is_number())
            {
                r.fail("gain_sweep_db", "entries must be numbers");
                return;
            }
            out.push_back(v.get<double>());
        }
        return;
    }
    if (node.is_object())
    {
        r.reject_unknown(node, "gain_sweep_db.", {"start", "stop", "step"});
        double start = 0.0, stop = 30.0, step = 3.0;
        r.number(node, "start", "gain_sweep_db.start", start);
        r.number(node, "stop", "gain_sweep_db.stop", stop);
        r.number(node, "step", "gain_sweep_db.step", step);
        if (!(step > 0.0) || stop < start)
        {
            r.fail("gain_sweep_db", "need step > 0 and stop >= start");
            return;
        }
        const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (std::size_t i = 0; i < n; ++i)
            out.push_back(start + static_cast<double>(i) * step);
        return;
    }
    r.fail("gain_sweep_db", "must be a list or {start, stop, step}");
}

json law_to_json(const NakagamiParams& p)
{
    return json{{"m", p.m}, {"omega", p.omega}};
}

} // namespace

SystemConfig config_from_json(const json& doc)
{
    Reader r;
    SystemConfig cfg;
    cfg.topology.elements_per_surface = {16, 16};
    cfg.gain_sweep_db.clear();
    for (int g = 0; g <= 30; g += 3)
        cfg.gain_sweep_db.push_back(g);

    if (!doc.is_object())
        throw ConfigError("config: top level must be an object");

    r.reject_unknown(doc, "",
                     {"topology", "pathloss", "m_smallscale", "fading", "links", "pu_min_w", "gain_sweep_db",
                      "bandwidth_hz", "noise_density_dbm_hz", "noise_figure_db", "r0", "schemes", "trials", "seed",
                      "correlation", "user_placement", "analytical", "oracle_samples", "jr"});

    if (const json* t = r.find(doc, "topology"))
        read_topology(r, *t, cfg.topology);

    if (const json* p = r.find(doc, "pathloss"))
    {
        r.reject_unknown(*p, "pathloss.", {"ris_bs_l0_db", "ris_bs_exponent"});
        r.number(*p, "ris_bs_l0_db", "pathloss.ris_bs_l0_db", cfg.pathloss.ris_bs_l0_db);
        r.number(*p, "ris_bs_exponent", "pathloss.ris_bs_exponent", cfg.pathloss.ris_bs_exponent);
    }

    double m_all = 2.5;
    r.number(doc, "m_smallscale", "m_smallscale", m_all);
    cfg.fading = {m_all, m_all, m_all};
    if (const json* f = r.find(doc, "fading"))
    {
        r.reject_unknown(*f, "fading.", {"m_direct", "m_user_ris", "m_ris_bs"});
        r.number(*f, "m_direct", "fading.m_direct", cfg.fading.direct);
        r.number(*f, "m_user_ris", "fading.m_user_ris", cfg.fading.user_ris);
        r.number(*f, "m_ris_bs", "fading.m_ris_bs", cfg.fading.ris_bs);
    }

    if (const json* l = r.find(doc, "links"))
        read_links(r, *l, cfg);

    r.number(doc, "pu_min_w", "pu_min_w", cfg.pu_min_w);
    if (const json* s = r.find(doc, "gain_sweep_db"))
        read_sweep(r, *s, cfg.gain_sweep_db);
    r.number(doc, "bandwidth_hz", "bandwidth_hz", cfg.bandwidth_hz);
    r.number(doc, "noise_density_dbm_hz", "noise_density_dbm_hz", cfg.noise_density_dbm_hz);
    r.number(doc, "noise_figure_db", "noise_figure_db", cfg.noise_figure_db);
    r.number(doc, "r0", "r0", cfg.r0, true);

    if (const json* s = r.find(doc, "schemes"))
    {
        if (!s->is_array())
            r.fail("schemes", "must be a list of scheme names");
        else
            for (const auto& item : *s)
            {
                const auto name = item.is_string() ? item.get<std::string>() : item.dump();
                if (auto scheme = parse_scheme(name))
                    cfg.schemes.push_back(*scheme);
                else
                    r.fail("schemes", "unknown scheme \"" + name + "\" (expected IR, JR, OR, OMUR, OMUR-RP, OppBF, SU)");
            }
    }
    else
        r.fail("schemes", "schemes required");

    r.count(doc, "trials", "trials", cfg.trials, 1);
    if (const json* s = r.find(doc, "seed"))
    {
        if (!s->is_number_unsigned())
            r.fail("seed", "must be a nonnegative 64-bit integer");
        else
            cfg.seed = s->get<std::uint64_t>();
    }
    if (auto c = r.string(doc, "correlation", "correlation"))
    {
        if (auto parsed = parse_correlation(*c))
            cfg.correlation = *parsed;
        else
            r.fail("correlation", "expected independent or per-surface-full");
    }
    if (auto p = r.string(doc, "user_placement", "user_placement"))
    {
        if (auto parsed = parse_user_placement(*p))
            cfg.user_placement = *parsed;
        else
            r.fail("user_placement", "expected redraw-per-trial or fixed-per-sweep");
    }
    r.boolean(doc, "analytical", "analytical", cfg.analytical);
    r.count(doc, "oracle_samples", "oracle_samples", cfg.oracle_samples, 10000);

    if (const json* j = r.find(doc, "jr"))
    {
        r.reject_unknown(*j, "jr.", {"max_sweeps", "rel_tolerance", "init"});
        r.count(*j, "max_sweeps", "jr.max_sweeps", cfg.jr.max_sweeps, 1);
        r.number(*j, "rel_tolerance", "jr.rel_tolerance", cfg.jr.rel_tolerance);
        if (auto init = r.string(*j, "init", "jr.init"))
        {
            if (auto parsed = parse_jr_init(*init))
                cfg.jr.init = *parsed;
            else
                r.fail("jr.init", "expected omur_anchor, zero or random");
        }
    }

    if (!r.issues.empty())
        throw ConfigError(std::move(r.issues));
    cfg.validate();
    return cfg;
}

json config_to_json(const SystemConfig& config)
{
    json topo{{"cell_radius_m", config.topology.cell_radius_m},
              {"num_users", config.topology.num_users},
              {"elements_per_surface", config.topology.elements_per_surface},
              {"ris_distance_m", config.topology.ris_distance_m},
              {"carrier_freq_ghz", config.topology.carrier_freq_ghz}};
    if (config.topology.user_positions)
    {
        json users = json::array();
        for (const auto& p : *config.topology.user_positions)
            users.push_back({p.x, p.y});
        topo["user_positions"] = users;
    }

    json schemes = json::array();
    for (auto s : config.schemes)
        schemes.push_back(std::string(to_string(s)));

    json doc{{"topology", topo},
             {"pathloss",
              {{"ris_bs_l0_db", config.pathloss.ris_bs_l0_db}, {"ris_bs_exponent", config.pathloss.ris_bs_exponent}}},
             {"fading",
              {{"m_direct", config.fading.direct},
               {"m_user_ris", config.fading.user_ris},
               {"m_ris_bs", config.fading.ris_bs}}},
             {"pu_min_w", config.pu_min_w},
             {"gain_sweep_db", config.gain_sweep_db},
             {"bandwidth_hz", config.bandwidth_hz},
             {"noise_density_dbm_hz", config.noise_density_dbm_hz},
             {"noise_figure_db", config.noise_figure_db},
             {"r0", config.r0},
             {"schemes", schemes},
             {"trials", config.trials},
             {"seed", config.seed},
             {"correlation", std::string(to_string(config.correlation))},
             {"user_placement", std::string(to_string(config.user_placement))},
             {"analytical", config.analytical},
             {"oracle_samples", config.oracle_samples},
             {"jr",
              {{"max_sweeps", config.jr.max_sweeps},
               {"rel_tolerance", config.jr.rel_tolerance},
               {"init", std::string(to_string(config.jr.init))}}}};

    if (config.links)
    {
        const auto& l = *config.links;
        json direct = json::array(), ris_bs = json::array(), user_ris = json::array();
        for (const auto& p : l.direct)
            direct.push_back(law_to_json(p));
        for (const auto& p : l.ris_bs)
            ris_bs.push_back(law_to_json(p));
        for (std::size_t s = 0; s < l.num_surfaces(); ++s)
        {
            json row = json::array();
            for (std::size_t k = 0; k < l.num_users(); ++k)
                row.push_back(law_to_json(l.user_ris_at(s, k)));
            user_ris.push_back(row);
        }
        doc["links"] = {{"direct", direct}, {"ris_bs", ris_bs}, {"user_ris", user_ris}};
    }
    return doc;
}

SystemConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open " + path.string());
    json doc;
    try
    {
        doc = json::parse(in);
    }
    catch (const json::parse_error& e)
    {
        throw ConfigError(std::string("config: not valid JSON (") + e.what() + ")");
    }
    return config_from_json(doc);
}

std::string canonical_config_text(const SystemConfig& config)
{
    return config_to_json(config).dump(2) + "\n";
}

std::string sha256_hex(const std::string& data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256: digest failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i)
    {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

std::string config_hash(const SystemConfig& config)
{
    return sha256_hex(canonical_config_text(config));
}

} // namespace risup
