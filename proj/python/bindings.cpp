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
#include "risup/channel.hpp"
#include "risup/cli.hpp"
#include "risup/config.hpp"
#include "risup/errors.hpp"
#include "risup/optimize.hpp"
#include "risup/schemes.hpp"
#include "risup/simkit.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace risup;

namespace
{

SystemConfig parse(const std::string& text)
{
    return config_from_json(nlohmann::json::parse(text));
}

Scheme scheme_named(const std::string& name)
{
    if (auto s = parse_scheme(name))
        return *s;
    throw py::value_error("unknown scheme " + name);
}

py::dict outcome_dict(const SchemeOutcome& o)
{
    py::dict d;
    d["scheme"] = std::string(to_string(o.scheme));
    d["gamma"] = o.gamma;
    d["rate"] = o.rate;
    d["selected_user"] = o.selected_user ? py::cast(*o.selected_user) : py::none();
    d["phases"] = o.phases ? py::cast(o.phases->angles()) : py::none();
    return d;
}

ChannelRealization make_channel(std::vector<cplx> f, std::vector<std::vector<cplx>> g_rows, std::vector<cplx> d)
{
    // g given as one row per user, M entries each
    ChannelRealization real(f.size(), d.size());
    if (g_rows.size() != d.size())
        throw py::value_error("g needs one row per user");
    real.f = std::move(f);
    real.d = std::move(d);
    for (std::size_t k = 0; k < g_rows.size(); ++k)
    {
        if (g_rows[k].size() != real.num_elements)
            throw py::value_error("each row of g needs one entry per element");
        for (std::size_t m = 0; m < real.num_elements; ++m)
            real.g_at(m, k) = g_rows[k][m];
    }
    return real;
}

} // namespace

PYBIND11_MODULE(_risup, m)
{
    m.doc() = "Multi-RIS multi-user uplink simulation core";
    m.attr("__version__") = tool_version;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def("umi_pathloss_db", &umi_pathloss_db, py::arg("fc_ghz"), py::arg("dist_m"));
    m.def("los_pathloss_db", &los_pathloss_db, py::arg("dist_m"), py::arg("l0_db"), py::arg("alpha"));
    m.def("noise_power_watts", &noise_power_watts, py::arg("bandwidth_hz"), py::arg("density_dbm_hz"),
          py::arg("noise_figure_db"));

    py::class_<ChannelRealization>(m, "Channel")
        .def(py::init(&make_channel), py::arg("f"), py::arg("g"), py::arg("d"))
        .def_readonly("num_elements", &ChannelRealization::num_elements)
        .def_readonly("num_users", &ChannelRealization::num_users)
        .def_readonly("f", &ChannelRealization::f)
        .def_readonly("d", &ChannelRealization::d)
        .def_property_readonly("g", [](const ChannelRealization& r) {
            std::vector<std::vector<cplx>> rows(r.num_users);
            for (std::size_t k = 0; k < r.num_users; ++k)
                rows[k].assign(r.user_column(k).begin(), r.user_column(k).end());
            return rows;
        });

    m.def(
        "draw_channel",
        [](const std::string& config, std::size_t point, std::size_t trial, std::uint64_t stream) {
            const auto cfg = parse(config);
            auto rng = RandomStream::derive(cfg.seed, {point, trial, 1000 + stream});
            return realize(trial_link_statistics(cfg, point, trial), cfg.correlation, rng);
        },
        py::arg("config"), py::arg("point") = 0, py::arg("trial") = 0, py::arg("stream") = 0,
        "Channel drawn under a configuration's link laws (separate streams from the sweep).");

    m.def(
        "effective_channel",
        [](const ChannelRealization& r, const std::vector<double>& phases, std::size_t user) {
            return effective_channel(r, PhaseConfig(phases), user);
        },
        py::arg("channel"), py::arg("phases"), py::arg("user"));
    m.def("coherent_gain", &coherent_gain, py::arg("channel"), py::arg("user"));
    m.def("gain_ideal", &gain_ideal, py::arg("channel"));
    m.def(
        "anchor_phases", [](const ChannelRealization& r, std::size_t user) { return anchor_phases(r, user).angles(); },
        py::arg("channel"), py::arg("user"));

    m.def(
        "run_scheme",
        [](const ChannelRealization& r, const std::string& name, double snr, std::uint64_t seed) {
            auto rng = RandomStream(seed);
            switch (scheme_named(name))
            {
            case Scheme::IR:
                return outcome_dict(run_ir(r, snr));
            case Scheme::SU:
                return outcome_dict(run_su(r, snr));
            case Scheme::OR:
                return outcome_dict(run_or(r, snr));
            case Scheme::OMUR:
                return outcome_dict(run_omur(r, snr));
            case Scheme::OMUR_RP:
                return outcome_dict(run_omur_rp(r, rng, snr));
            case Scheme::OppBF:
                return outcome_dict(run_oppbf(r, rng, snr));
            case Scheme::JR:
                return outcome_dict(run_jr(r, JrSolverConfig{}, snr, &rng));
            }
            throw std::logic_error("unhandled scheme");
        },
        py::arg("channel"), py::arg("scheme"), py::arg("snr") = 1.0, py::arg("seed") = 0);

    m.def(
        "jr_optimize",
        [](const ChannelRealization& r, std::size_t max_sweeps, double rel_tolerance, const std::string& init,
           std::uint64_t seed) {
            JrSolverConfig cfg;
            cfg.max_sweeps = max_sweeps;
            cfg.rel_tolerance = rel_tolerance;
            const auto parsed = parse_jr_init(init);
            if (!parsed)
                throw py::value_error("init must be omur_anchor, zero or random");
            cfg.init = *parsed;
            RandomStream rng(seed);
            const auto res = jr_optimize(r, cfg, &rng);
            py::dict d;
            d["phases"] = res.phases.angles();
            d["objective"] = res.objective;
            d["sweeps"] = res.sweeps;
            d["trace"] = res.trace;
            return d;
        },
        py::arg("channel"), py::arg("max_sweeps") = 200, py::arg("rel_tolerance") = 1e-8,
        py::arg("init") = "omur_anchor", py::arg("seed") = 0);

    py::class_<GammaFit>(m, "GammaFit")
        .def_static("from_moments", [](double mu1, double mu2) { return GammaFit::from_moments({mu1, mu2}); })
        .def_static("from_shape_rate", &GammaFit::from_shape_rate)
        .def_readonly("alpha", &GammaFit::alpha)
        .def_readonly("beta", &GammaFit::beta)
        .def_readonly("mu1", &GammaFit::mu1)
        .def_readonly("mu2", &GammaFit::mu2)
        .def("mean", &GammaFit::mean)
        .def("variance", &GammaFit::variance)
        .def("__repr__", [](const GammaFit& f) {
            return "GammaFit(alpha=" + format_double(f.alpha) + ", beta=" + format_double(f.beta) + ")";
        });

    m.def(
        "fit_users",
        [](const std::string& config) {
            auto cfg = parse(config);
            if (!cfg.links && !cfg.topology.user_positions)
                cfg.user_placement = UserPlacement::fixed_per_sweep;
            return fit_users(*fixed_link_statistics(cfg));
        },
        py::arg("config"), "Per-user Gamma fits for the pinned (or seed-drawn) placement.");
    m.def("cdf_ak", &cdf_ak, py::arg("fit"), py::arg("x"));
    m.def("outage_su", &outage_su, py::arg("fit"), py::arg("r0"), py::arg("snr"));
    m.def(
        "outage_or", [](const std::vector<GammaFit>& fits, double r0, double snr) { return outage_or(fits, r0, snr); },
        py::arg("fits"), py::arg("r0"), py::arg("snr"));
    m.def("gen_gamma_pdf", &gen_gamma_pdf, py::arg("fit"), py::arg("x"));
    m.def(
        "outage_ir_upper_bound",
        [](const std::vector<GammaFit>& fits, double r0, double snr, std::size_t samples, std::uint64_t seed) {
            RandomStream rng(seed);
            const auto e = outage_ir_upper_bound(fits, r0, snr, samples, rng);
            return py::make_tuple(e.probability, e.std_error);
        },
        py::arg("fits"), py::arg("r0"), py::arg("snr"), py::arg("samples") = 100000, py::arg("seed") = 0);

    m.def(
        "canonical_config", [](const std::string& config) { return canonical_config_text(parse(config)); },
        py::arg("config"));
    m.def(
        "config_hash", [](const std::string& config) { return config_hash(parse(config)); }, py::arg("config"));

    m.def(
        "run_sweep",
        [](const std::string& config, unsigned threads) {
            const auto cfg = parse(config);
            std::vector<OutageCurve> curves;
            {
                py::gil_scoped_release release;
                curves = run_sweep(cfg, threads);
            }
            py::list out;
            for (const auto& c : curves)
            {
                py::list points;
                for (std::size_t i = 0; i < c.points.size(); ++i)
                {
                    const auto& p = c.points[i];
                    py::dict row;
                    row["power_gain_db"] = p.power_gain_db;
                    row["op_estimate"] = p.op_estimate;
                    row["ci_halfwidth"] = p.ci_halfwidth;
                    row["trials_used"] = p.trials_used;
                    row["outages"] = p.outages;
                    row["censored"] = p.censored;
                    row["op_analytical"] = c.analytical ? py::cast((*c.analytical)[i].op_value) : py::none();
                    points.append(row);
                }
                py::dict curve;
                curve["scheme"] = std::string(to_string(c.scheme));
                curve["points"] = points;
                out.append(curve);
            }
            return out;
        },
        py::arg("config"), py::arg("threads") = 0);
}
