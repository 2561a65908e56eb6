#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "risflow/channel.hpp"
#include "risflow/config.hpp"
#include "risflow/experiment.hpp"
#include "risflow/plot.hpp"
#include "risflow/results.hpp"
#include "risflow/routing.hpp"

namespace py = pybind11;
using namespace risflow;

namespace {

py::dict interval_dict(const Interval& i) {
    py::dict d;
    d["mean"] = i.mean;
    d["half_width"] = i.half_width;
    return d;
}

py::list sweep_rows(const RunResult& r) {
    py::list rows;
    for (const auto& sp : r.sweep) {
        py::dict row;
        row["d_count"] = sp.d_count;
        row["pddt"] = sp.pddt.lambdas;
        row["sddt"] = sp.sddt.lambdas;
        row["pddt_interval"] = interval_dict(sp.pddt.interval);
        row["sddt_interval"] = interval_dict(sp.sddt.interval);
        row["gains"] = sp.gains;
        row["mean_gain"] = sp.mean_gain;
        rows.append(row);
    }
    return rows;
}

py::list epoch_rows(const RunResult& r) {
    py::list rows;
    for (const auto& e : r.epochs) {
        py::dict row;
        row["epoch"] = e.index;
        row["minutes"] = e.minutes;
        row["lambda_pddt"] = e.lambda_pddt;
        row["lambda_sddt"] = e.lambda_sddt;
        row["gain"] = e.gain;
        rows.append(row);
    }
    return rows;
}

}  // namespace

PYBIND11_MODULE(_risflow, m) {
    m.doc() = "RIS-assisted THz downlink load balancing";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<UnroutableDemandError>(m, "UnroutableDemandError", PyExc_RuntimeError);
    py::register_exception<SolverFailure>(m, "SolverFailure", PyExc_RuntimeError);

    py::class_<ChannelParams>(m, "ChannelParams")
        .def(py::init<>())
        .def_readwrite("bandwidth_hz", &ChannelParams::bandwidth_w)
        .def_readwrite("freq_hz", &ChannelParams::freq_f)
        .def_readwrite("k_abs_per_m", &ChannelParams::k_abs)
        .def_readwrite("temp_k", &ChannelParams::temp_t0)
        .def_readwrite("p_bs_w", &ChannelParams::p_bs)
        .def_readwrite("p_ris_w", &ChannelParams::p_ris)
        .def_readwrite("n_elements", &ChannelParams::n_elements)
        .def_readwrite("boltzmann_j_per_k", &ChannelParams::boltzmann_kb)
        .def_readwrite("light_speed_m_per_s", &ChannelParams::light_c);

    m.def("absorption_gain", &absorption_gain, py::arg("d"), py::arg("params") = ChannelParams{});
    m.def("channel_gain", &channel_gain, py::arg("d"), py::arg("params") = ChannelParams{});
    m.def("thermal_noise", &thermal_noise, py::arg("params") = ChannelParams{});

    py::class_<Topology>(m, "Topology")
        .def_property_readonly("nodes",
                               [](const Topology& t) {
                                   py::list out;
                                   for (const auto& n : t.nodes())
                                       out.append(py::make_tuple(n.id, std::string(to_string(n.kind)), n.position.x,
                                                                 n.position.y));
                                   return out;
                               })
        .def_property_readonly("links",
                               [](const Topology& t) {
                                   py::list out;
                                   for (const auto& l : t.links()) out.append(py::make_tuple(l.from, l.to, l.distance));
                                   return out;
                               })
        .def_property_readonly("range", &Topology::range)
        .def("dump", &dump_topology);

    m.def(
        "sample_topology",
        [](int bs, int ris, int vr, double range, std::uint64_t seed) {
            return sample_topology({bs, ris, vr}, range, seed);
        },
        py::arg("bs") = 7, py::arg("ris") = 7, py::arg("vr") = 7, py::arg("range") = kDefaultRange,
        py::arg("seed") = 1);

    m.def(
        "k_shortest_paths",
        [](const Topology& t, NodeId src, NodeId dst, std::size_t k) {
            std::vector<std::vector<NodeId>> out;
            for (const auto& p : k_shortest_paths(t, src, dst, k).paths) out.push_back(p.nodes);
            return out;
        },
        py::arg("topology"), py::arg("src"), py::arg("dst"), py::arg("k"));

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("range_m", &ExperimentConfig::range_m)
        .def_readwrite("fixed_topology", &ExperimentConfig::fixed_topology)
        .def_readwrite("channel", &ExperimentConfig::channel)
        .def_readwrite("chunk_gbit", &ExperimentConfig::chunk_gbit)
        .def_readwrite("queue_l_gbit", &ExperimentConfig::queue_l_gbit)
        .def_readwrite("tau_s", &ExperimentConfig::tau_s)
        .def_readwrite("k_pddt", &ExperimentConfig::k_pddt)
        .def_readwrite("k_sddt", &ExperimentConfig::k_sddt)
        .def_readwrite("d_sweep", &ExperimentConfig::d_sweep)
        .def_readwrite("replications", &ExperimentConfig::replications)
        .def_readwrite("ci_level", &ExperimentConfig::ci_level)
        .def_readwrite("nested_demands", &ExperimentConfig::nested_demands)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("threads", &ExperimentConfig::threads)
        .def_property(
            "epoch_minutes", [](const ExperimentConfig& c) { return c.dynamic.epoch_minutes; },
            [](ExperimentConfig& c, double v) { c.dynamic.epoch_minutes = v; })
        .def_property(
            "horizon_hours", [](const ExperimentConfig& c) { return c.dynamic.horizon_hours; },
            [](ExperimentConfig& c, double v) { c.dynamic.horizon_hours = v; })
        .def_property(
            "d_fixed", [](const ExperimentConfig& c) { return c.dynamic.d_fixed; },
            [](ExperimentConfig& c, int v) { c.dynamic.d_fixed = v; })
        .def("validate", &ExperimentConfig::validate)
        .def("to_ini", &format_config);

    m.def("parse_config", [](const std::string& text) { return parse_config_text(text); }, py::arg("text"));
    m.def("load_config", [](const std::filesystem::path& p) { return parse_config(p); }, py::arg("path"));

    m.def(
        "run_static",
        [](const ExperimentConfig& cfg) {
            RunResult r;
            {
                py::gil_scoped_release release;
                r = run_static(cfg);
            }
            return sweep_rows(r);
        },
        py::arg("config") = ExperimentConfig{});
    m.def(
        "run_dynamic",
        [](const ExperimentConfig& cfg) {
            RunResult r;
            {
                py::gil_scoped_release release;
                r = run_dynamic(cfg);
            }
            return epoch_rows(r);
        },
        py::arg("config") = ExperimentConfig{});
}
