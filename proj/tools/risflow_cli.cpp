// risflow: command-line front end for the RIS-assisted THz downlink simulator.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "risflow/channel.hpp"
#include "risflow/config.hpp"
#include "risflow/experiment.hpp"
#include "risflow/lp.hpp"
#include "risflow/plot.hpp"
#include "risflow/results.hpp"
#include "risflow/routing.hpp"

namespace fs = std::filesystem;
using namespace risflow;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitUnroutable = 3;
constexpr int kExitSolver = 4;
constexpr const char* kSeedEnv = "RISFLOW_SEED";

struct Common {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    int verbosity = 0;
};

ExperimentConfig load(const Common& c) {
    ExperimentConfig cfg = c.config_path.empty() ? ExperimentConfig{} : parse_config(c.config_path);
    if (c.seed) {
        cfg.seed = *c.seed;
    } else if (const char* env = std::getenv(kSeedEnv); env && *env) {
        try {
            std::size_t used = 0;
            cfg.seed = std::stoull(env, &used);
            if (env[used] != '\0') throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw ConfigError(kSeedEnv, 0, "not an unsigned integer: '" + std::string(env) + "'");
        }
    }
    return cfg;
}

TaggedModelHook lp_dumper(const std::string& dir) {
    if (dir.empty()) return {};
    preflight_output_dir(dir);
    return [dir](const std::string& tag, const LpModel& model) {
        write_text_file(fs::path(dir) / (tag + ".lp"), to_lp_format(model));
    };
}

void print_static(const RunResult& r) {
    std::printf("%8s %12s %12s %12s %12s %8s\n", "|D|", "pddt_mean", "pddt_ci", "sddt_mean", "sddt_ci", "gain");
    for (const auto& sp : r.sweep) {
        std::printf("%8d %12.6g %12.6g %12.6g %12.6g %8.4g\n", sp.d_count, sp.pddt.interval.mean,
                    sp.pddt.interval.half_width.value_or(0.0), sp.sddt.interval.mean,
                    sp.sddt.interval.half_width.value_or(0.0), sp.mean_gain.value_or(NAN));
    }
}

void print_dynamic(const RunResult& r) {
    std::printf("%6s %10s %12s %12s %8s\n", "epoch", "minutes", "pddt", "sddt", "gain");
    for (const auto& e : r.epochs) {
        std::printf("%6zu %10g %12.6g %12.6g %8.4g\n", e.index, e.minutes, e.lambda_pddt, e.lambda_sddt,
                    e.gain.value_or(NAN));
    }
}

int run_experiment(const Common& c, RunKind kind, const std::string& out, const std::string& dump_lp) {
    const auto cfg = load(c);
    preflight_output_dir(out);
    const auto hook = lp_dumper(dump_lp);
    const RunResult result = kind == RunKind::Static ? run_static(cfg, hook) : run_dynamic(cfg, hook);
    auto files = emit_results(result, kind, cfg, out);
    for (auto& f : plot_results(result, kind, out)) files.push_back(f);
    if (c.verbosity >= 0) kind == RunKind::Static ? print_static(result) : print_dynamic(result);
    if (c.verbosity > 0) {
        for (const auto& f : files) std::printf("wrote %s\n", f.string().c_str());
    }
    return 0;
}

int dump_paths(const Common& c, int k, std::optional<int> d) {
    const auto cfg = load(c);
    const auto inst = static_instance(cfg, d.value_or(cfg.dynamic.d_fixed), 0);
    const auto sets = build_candidate_sets(inst.topology, inst.demands, static_cast<std::size_t>(k));
    std::printf("demand_id,rank,hops,total_distance_m,node_sequence\n");
    for (const auto& set : sets.sets) {
        for (std::size_t r = 0; r < set.paths.size(); ++r) {
            const auto& p = set.paths[r];
            std::string seq;
            for (std::size_t i = 0; i < p.nodes.size(); ++i) seq += (i ? "-" : "") + std::to_string(p.nodes[i]);
            std::printf("%zu,%zu,%zu,%.6f,%s\n", set.demand_id, r, p.hop_count(), p.total_distance, seq.c_str());
        }
    }
    if (!sets.unroutable.empty()) {
        std::fprintf(stderr, "%zu demand(s) unroutable\n", sets.unroutable.size());
        return kExitUnroutable;
    }
    return 0;
}

int capacity_table(const Common& c, std::optional<int> k, std::optional<int> d) {
    const auto cfg = load(c);
    const auto inst = static_instance(cfg, d.value_or(cfg.dynamic.d_fixed), 0);
    const auto sets = build_candidate_sets(inst.topology, inst.demands, static_cast<std::size_t>(k.value_or(cfg.k_pddt)));
    const auto usage = derive_usage_sets(sets.sets, inst.topology, cfg.channel);
    std::printf("from,to,distance_m,z_count,capacity_gbps\n");
    for (std::size_t l = 0; l < inst.topology.links().size(); ++l) {
        const auto& link = inst.topology.link(l);
        if (inst.topology.node(link.from).kind != NodeKind::Ris) continue;
        std::printf("%zu,%zu,%.6f,%d,%s\n", link.from, link.to, link.distance, usage.z_count(l),
                    format_real(link_capacity(l, usage, inst.topology, cfg.channel) * 1e-9).c_str());
    }
    return 0;
}

void add_common(CLI::App* sub, Common& c, bool with_config = true) {
    if (with_config) sub->add_option("--config", c.config_path, "Experiment config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", c.seed, std::string("Master seed (default: $") + kSeedEnv + " or config)");
    sub->add_flag("-v,--verbose", c.verbosity, "More output");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS-assisted THz downlink load balancing simulator"};
    app.require_subcommand(1);

    Common common;
    std::string out_dir, dump_lp, in_csv;
    int k = 1;
    std::optional<int> k_opt, d_opt;

    auto* run_static_cmd = app.add_subcommand("run-static", "Sweep |D| with paired PDDT/SDDT replications");
    add_common(run_static_cmd, common);
    run_static_cmd->add_option("--out", out_dir, "Output directory")->required();
    run_static_cmd->add_option("--dump-lp", dump_lp, "Directory to write every LP model to");

    auto* run_dynamic_cmd = app.add_subcommand("run-dynamic", "Mobility run with one reconfiguration per epoch");
    add_common(run_dynamic_cmd, common);
    run_dynamic_cmd->add_option("--out", out_dir, "Output directory")->required();
    run_dynamic_cmd->add_option("--dump-lp", dump_lp, "Directory to write every LP model to");

    auto* topo_cmd = app.add_subcommand("dump-topology", "Print the canonical topology dump");
    add_common(topo_cmd, common);

    auto* paths_cmd = app.add_subcommand("dump-paths", "Print candidate paths of every demand");
    add_common(paths_cmd, common);
    paths_cmd->add_option("--k", k, "Paths per demand")->required()->check(CLI::PositiveNumber);
    paths_cmd->add_option("--d", d_opt, "Number of demands (default: dynamic d_fixed)")->check(CLI::PositiveNumber);

    auto* cap_cmd = app.add_subcommand("capacity-table", "Print the capacity of every RIS outgoing link");
    add_common(cap_cmd, common);
    cap_cmd->add_option("--k", k_opt, "Paths per demand (default: k_pddt)")->check(CLI::PositiveNumber);
    cap_cmd->add_option("--d", d_opt, "Number of demands (default: dynamic d_fixed)")->check(CLI::PositiveNumber);

    auto* plot_cmd = app.add_subcommand("plot", "Render SVG charts from a results CSV");
    plot_cmd->add_option("--in", in_csv, "CSV written by run-static or run-dynamic")->required();
    plot_cmd->add_option("--out", out_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*run_static_cmd) return run_experiment(common, RunKind::Static, out_dir, dump_lp);
        if (*run_dynamic_cmd) return run_experiment(common, RunKind::Dynamic, out_dir, dump_lp);
        if (*topo_cmd) {
            std::fputs(dump_topology(static_topology(load(common), 0)).c_str(), stdout);
            return 0;
        }
        if (*paths_cmd) return dump_paths(common, k, d_opt);
        if (*cap_cmd) return capacity_table(common, k_opt, d_opt);
        if (*plot_cmd) {
            for (const auto& f : plot_csv(in_csv, out_dir)) std::printf("wrote %s\n", f.string().c_str());
            return 0;
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const UnroutableDemandError& e) {
        std::fprintf(stderr, "unroutable demand: %s\n", e.what());
        return kExitUnroutable;
    } catch (const SolverFailure& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        const auto dump = fs::path(out_dir.empty() ? "." : out_dir) / "failed_instance.lp";
        try {
            write_text_file(dump, e.instance_dump());
            std::fprintf(stderr, "instance written to %s\n", dump.string().c_str());
        } catch (const std::exception&) {
            std::fputs(e.instance_dump().c_str(), stderr);
        }
        return kExitSolver;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
