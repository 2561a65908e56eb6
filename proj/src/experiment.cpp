#include "risflow/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

#include "risflow/rng.hpp"
#include "risflow/routing.hpp"

namespace risflow {

namespace {

constexpr std::uint64_t kTopologyStream = 1;
constexpr std::uint64_t kDemandStream = 2;
constexpr std::uint64_t kMobilityStream = 3;
constexpr std::uint64_t kEpochDemandStream = 4;
constexpr std::uint64_t kInitialLayoutStream = 5;
constexpr int kMaxRedraws = 100;

bool reachable(const Topology& topology, NodeId src, NodeId dst) {
    std::vector<bool> seen(topology.nodes().size(), false);
    std::deque<NodeId> queue{src};
    seen[src] = true;
    while (!queue.empty()) {
        const NodeId u = queue.front();
        queue.pop_front();
        if (u == dst) return true;
        for (LinkId l : topology.out_links(u)) {
            const NodeId v = topology.link(l).to;
            if (!seen[v]) {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    return false;
}

// Runs fn(i) for i in [0, n) on up to `threads` workers. The first exception
// thrown is rethrown after all workers have joined.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn fn) {
    std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::thread::hardware_concurrency();
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next = n;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

double mean_of(std::span<const double> v) {
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::optional<double> mean_gain(const std::vector<std::optional<double>>& gains) {
    std::vector<double> defined;
    for (const auto& g : gains) {
        if (g) defined.push_back(*g);
    }
    if (defined.empty()) return std::nullopt;
    return mean_of(defined);
}

}  // namespace

std::string_view to_string(Technique t) { return t == Technique::Pddt ? "pddt" : "sddt"; }

std::size_t DynamicConfig::epoch_count() const {
    return static_cast<std::size_t>(std::floor(horizon_hours * 60.0 / epoch_minutes + 1e-9));
}

void ExperimentConfig::validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
    if (counts.bs < 1 || counts.ris < 1 || counts.vr < 1) fail("node counts must be at least 1");
    if (!(range_m > 0.0)) fail("range_m must be positive");
    channel.validate();
    if (!(chunk_gbit > 0.0)) fail("chunk_gbit must be positive");
    if (!(queue_l_gbit > 0.0)) fail("queue_l_gbit must be positive");
    if (!(tau_s > 0.0)) fail("tau_s must be positive");
    if (k_pddt < 1 || k_sddt < 1) fail("k_pddt and k_sddt must be at least 1");
    if (d_sweep.empty()) fail("d_sweep must not be empty");
    for (int d : d_sweep) {
        if (d < 1) fail("d_sweep entries must be at least 1");
    }
    if (replications < 1) fail("replications must be at least 1");
    if (!(ci_level > 0.0 && ci_level < 1.0)) fail("ci_level must lie in (0, 1)");
    if (!(dynamic.epoch_minutes > 0.0)) fail("epoch_minutes must be positive");
    if (!(dynamic.horizon_hours >= 0.0)) fail("horizon_hours must be non-negative");
    if (dynamic.d_fixed < 1) fail("d_fixed must be at least 1");
    if (threads < 0) fail("threads must be non-negative");
}

std::vector<Demand> generate_demands(const Topology& topology, int count, double chunk_gbit, std::uint64_t seed) {
    const auto sources = topology.ids_of(NodeKind::BaseStation);
    const auto sinks = topology.ids_of(NodeKind::VrUser);
    if (sources.empty() || sinks.empty()) throw std::invalid_argument("topology needs a base station and a VR user");
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> pick_src(0, sources.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_dst(0, sinks.size() - 1);
    std::vector<Demand> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int i = 0; i < count; ++i) {
        Demand d;
        d.id = static_cast<std::size_t>(i);
        d.app = static_cast<std::size_t>(i);
        d.chunk_gbit = chunk_gbit;
        d.source = sources[pick_src(rng)];
        d.destination = sinks[pick_dst(rng)];
        int redraws = 0;
        while (!reachable(topology, d.source, d.destination)) {
            if (++redraws > kMaxRedraws) {
                throw UnroutableDemandError("demand " + std::to_string(i) + " from node " + std::to_string(d.source) +
                                                " reaches no VR user after " + std::to_string(kMaxRedraws) +
                                                " redraws",
                                            {d.id});
            }
            d.destination = sinks[pick_dst(rng)];
        }
        out.push_back(d);
    }
    return out;
}

Evaluation evaluate_once(const Topology& topology, std::span<const Demand> demands, int k,
                         const ExperimentConfig& config, const ModelHook& hook) {
    Evaluation ev;
    auto sets = build_candidate_sets(topology, demands, static_cast<std::size_t>(k));

    std::vector<Demand> kept;
    std::vector<CandidatePathSet> kept_sets;
    for (std::size_t i = 0; i < demands.size(); ++i) {
        if (sets.sets[i].paths.empty()) continue;
        kept.push_back(demands[i]);
        kept_sets.push_back(std::move(sets.sets[i]));
    }
    ev.excluded_demands = demands.size() - kept.size();
    if (kept.empty()) throw UnroutableDemandError("no demand is routable", sets.unroutable);

    const auto usage = derive_usage_sets(kept_sets, topology, config.channel);
    for (NodeId r : topology.ids_of(NodeKind::Ris)) {
        ev.ris_speed_gbps[r] = ris_speed(r, usage, topology, config.channel) * 1e-9;
    }
    const auto model = build_model(kept, kept_sets, ev.ris_speed_gbps, config.queue_l_gbit, config.tau_s);
    ev.variables = model.variable_count();
    ev.constraints = model.constraint_count();
    if (hook) hook(model);

    const auto sol = solve(model);
    ev.status = sol.status;
    ev.lambda = sol.lambda;
    if (sol.status == LpStatus::IterationLimit || sol.status == LpStatus::Infeasible) {
        throw SolverFailure(sol.message.empty() ? "solver failed" : sol.message, to_lp_format(model));
    }
    if (sol.status == LpStatus::Optimal) {
        ev.feasibility = check_feasibility(model, sol, 1e-6);
        if (!ev.feasibility.passed) {
            throw SolverFailure("optimum fails certification, max residual " +
                                    std::to_string(ev.feasibility.max_residual),
                                to_lp_format(model));
        }
    }
    return ev;
}

Interval confidence_interval(std::span<const double> samples, double level) {
    Interval out;
    out.mean = mean_of(samples);
    const std::size_t n = samples.size();
    if (n < 2) return out;
    double ss = 0.0;
    for (double x : samples) ss += (x - out.mean) * (x - out.mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    const boost::math::students_t dist(static_cast<double>(n - 1));
    const double t = boost::math::quantile(dist, 0.5 + level / 2.0);
    out.half_width = t * sd / std::sqrt(static_cast<double>(n));
    return out;
}

std::optional<double> throughput_gain(double lambda_pddt, double lambda_sddt) {
    if (!(lambda_sddt > 0.0)) return std::nullopt;
    return lambda_pddt / lambda_sddt;
}

Topology static_topology(const ExperimentConfig& config, int replication) {
    const auto rep = static_cast<std::uint64_t>(replication);
    return sample_topology(config.counts, config.range_m,
                           derive_seed(config.seed, {kTopologyStream, config.fixed_topology ? 0 : rep}));
}

Instance static_instance(const ExperimentConfig& config, int d_count, int replication) {
    const auto rep = static_cast<std::uint64_t>(replication);
    const std::uint64_t demand_key = config.nested_demands ? 0 : static_cast<std::uint64_t>(d_count);
    const std::uint64_t demand_seed = derive_seed(config.seed, {kDemandStream, demand_key, rep});
    Instance inst{static_topology(config, replication), {}};
    inst.demands = generate_demands(inst.topology, d_count, config.chunk_gbit, demand_seed);
    return inst;
}

RunResult run_static(const ExperimentConfig& config, const TaggedModelHook& hook) {
    config.validate();
    const std::size_t points = config.d_sweep.size();
    const std::size_t reps = static_cast<std::size_t>(config.replications);

    RunResult result;
    result.sweep.resize(points);
    for (std::size_t p = 0; p < points; ++p) {
        auto& sp = result.sweep[p];
        sp.d_count = config.d_sweep[p];
        sp.pddt.lambdas.assign(reps, 0.0);
        sp.sddt.lambdas.assign(reps, 0.0);
        sp.gains.assign(reps, std::nullopt);
    }

    parallel_for(points * reps, config.threads, [&](std::size_t task) {
        const std::size_t p = task / reps;
        const std::size_t r = task % reps;
        const int d = config.d_sweep[p];
        const auto inst = static_instance(config, d, static_cast<int>(r));
        auto solve_with = [&](Technique t, int k) {
            ModelHook h;
            if (hook) {
                const std::string tag =
                    "d" + std::to_string(d) + "_" + std::string(to_string(t)) + "_r" + std::to_string(r);
                h = [&hook, tag](const LpModel& m) { hook(tag, m); };
            }
            return evaluate_once(inst.topology, inst.demands, k, config, h).lambda;
        };
        auto& sp = result.sweep[p];
        sp.pddt.lambdas[r] = solve_with(Technique::Pddt, config.k_pddt);
        sp.sddt.lambdas[r] = solve_with(Technique::Sddt, config.k_sddt);
        sp.gains[r] = throughput_gain(sp.pddt.lambdas[r], sp.sddt.lambdas[r]);
    });

    for (auto& sp : result.sweep) {
        sp.pddt.interval = confidence_interval(sp.pddt.lambdas, config.ci_level);
        sp.sddt.interval = confidence_interval(sp.sddt.lambdas, config.ci_level);
        sp.mean_gain = mean_gain(sp.gains);
    }
    return result;
}

RunResult run_dynamic(const ExperimentConfig& config, const TaggedModelHook& hook) {
    config.validate();
    const std::size_t epochs = config.dynamic.epoch_count();
    const Topology initial =
        sample_topology(config.counts, config.range_m, derive_seed(config.seed, {kInitialLayoutStream}));

    RunResult result;
    result.epochs.resize(epochs);
    // Users move independently of the previous epoch's positions, so epochs
    // are independent tasks.
    parallel_for(epochs, config.threads, [&](std::size_t e) {
        const Topology topo = move_users(initial, derive_seed(config.seed, {kMobilityStream, e}));
        const auto demands = generate_demands(topo, config.dynamic.d_fixed, config.chunk_gbit,
                                              derive_seed(config.seed, {kEpochDemandStream, e}));
        auto solve_with = [&](Technique t, int k) {
            ModelHook h;
            if (hook) {
                const std::string tag = "epoch" + std::to_string(e) + "_" + std::string(to_string(t));
                h = [&hook, tag](const LpModel& m) { hook(tag, m); };
            }
            return evaluate_once(topo, demands, k, config, h).lambda;
        };
        auto& rec = result.epochs[e];
        rec.index = e;
        rec.minutes = static_cast<double>(e) * config.dynamic.epoch_minutes;
        rec.lambda_pddt = solve_with(Technique::Pddt, config.k_pddt);
        rec.lambda_sddt = solve_with(Technique::Sddt, config.k_sddt);
        rec.gain = throughput_gain(rec.lambda_pddt, rec.lambda_sddt);
    });
    return result;
}

}  // namespace risflow
