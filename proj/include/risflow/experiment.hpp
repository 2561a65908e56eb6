#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "risflow/channel.hpp"
#include "risflow/demand.hpp"
#include "risflow/lp.hpp"
#include "risflow/topology.hpp"

namespace risflow {

enum class Technique { Pddt, Sddt };

std::string_view to_string(Technique t);

struct DynamicConfig {
    double epoch_minutes = 30.0;
    double horizon_hours = 4.0;
    int d_fixed = 300;

    std::size_t epoch_count() const;
};

struct ExperimentConfig {
    NodeCounts counts;
    double range_m = kDefaultRange;
    bool fixed_topology = false;  // reuse replication 0's layout for every replication

    ChannelParams channel;

    double chunk_gbit = 0.5;
    double queue_l_gbit = 10.0;
    double tau_s = 0.5;
    int k_pddt = 5;
    int k_sddt = 1;

    std::vector<int> d_sweep{20, 50, 100, 200, 300, 500};
    int replications = 10;
    double ci_level = 0.95;
    bool nested_demands = false;  // demand set at |D|=n is a prefix of the one at |D|=m > n

    DynamicConfig dynamic;

    std::uint64_t seed = 1;
    int threads = 0;  // 0 = hardware concurrency; never changes results

    /// Throws std::invalid_argument naming the first bad field.
    void validate() const;
};

class SolverFailure : public std::runtime_error {
public:
    SolverFailure(const std::string& what, std::string instance_dump)
        : std::runtime_error(what), instance_dump_(std::move(instance_dump)) {}
    const std::string& instance_dump() const { return instance_dump_; }

private:
    std::string instance_dump_;
};

/// Uniform source BS and destination VR per demand, drawn in order (source
/// then destination) so a shorter list is always a prefix of a longer one
/// under the same seed. An unreachable destination is redrawn up to 100
/// times before UnroutableDemandError is thrown.
std::vector<Demand> generate_demands(const Topology& topology, int count, double chunk_gbit, std::uint64_t seed);

struct Evaluation {
    double lambda = 0.0;
    LpStatus status = LpStatus::Optimal;
    std::size_t excluded_demands = 0;
    std::size_t variables = 0;
    std::size_t constraints = 0;
    std::map<NodeId, double> ris_speed_gbps;
    FeasibilityReport feasibility;
};

/// Called with every model right before it is solved (e.g. to dump it).
using ModelHook = std::function<void(const LpModel&)>;

/// candidate sets (k) -> usage sets -> RIS speeds -> LP -> lambda.
/// Demands without a path are excluded and counted. Throws SolverFailure when
/// the simplex does not terminate or its optimum fails certification.
Evaluation evaluate_once(const Topology& topology, std::span<const Demand> demands, int k,
                         const ExperimentConfig& config, const ModelHook& hook = {});

struct Interval {
    double mean = 0.0;
    std::optional<double> half_width;
};

/// Student-t interval on the sample mean with n-1 degrees of freedom.
Interval confidence_interval(std::span<const double> samples, double level);

/// lambda_pddt / lambda_sddt; nullopt when lambda_sddt is not positive.
std::optional<double> throughput_gain(double lambda_pddt, double lambda_sddt);

struct TechniqueSeries {
    std::vector<double> lambdas;  // one per replication
    Interval interval;
};

struct SweepPoint {
    int d_count = 0;
    TechniqueSeries pddt;
    TechniqueSeries sddt;
    std::vector<std::optional<double>> gains;  // paired per replication
    std::optional<double> mean_gain;
};

struct EpochRecord {
    std::size_t index = 0;
    double minutes = 0.0;
    double lambda_pddt = 0.0;
    double lambda_sddt = 0.0;
    std::optional<double> gain;
};

struct RunResult {
    std::vector<SweepPoint> sweep;
    std::vector<EpochRecord> epochs;
};

/// Hook receives (tag, model) where tag identifies the solve, e.g. "d100_pddt_r3".
using TaggedModelHook = std::function<void(const std::string&, const LpModel&)>;

/// Seed layout (all via derive_seed from config.seed):
///   topology of replication r:   {1, r}   (r = 0 when fixed_topology)
///   demands of (|D|, r):         {2, |D|, r}, or {2, 0, r} in nested mode
/// PDDT and SDDT of the same (|D|, r) share topology and demands.
RunResult run_static(const ExperimentConfig& config, const TaggedModelHook& hook = {});

/// Epoch e (0-based) starts at e * epoch_minutes: users move with seed {3, e},
/// demands are redrawn with seed {4, e}; the initial layout uses seed {5}.
RunResult run_dynamic(const ExperimentConfig& config, const TaggedModelHook& hook = {});

/// Layout and demands of static replication `replication` at `d_count`.
struct Instance {
    Topology topology;
    std::vector<Demand> demands;
};
Instance static_instance(const ExperimentConfig& config, int d_count, int replication);
Topology static_topology(const ExperimentConfig& config, int replication);

}  // namespace risflow
