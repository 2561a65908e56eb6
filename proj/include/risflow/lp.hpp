#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "risflow/demand.hpp"
#include "risflow/routing.hpp"

namespace risflow {

class UnroutableDemandError : public std::runtime_error {
public:
    UnroutableDemandError(const std::string& what, std::vector<std::size_t> demand_ids)
        : std::runtime_error(what), demand_ids_(std::move(demand_ids)) {}
    const std::vector<std::size_t>& demand_ids() const { return demand_ids_; }

private:
    std::vector<std::size_t> demand_ids_;
};

/// One flow variable f: the share of a demand's chunk routed over one of its
/// candidate paths. `ris_rows` lists, for every RIS the path passes through,
/// the index of that RIS in LpModel::ris.
struct FlowColumn {
    std::size_t demand = 0;     // index into LpModel::demands
    std::size_t path_rank = 0;  // index into the demand's candidate set
    std::vector<std::size_t> ris_rows;
};

/// Max-lambda program over candidate paths, in Gbit and seconds:
///
///   maximize lambda
///   sum_P f[d,P] = t[d] * lambda                  for every demand d
///   y[r] = sum of f[d,P] over paths P entering r   for every RIS r
///   y[r] - S[r] * tau <= L                         for every RIS r
///   f, y, lambda >= 0
struct LpModel {
    std::vector<Demand> demands;
    std::vector<FlowColumn> columns;
    std::vector<std::vector<std::size_t>> demand_columns;  // demand index -> column indices
    std::vector<NodeId> ris;                               // RIS id per load row
    std::vector<double> ris_speed_gbps;
    double queue_l_gbit = 10.0;
    double tau_s = 0.5;

    std::size_t flow_count() const { return columns.size(); }
    /// Flow and load variables; the multiplier is the objective and is not counted.
    std::size_t variable_count() const { return columns.size() + ris.size(); }
    std::size_t constraint_count() const { return demands.size() + 2 * ris.size(); }
    /// Right-hand side of the queue row once y is moved left: L + S * tau.
    double ris_budget_gbit(std::size_t row) const { return queue_l_gbit + ris_speed_gbps[row] * tau_s; }
};

/// `ris_speeds_gbps` must hold every RIS of the network (used or not).
/// Throws UnroutableDemandError when some demand has no candidate path.
LpModel build_model(std::span<const Demand> demands, std::span<const CandidatePathSet> candidate_sets,
                    const std::map<NodeId, double>& ris_speeds_gbps, double queue_l_gbit, double tau_s);

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string_view to_string(LpStatus status);

struct SolveOptions {
    double pivot_tol = 1e-9;
    std::size_t max_iterations = 200000;
    std::size_t bland_after_degenerate = 5000;
    /// Demands with identical candidate path structure are solved as one
    /// aggregate and split back in proportion to their chunks.
    bool merge_identical_demands = true;
};

struct LpSolution {
    LpStatus status = LpStatus::Optimal;
    double lambda = 0.0;
    std::vector<double> flows;  // per LpModel::columns
    std::vector<double> loads;  // per LpModel::ris
    std::size_t iterations = 0;
    std::size_t degenerate_pivots = 0;
    bool used_bland = false;
    std::string message;
};

LpSolution solve(const LpModel& model, const SolveOptions& options = {});

struct FeasibilityReport {
    double demand_residual = 0.0;   // max |sum f - t lambda|
    double load_residual = 0.0;     // max |y - sum f|
    double queue_violation = 0.0;   // max (y - S tau - L)^+
    double negativity = 0.0;        // max (-v)^+ over f, y, lambda
    double min_queue_slack = 0.0;
    double max_residual = 0.0;
    bool passed = false;
};

FeasibilityReport check_feasibility(const LpModel& model, const LpSolution& solution, double tol = 1e-6);

/// CPLEX LP text with explicit y variables, suitable for external solvers.
std::string to_lp_format(const LpModel& model);

}  // namespace risflow
