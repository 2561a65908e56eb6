#include "risflow/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "simplex.hpp"

namespace risflow {

std::string_view to_string(LpStatus status) {
    switch (status) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        case LpStatus::IterationLimit: return "iteration-limit";
    }
    return "?";
}

LpModel build_model(std::span<const Demand> demands, std::span<const CandidatePathSet> candidate_sets,
                    const std::map<NodeId, double>& ris_speeds_gbps, double queue_l_gbit, double tau_s) {
    if (demands.size() != candidate_sets.size()) throw std::invalid_argument("one candidate set per demand required");
    if (!(queue_l_gbit >= 0.0) || !(tau_s >= 0.0)) throw std::invalid_argument("queue length and tau must be non-negative");

    LpModel m;
    m.queue_l_gbit = queue_l_gbit;
    m.tau_s = tau_s;
    std::map<NodeId, std::size_t> row_of;
    for (const auto& [id, speed] : ris_speeds_gbps) {
        if (!(speed >= 0.0)) throw std::invalid_argument("RIS speed must be non-negative");
        row_of[id] = m.ris.size();
        m.ris.push_back(id);
        m.ris_speed_gbps.push_back(speed);
    }

    std::vector<std::size_t> unroutable;
    for (std::size_t d = 0; d < demands.size(); ++d) {
        if (candidate_sets[d].paths.empty()) unroutable.push_back(demands[d].id);
        if (!(demands[d].chunk_gbit > 0.0)) throw std::invalid_argument("demand chunk must be positive");
    }
    if (!unroutable.empty()) {
        throw UnroutableDemandError(std::to_string(unroutable.size()) + " demand(s) have no candidate path",
                                    std::move(unroutable));
    }

    m.demands.assign(demands.begin(), demands.end());
    m.demand_columns.resize(demands.size());
    for (std::size_t d = 0; d < demands.size(); ++d) {
        const auto& paths = candidate_sets[d].paths;
        for (std::size_t p = 0; p < paths.size(); ++p) {
            FlowColumn col{d, p, {}};
            // Interior nodes are exactly the RISs entered through one of their incoming links.
            for (std::size_t h = 1; h + 1 < paths[p].nodes.size(); ++h) {
                auto it = row_of.find(paths[p].nodes[h]);
                if (it == row_of.end()) throw std::invalid_argument("path relays through a node with no RIS speed");
                col.ris_rows.push_back(it->second);
            }
            m.demand_columns[d].push_back(m.columns.size());
            m.columns.push_back(std::move(col));
        }
    }
    return m;
}

namespace {

struct Group {
    double chunk = 0.0;
    std::vector<std::size_t> members;              // demand indices
    std::vector<std::vector<std::size_t>> paths;   // ris_rows per path, shared by members
};

std::vector<Group> group_demands(const LpModel& model, bool merge) {
    std::vector<Group> groups;
    std::map<std::vector<std::vector<std::size_t>>, std::size_t> index;
    for (std::size_t d = 0; d < model.demands.size(); ++d) {
        std::vector<std::vector<std::size_t>> shape;
        for (std::size_t c : model.demand_columns[d]) {
            auto rows = model.columns[c].ris_rows;
            std::sort(rows.begin(), rows.end());
            shape.push_back(std::move(rows));
        }
        std::size_t g = groups.size();
        if (merge) {
            auto [it, inserted] = index.emplace(shape, groups.size());
            g = it->second;
            if (inserted) groups.push_back({0.0, {}, std::move(shape)});
        } else {
            groups.push_back({0.0, {}, std::move(shape)});
        }
        groups[g].chunk += model.demands[d].chunk_gbit;
        groups[g].members.push_back(d);
    }
    return groups;
}

std::vector<double> load_vector(const std::vector<std::size_t>& rows, std::size_t n) {
    std::vector<double> v(n, 0.0);
    for (std::size_t r : rows) v[r] += 1.0;
    return v;
}

}  // namespace

// The first path of every group is eliminated through its demand equality,
// f0 = t*lambda - sum_{j>0} f_j, and y is substituted into the queue rows.
// What remains is max lambda s.t. A x <= b with b >= 0, so the all-slack basis
// is feasible and a single simplex phase suffices.
LpSolution solve(const LpModel& model, const SolveOptions& options) {
    const std::size_t nr = model.ris.size();
    const auto groups = group_demands(model, options.merge_identical_demands);

    std::vector<std::size_t> first_var(groups.size());
    std::size_t nvars = 1;  // lambda
    std::size_t ndemand_rows = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        first_var[g] = nvars;
        nvars += groups[g].paths.size() - 1;
        if (groups[g].paths.size() > 1) ++ndemand_rows;
    }

    // Queue rows touched by no column are always slack; leave them out.
    std::vector<double> lambda_coef(nr, 0.0);
    std::vector<std::vector<double>> coef(nr, std::vector<double>(nvars, 0.0));
    std::vector<bool> touched(nr, false);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const auto base = load_vector(groups[g].paths[0], nr);
        for (std::size_t r = 0; r < nr; ++r) {
            coef[r][0] += groups[g].chunk * base[r];
            if (base[r] != 0.0) touched[r] = true;
        }
        for (std::size_t j = 1; j < groups[g].paths.size(); ++j) {
            const auto load = load_vector(groups[g].paths[j], nr);
            for (std::size_t r = 0; r < nr; ++r) {
                coef[r][first_var[g] + j - 1] = load[r] - base[r];
                if (load[r] != 0.0) touched[r] = true;
            }
        }
    }
    std::vector<std::size_t> queue_rows;
    for (std::size_t r = 0; r < nr; ++r) {
        if (touched[r]) queue_rows.push_back(r);
    }

    detail::DenseLp lp;
    lp.cols = nvars;
    lp.rows = ndemand_rows + queue_rows.size();
    lp.a.assign(lp.rows * lp.cols, 0.0);
    lp.b.assign(lp.rows, 0.0);
    lp.c.assign(lp.cols, 0.0);
    lp.c[0] = 1.0;
    std::size_t row = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].paths.size() < 2) continue;
        double* a = &lp.a[row * lp.cols];
        a[0] = -groups[g].chunk;
        for (std::size_t j = 1; j < groups[g].paths.size(); ++j) a[first_var[g] + j - 1] = 1.0;
        ++row;
    }
    for (std::size_t r : queue_rows) {
        std::copy(coef[r].begin(), coef[r].end(), lp.a.begin() + static_cast<std::ptrdiff_t>(row * lp.cols));
        lp.b[row] = model.ris_budget_gbit(r);
        ++row;
    }

    const auto res = detail::solve_dense(lp, options.pivot_tol, options.max_iterations,
                                         options.bland_after_degenerate);

    LpSolution sol;
    sol.iterations = res.iterations;
    sol.degenerate_pivots = res.degenerate_pivots;
    sol.used_bland = res.used_bland;
    if (res.status == detail::SimplexStatus::Unbounded) {
        sol.status = LpStatus::Unbounded;
        sol.lambda = std::numeric_limits<double>::infinity();
        sol.message = "lambda is unbounded: no RIS queue constrains the routed demands";
        return sol;
    }
    if (res.status == detail::SimplexStatus::IterationLimit) {
        sol.status = LpStatus::IterationLimit;
        sol.message = "simplex iteration cap of " + std::to_string(options.max_iterations) + " reached";
        return sol;
    }

    sol.status = LpStatus::Optimal;
    sol.lambda = res.x[0];
    sol.flows.assign(model.columns.size(), 0.0);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const auto& grp = groups[g];
        std::vector<double> f(grp.paths.size(), 0.0);
        double rest = 0.0;
        for (std::size_t j = 1; j < grp.paths.size(); ++j) {
            f[j] = res.x[first_var[g] + j - 1];
            rest += f[j];
        }
        f[0] = std::max(grp.chunk * sol.lambda - rest, 0.0);
        for (std::size_t d : grp.members) {
            const double share = model.demands[d].chunk_gbit / grp.chunk;
            const auto& cols = model.demand_columns[d];
            for (std::size_t j = 0; j < cols.size(); ++j) sol.flows[cols[j]] = f[j] * share;
        }
    }
    sol.loads.assign(nr, 0.0);
    for (std::size_t c = 0; c < model.columns.size(); ++c) {
        for (std::size_t r : model.columns[c].ris_rows) sol.loads[r] += sol.flows[c];
    }
    return sol;
}

FeasibilityReport check_feasibility(const LpModel& model, const LpSolution& solution, double tol) {
    FeasibilityReport rep;
    const std::size_t nr = model.ris.size();
    if (solution.flows.size() != model.columns.size() || solution.loads.size() != nr) {
        rep.max_residual = std::numeric_limits<double>::infinity();
        return rep;
    }
    for (std::size_t d = 0; d < model.demands.size(); ++d) {
        double sum = 0.0;
        for (std::size_t c : model.demand_columns[d]) sum += solution.flows[c];
        rep.demand_residual =
            std::max(rep.demand_residual, std::abs(sum - model.demands[d].chunk_gbit * solution.lambda));
    }
    std::vector<double> load(nr, 0.0);
    for (std::size_t c = 0; c < model.columns.size(); ++c) {
        rep.negativity = std::max(rep.negativity, -solution.flows[c]);
        for (std::size_t r : model.columns[c].ris_rows) load[r] += solution.flows[c];
    }
    rep.negativity = std::max(rep.negativity, -solution.lambda);
    rep.min_queue_slack = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < nr; ++r) {
        const double y = solution.loads[r];
        rep.load_residual = std::max(rep.load_residual, std::abs(y - load[r]));
        rep.negativity = std::max(rep.negativity, -y);
        const double slack = model.ris_budget_gbit(r) - y;
        rep.queue_violation = std::max(rep.queue_violation, -slack);
        rep.min_queue_slack = std::min(rep.min_queue_slack, slack);
    }
    rep.max_residual = std::max({rep.demand_residual, rep.load_residual, rep.queue_violation, rep.negativity});
    rep.passed = rep.max_residual <= tol;
    return rep;
}

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string flow_name(const LpModel& m, std::size_t c) {
    return "f_" + std::to_string(m.demands[m.columns[c].demand].id) + "_" + std::to_string(m.columns[c].path_rank);
}

}  // namespace

std::string to_lp_format(const LpModel& model) {
    std::string s;
    s += "\\ max-lambda downlink distribution model\n";
    s += "\\ demands=" + std::to_string(model.demands.size()) + " flows=" + std::to_string(model.columns.size()) +
         " ris=" + std::to_string(model.ris.size()) + "\n";
    s += "Maximize\n obj: lambda\nSubject To\n";
    for (std::size_t d = 0; d < model.demands.size(); ++d) {
        s += " demand_" + std::to_string(model.demands[d].id) + ":";
        for (std::size_t c : model.demand_columns[d]) s += " + " + flow_name(model, c);
        s += " - " + num(model.demands[d].chunk_gbit) + " lambda = 0\n";
    }
    for (std::size_t r = 0; r < model.ris.size(); ++r) {
        const std::string y = "y_" + std::to_string(model.ris[r]);
        s += " load_" + std::to_string(model.ris[r]) + ": " + y;
        for (std::size_t c = 0; c < model.columns.size(); ++c) {
            for (std::size_t row : model.columns[c].ris_rows) {
                if (row == r) s += " - " + flow_name(model, c);
            }
        }
        s += " = 0\n";
    }
    for (std::size_t r = 0; r < model.ris.size(); ++r) {
        s += " queue_" + std::to_string(model.ris[r]) + ": y_" + std::to_string(model.ris[r]) +
             " <= " + num(model.ris_budget_gbit(r)) + "\n";
    }
    s += "Bounds\n lambda >= 0\nEnd\n";
    return s;
}

}  // namespace risflow
