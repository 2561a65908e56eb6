#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include "risflow/experiment.hpp"
#include "risflow/routing.hpp"

using namespace risflow;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.d_sweep = {20, 60};
    c.replications = 3;
    c.dynamic.horizon_hours = 1.0;
    c.dynamic.d_fixed = 40;
    c.seed = 7;
    return c;
}

}  // namespace

TEST_CASE("generate_demands: counts, chunk size, endpoints, determinism") {
    const auto t = sample_topology({7, 7, 7}, 20.0, 1);
    const auto d = generate_demands(t, 100, 0.5, 9);
    REQUIRE(d.size() == 100);
    for (const auto& x : d) {
        CHECK(x.chunk_gbit == 0.5);
        CHECK(t.node(x.source).kind == NodeKind::BaseStation);
        CHECK(t.node(x.destination).kind == NodeKind::VrUser);
    }
    const auto again = generate_demands(t, 100, 0.5, 9);
    for (std::size_t i = 0; i < d.size(); ++i) {
        CHECK(d[i].source == again[i].source);
        CHECK(d[i].destination == again[i].destination);
    }
    const auto prefix = generate_demands(t, 30, 0.5, 9);
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        CHECK(prefix[i].source == d[i].source);
        CHECK(prefix[i].destination == d[i].destination);
    }
}

TEST_CASE("generate_demands: single BS and VR give the only pair") {
    const auto t = sample_topology({1, 1, 1}, 20.0, 2);
    const auto d = generate_demands(t, 1, 0.5, 3);
    REQUIRE(d.size() == 1);
    CHECK(d[0].source == 0);
    CHECK(d[0].destination == 2);
}

TEST_CASE("generate_demands: isolated VR user fails loudly") {
    const auto t = sample_topology({1, 1, 1}, 0.001, 2);
    CHECK_THROWS_AS(generate_demands(t, 1, 0.5, 3), UnroutableDemandError);
}

TEST_CASE("evaluate_once: k=5 dominates k=1, chunk doubling halves lambda") {
    ExperimentConfig c;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto t = sample_topology(c.counts, c.range_m, seed);
        const auto d = generate_demands(t, 100, 0.5, seed + 100);
        const auto p = evaluate_once(t, d, 5, c);
        const auto s = evaluate_once(t, d, 1, c);
        CHECK(p.lambda >= s.lambda - 1e-6);
        CHECK(p.feasibility.passed);
        CHECK(p.variables >= 100 + 7);

        auto doubled = d;
        for (auto& x : doubled) x.chunk_gbit = 1.0;
        auto cd = c;
        cd.chunk_gbit = 1.0;
        const auto h = evaluate_once(t, doubled, 5, cd);
        CHECK(std::abs(h.lambda * 2.0 - p.lambda) <= 1e-6 * p.lambda);
    }
}

TEST_CASE("evaluate_once: hand-built two-RIS path reproduces the analytic optimum") {
    // One path b -> r1 -> r2 -> v; lambda = min over RISs of (L + S tau) / t.
    const Topology t({{0, NodeKind::BaseStation, {0, 0}},
                      {1, NodeKind::Ris, {10, 0}},
                      {2, NodeKind::Ris, {20, 0}},
                      {3, NodeKind::VrUser, {30, 0}}},
                     12.0);
    ExperimentConfig c;
    const std::vector<Demand> d{{0, 0, 0, 3, 0.5}};
    const auto ev = evaluate_once(t, d, 5, c);
    double bound = INFINITY;
    for (const auto& [r, s] : ev.ris_speed_gbps) {
        if (s > 0) bound = std::min(bound, (c.queue_l_gbit + s * c.tau_s) / 0.5);
    }
    CHECK(std::abs(ev.lambda - bound) <= 1e-6);
}

TEST_CASE("evaluate_once: unroutable demands are excluded and counted") {
    const Topology t({{0, NodeKind::BaseStation, {0, 0}},
                      {1, NodeKind::Ris, {10, 0}},
                      {2, NodeKind::VrUser, {20, 0}},
                      {3, NodeKind::VrUser, {90, 0}}},
                     12.0);
    const std::vector<Demand> d{{0, 0, 0, 2, 0.5}, {1, 1, 0, 3, 0.5}};
    const auto ev = evaluate_once(t, d, 5, ExperimentConfig{});
    CHECK(ev.excluded_demands == 1);
    CHECK(ev.lambda > 0.0);
    const std::vector<Demand> none{{1, 1, 0, 3, 0.5}};
    CHECK_THROWS_AS(evaluate_once(t, none, 5, ExperimentConfig{}), UnroutableDemandError);
}

TEST_CASE("confidence interval") {
    const std::vector<double> same{2.5, 2.5, 2.5};
    const auto c0 = confidence_interval(same, 0.95);
    CHECK(c0.mean == 2.5);
    REQUIRE(c0.half_width);
    CHECK(*c0.half_width == 0.0);

    // t(0.975, 4) = 2.7764451, s = sqrt(2.5), n = 5
    const std::vector<double> v{1, 2, 3, 4, 5};
    const auto c = confidence_interval(v, 0.95);
    CHECK(c.mean == doctest::Approx(3.0));
    REQUIRE(c.half_width);
    CHECK(*c.half_width == doctest::Approx(2.7764451051977987 * std::sqrt(2.5) / std::sqrt(5.0)).epsilon(1e-9));
    CHECK(*c.half_width == doctest::Approx(1.963).epsilon(1e-3));
    CHECK(*confidence_interval(v, 0.99).half_width > *c.half_width);

    const std::vector<double> single{4.0};
    const auto c1 = confidence_interval(single, 0.95);
    CHECK(c1.mean == 4.0);
    CHECK_FALSE(c1.half_width);
}

TEST_CASE("throughput gain") {
    CHECK(*throughput_gain(1.3, 1.3) == 1.0);
    CHECK(*throughput_gain(1.86, 0.93) == doctest::Approx(2.0));
    CHECK_FALSE(throughput_gain(1.0, 0.0));
}

TEST_CASE("epoch count follows horizon / epoch length") {
    DynamicConfig d;
    d.horizon_hours = 4.0;
    CHECK(d.epoch_count() == 8);
    d.horizon_hours = 0.0;
    CHECK(d.epoch_count() == 0);
}

TEST_CASE("run_static: shape, pairing, determinism, thread independence") {
    auto c = small_config();
    const auto a = run_static(c);
    REQUIRE(a.sweep.size() == 2);
    for (const auto& sp : a.sweep) {
        CHECK(sp.pddt.lambdas.size() == 3);
        CHECK(sp.sddt.lambdas.size() == 3);
        for (std::size_t r = 0; r < 3; ++r) {
            CHECK(sp.pddt.lambdas[r] >= sp.sddt.lambdas[r] - 1e-6);
            REQUIRE(sp.gains[r]);
            CHECK(*sp.gains[r] == doctest::Approx(sp.pddt.lambdas[r] / sp.sddt.lambdas[r]));
        }
        REQUIRE(sp.mean_gain);
        CHECK(*sp.mean_gain >= 1.0 - 1e-9);
    }
    c.threads = 3;
    const auto b = run_static(c);
    for (std::size_t p = 0; p < 2; ++p) {
        CHECK(a.sweep[p].pddt.lambdas == b.sweep[p].pddt.lambdas);
        CHECK(a.sweep[p].sddt.lambdas == b.sweep[p].sddt.lambdas);
    }
}

TEST_CASE("run_static: nested demands give non-increasing lambda") {
    auto c = small_config();
    c.nested_demands = true;
    c.d_sweep = {10, 30, 90};
    const auto r = run_static(c);
    for (std::size_t rep = 0; rep < 3; ++rep) {
        for (std::size_t p = 1; p < r.sweep.size(); ++p) {
            CHECK(r.sweep[p].pddt.lambdas[rep] <= r.sweep[p - 1].pddt.lambdas[rep] + 1e-6);
            CHECK(r.sweep[p].sddt.lambdas[rep] <= r.sweep[p - 1].sddt.lambdas[rep] + 1e-6);
        }
    }
}

TEST_CASE("run_static: fixed topology reuses one layout") {
    auto c = small_config();
    c.fixed_topology = true;
    CHECK(dump_topology(static_topology(c, 0)) == dump_topology(static_topology(c, 2)));
    c.fixed_topology = false;
    CHECK(dump_topology(static_topology(c, 0)) != dump_topology(static_topology(c, 2)));
}

TEST_CASE("run_dynamic: one record per epoch, paired gains") {
    const auto c = small_config();
    const auto r = run_dynamic(c);
    REQUIRE(r.epochs.size() == 2);
    for (std::size_t e = 0; e < r.epochs.size(); ++e) {
        CHECK(r.epochs[e].index == e);
        CHECK(r.epochs[e].minutes == 30.0 * static_cast<double>(e));
        REQUIRE(r.epochs[e].gain);
        CHECK(*r.epochs[e].gain >= 1.0 - 1e-6);
    }
    const auto again = run_dynamic(c);
    CHECK(again.epochs[1].lambda_pddt == r.epochs[1].lambda_pddt);
}

TEST_CASE("model hook sees every solve with a distinct tag") {
    auto c = small_config();
    std::vector<std::string> tags;
    std::mutex m;
    c.threads = 1;
    run_static(c, [&](const std::string& tag, const LpModel&) {
        std::lock_guard lock(m);
        tags.push_back(tag);
    });
    CHECK(tags.size() == 2 * 3 * 2);
    std::sort(tags.begin(), tags.end());
    CHECK(std::adjacent_find(tags.begin(), tags.end()) == tags.end());
    CHECK(std::find(tags.begin(), tags.end(), "d20_pddt_r0") != tags.end());
}

TEST_CASE("config validation") {
    ExperimentConfig c;
    CHECK_NOTHROW(c.validate());
    c.ci_level = 1.0;
    CHECK_THROWS(c.validate());
    c = {};
    c.d_sweep.clear();
    CHECK_THROWS(c.validate());
    c = {};
    c.counts.ris = 0;
    CHECK_THROWS(c.validate());
}
