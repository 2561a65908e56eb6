#include <doctest.h>

#include <cmath>
#include <random>

#include "risflow/topology.hpp"

using namespace risflow;

namespace {

Topology three(Vec2 bs, Vec2 ris, Vec2 vr, double range = 20.0) {
    return Topology({{0, NodeKind::BaseStation, bs}, {1, NodeKind::Ris, ris}, {2, NodeKind::VrUser, vr}}, range);
}

bool in_box(Vec2 p, RoleBox b) { return p.x >= b.lo && p.x <= b.hi && p.y >= b.lo && p.y <= b.hi; }

void check_link_invariants(const Topology& t) {
    for (const auto& l : t.links()) {
        CHECK(t.node(l.from).kind != NodeKind::VrUser);
        CHECK(t.node(l.to).kind != NodeKind::BaseStation);
        CHECK(l.distance <= t.range());
        const double d = distance(t.node(l.from).position, t.node(l.to).position);
        CHECK(std::abs(l.distance - d) <= 1e-12 * d);
        if (t.node(l.from).kind == NodeKind::Ris && t.node(l.to).kind == NodeKind::Ris) {
            auto back = t.find_link(l.to, l.from);
            REQUIRE(back);
            CHECK(t.link(*back).distance == l.distance);
        }
    }
    // Completeness: every role-compatible pair within range has exactly one link.
    for (const auto& a : t.nodes()) {
        for (const auto& b : t.nodes()) {
            if (a.id == b.id || !role_allows(a.kind, b.kind)) continue;
            const bool near = distance(a.position, b.position) <= t.range();
            int count = 0;
            for (const auto& l : t.links()) count += (l.from == a.id && l.to == b.id);
            CHECK(count == (near ? 1 : 0));
        }
    }
    for (NodeId id : t.ids_of(NodeKind::BaseStation)) CHECK(t.in_links(id).empty());
    for (NodeId id : t.ids_of(NodeKind::VrUser)) CHECK(t.out_links(id).empty());
}

}  // namespace

TEST_CASE("default sampler places 21 nodes inside their role boxes") {
    const auto t = sample_topology({7, 7, 7}, 20.0, 42);
    REQUIRE(t.nodes().size() == 21);
    for (const auto& n : t.nodes()) {
        switch (n.kind) {
            case NodeKind::BaseStation: CHECK(in_box(n.position, kBaseStationBox)); break;
            case NodeKind::Ris: CHECK(in_box(n.position, kRisBox)); break;
            case NodeKind::VrUser: CHECK(in_box(n.position, kVrUserBox)); break;
        }
    }
    CHECK(t.ids_of(NodeKind::BaseStation).size() == 7);
    CHECK(t.ids_of(NodeKind::Ris).size() == 7);
    CHECK(t.ids_of(NodeKind::VrUser).size() == 7);
    check_link_invariants(t);
}

TEST_CASE("tiny range leaves every node isolated") {
    const auto t = sample_topology({1, 1, 1}, 0.0001, 7);
    CHECK(t.nodes().size() == 3);
    CHECK(t.links().empty());
}

TEST_CASE("fixed positions: BS->RIS and RIS->VR within range, BS->VR out of range") {
    const auto t = three({5, 5}, {15, 15}, {25, 25});
    REQUIRE(t.links().size() == 2);
    auto br = t.find_link(0, 1);
    auto rv = t.find_link(1, 2);
    REQUIRE(br);
    REQUIRE(rv);
    CHECK(t.link(*br).distance == doctest::Approx(std::sqrt(200.0)).epsilon(1e-12));
    CHECK(t.link(*rv).distance == doctest::Approx(14.142135623730951).epsilon(1e-12));
    CHECK_FALSE(t.find_link(0, 2));
}

TEST_CASE("direct BS->VR link appears when within range") {
    const auto t = three({10, 10}, {15, 15}, {22, 22});
    CHECK(t.find_link(0, 2));
}

TEST_CASE("rebuild_links is idempotent and matches hand distances") {
    const auto t = three({5, 5}, {21, 21}, {22, 22});
    const auto r = rebuild_links(t);
    CHECK(dump_topology(r) == dump_topology(t));
    CHECK(dump_topology(rebuild_links(r)) == dump_topology(t));
    auto rv = r.find_link(1, 2);
    REQUIRE(rv);
    CHECK(r.link(*rv).distance == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("a VR user moved away from every RIS loses all incoming links") {
    auto t = three({5, 5}, {15, 15}, {25, 25});
    std::vector<Node> nodes(t.nodes().begin(), t.nodes().end());
    nodes[2].position = {200, 200};
    const auto moved = rebuild_links(Topology(nodes, t.range()));
    CHECK(moved.in_links(2).empty());
}

TEST_CASE("move_users relocates only VR users, deterministically") {
    const auto t = sample_topology({7, 7, 7}, 20.0, 3);
    const auto a = move_users(t, 99);
    const auto b = move_users(t, 99);
    CHECK(dump_topology(a) == dump_topology(b));
    bool any_moved = false;
    for (std::size_t i = 0; i < t.nodes().size(); ++i) {
        const auto& before = t.nodes()[i];
        const auto& after = a.nodes()[i];
        if (before.kind == NodeKind::VrUser) {
            CHECK(in_box(after.position, kVrUserBox));
            any_moved = any_moved || after.position.x != before.position.x;
        } else {
            CHECK(after.position.x == before.position.x);
            CHECK(after.position.y == before.position.y);
        }
    }
    CHECK(any_moved);
    check_link_invariants(a);
}

TEST_CASE("sampling is a pure function of (counts, range, seed)") {
    CHECK(dump_topology(sample_topology({7, 7, 7}, 20.0, 5)) == dump_topology(sample_topology({7, 7, 7}, 20.0, 5)));
    CHECK(dump_topology(sample_topology({7, 7, 7}, 20.0, 5)) != dump_topology(sample_topology({7, 7, 7}, 20.0, 6)));
}

TEST_CASE("link invariants hold on random layouts") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 50; ++trial) {
        const NodeCounts c{1 + static_cast<int>(gen() % 5), 1 + static_cast<int>(gen() % 6), 1 + static_cast<int>(gen() % 5)};
        const double range = 5.0 + static_cast<double>(gen() % 2500) / 100.0;
        check_link_invariants(sample_topology(c, range, gen()));
    }
}

TEST_CASE("canonical dump format") {
    const auto t = three({5, 5}, {15, 15}, {25, 25});
    CHECK(dump_topology(t) ==
          "0,bs,5.000000,5.000000\n"
          "1,ris,15.000000,15.000000\n"
          "2,vr,25.000000,25.000000\n"
          "0,1,14.142136\n"
          "1,2,14.142136\n");
}
