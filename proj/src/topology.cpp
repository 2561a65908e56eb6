#include "risflow/topology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "risflow/rng.hpp"

namespace risflow {

std::string_view to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::BaseStation: return "bs";
        case NodeKind::Ris: return "ris";
        case NodeKind::VrUser: return "vr";
    }
    return "?";
}

double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

bool role_allows(NodeKind from, NodeKind to) {
    if (from == NodeKind::VrUser) return false;
    if (to == NodeKind::BaseStation) return false;
    // BS->RIS, BS->VR, RIS->RIS, RIS->VR
    return true;
}

Topology::Topology(std::vector<Node> nodes, double range) : nodes_(std::move(nodes)), range_(range) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i].id != i) throw std::invalid_argument("node ids must be dense and in order");
    }
    out_.resize(nodes_.size());
    in_.resize(nodes_.size());
    for (const auto& a : nodes_) {
        for (const auto& b : nodes_) {
            if (a.id == b.id || !role_allows(a.kind, b.kind)) continue;
            const double d = distance(a.position, b.position);
            if (d > range_) continue;
            const LinkId id = links_.size();
            links_.push_back({a.id, b.id, d});
            out_[a.id].push_back(id);
            in_[b.id].push_back(id);
        }
    }
}

std::optional<LinkId> Topology::find_link(NodeId from, NodeId to) const {
    for (LinkId id : out_.at(from)) {
        if (links_[id].to == to) return id;
    }
    return std::nullopt;
}

std::vector<NodeId> Topology::ids_of(NodeKind kind) const {
    std::vector<NodeId> ids;
    for (const auto& n : nodes_) {
        if (n.kind == kind) ids.push_back(n.id);
    }
    return ids;
}

namespace {

Vec2 sample_in(RoleBox box, Rng& rng) {
    std::uniform_real_distribution<double> u(box.lo, box.hi);
    const double x = u(rng);
    const double y = u(rng);
    return {x, y};
}

}  // namespace

Topology sample_topology(NodeCounts counts, double range, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Node> nodes;
    auto add = [&](int n, NodeKind kind, RoleBox box) {
        for (int i = 0; i < n; ++i) nodes.push_back({nodes.size(), kind, sample_in(box, rng)});
    };
    add(counts.bs, NodeKind::BaseStation, kBaseStationBox);
    add(counts.ris, NodeKind::Ris, kRisBox);
    add(counts.vr, NodeKind::VrUser, kVrUserBox);
    return Topology(std::move(nodes), range);
}

Topology rebuild_links(const Topology& topology) {
    return Topology({topology.nodes().begin(), topology.nodes().end()}, topology.range());
}

Topology move_users(const Topology& topology, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Node> nodes(topology.nodes().begin(), topology.nodes().end());
    for (auto& n : nodes) {
        if (n.kind == NodeKind::VrUser) n.position = sample_in(kVrUserBox, rng);
    }
    return Topology(std::move(nodes), topology.range());
}

std::string dump_topology(const Topology& topology) {
    std::string out;
    char buf[160];
    for (const auto& n : topology.nodes()) {
        std::snprintf(buf, sizeof buf, "%zu,%s,%.6f,%.6f\n", n.id, std::string(to_string(n.kind)).c_str(),
                      n.position.x, n.position.y);
        out += buf;
    }
    for (const auto& l : topology.links()) {
        std::snprintf(buf, sizeof buf, "%zu,%zu,%.6f\n", l.from, l.to, l.distance);
        out += buf;
    }
    return out;
}

}  // namespace risflow
