#include "risflow/routing.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

namespace risflow {

bool path_less(const Path& a, const Path& b) {
    if (a.hop_count() != b.hop_count()) return a.hop_count() < b.hop_count();
    if (a.total_distance != b.total_distance) return a.total_distance < b.total_distance;
    return a.nodes < b.nodes;
}

std::optional<Path> make_path(const Topology& topology, std::span<const NodeId> nodes) {
    Path p;
    p.nodes.assign(nodes.begin(), nodes.end());
    std::vector<bool> seen(topology.nodes().size(), false);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i] >= seen.size() || seen[nodes[i]]) return std::nullopt;
        seen[nodes[i]] = true;
        if (i == 0) continue;
        auto link = topology.find_link(nodes[i - 1], nodes[i]);
        if (!link) return std::nullopt;
        p.links.push_back(*link);
        // Summed front to back so every route to the same path yields the same bits.
        p.total_distance += topology.link(*link).distance;
    }
    return p;
}

namespace {

// Label-setting search for the best extension of `root` to dst under
// path_less. Labels carry the full prefix so ties resolve exactly as they
// would on the finished path.
struct Label {
    bool reached = false;
    std::size_t hops = 0;
    double dist = 0.0;
    std::vector<NodeId> seq;
    std::vector<LinkId> links;
};

bool label_less(const Label& a, const Label& b) {
    if (a.hops != b.hops) return a.hops < b.hops;
    if (a.dist != b.dist) return a.dist < b.dist;
    return a.seq < b.seq;
}

std::optional<Path> best_extension(const Topology& topology, const Path& root, NodeId dst,
                                   const std::vector<bool>& blocked_nodes,
                                   const std::vector<bool>& blocked_links) {
    const std::size_t n = topology.nodes().size();
    std::vector<Label> labels(n);
    std::vector<bool> done(n, false);
    const NodeId start = root.nodes.back();
    labels[start] = {true, root.hop_count(), root.total_distance, root.nodes, root.links};

    for (;;) {
        NodeId u = n;
        for (NodeId v = 0; v < n; ++v) {
            if (done[v] || !labels[v].reached) continue;
            if (u == n || label_less(labels[v], labels[u])) u = v;
        }
        if (u == n) return std::nullopt;
        if (u == dst) break;
        done[u] = true;
        for (LinkId lid : topology.out_links(u)) {
            const auto& l = topology.link(lid);
            if (blocked_links[lid] || blocked_nodes[l.to] || done[l.to]) continue;
            Label cand;
            cand.reached = true;
            cand.hops = labels[u].hops + 1;
            cand.dist = labels[u].dist + l.distance;
            cand.seq = labels[u].seq;
            cand.seq.push_back(l.to);
            if (!labels[l.to].reached || label_less(cand, labels[l.to])) {
                cand.links = labels[u].links;
                cand.links.push_back(lid);
                labels[l.to] = std::move(cand);
            }
        }
    }
    Path p;
    p.nodes = std::move(labels[dst].seq);
    p.links = std::move(labels[dst].links);
    p.total_distance = labels[dst].dist;
    return p;
}

Path prefix_of(const Topology& topology, const Path& p, std::size_t last_index) {
    std::span<const NodeId> nodes(p.nodes.data(), last_index + 1);
    return *make_path(topology, nodes);
}

}  // namespace

std::optional<Path> shortest_path(const Topology& topology, NodeId src, NodeId dst) {
    auto set = k_shortest_paths(topology, src, dst, 1);
    if (set.paths.empty()) return std::nullopt;
    return std::move(set.paths.front());
}

CandidatePathSet k_shortest_paths(const Topology& topology, NodeId src, NodeId dst, std::size_t k) {
    if (k == 0) throw std::invalid_argument("k must be at least 1");
    const std::size_t n = topology.nodes().size();
    if (src >= n || dst >= n) throw std::out_of_range("node id out of range");

    CandidatePathSet result;
    if (src == dst) return result;

    Path source_only;
    source_only.nodes = {src};
    std::vector<bool> no_nodes(n, false);
    std::vector<bool> no_links(topology.links().size(), false);
    auto first = best_extension(topology, source_only, dst, no_nodes, no_links);
    if (!first) return result;
    result.paths.push_back(std::move(*first));

    auto cmp = [](const Path& a, const Path& b) { return path_less(a, b); };
    std::vector<Path> pending;  // kept sorted by path_less

    while (result.paths.size() < k) {
        const Path& prev = result.paths.back();
        for (std::size_t i = 0; i + 1 < prev.nodes.size(); ++i) {
            std::vector<bool> blocked_nodes(n, false);
            std::vector<bool> blocked_links(topology.links().size(), false);
            for (std::size_t j = 0; j < i; ++j) blocked_nodes[prev.nodes[j]] = true;
            for (const auto& p : result.paths) {
                if (p.nodes.size() > i + 1 && std::equal(p.nodes.begin(), p.nodes.begin() + i + 1, prev.nodes.begin())) {
                    blocked_links[p.links[i]] = true;
                }
            }
            auto cand = best_extension(topology, prefix_of(topology, prev, i), dst, blocked_nodes, blocked_links);
            if (!cand) continue;
            if (std::find(result.paths.begin(), result.paths.end(), *cand) != result.paths.end()) continue;
            auto pos = std::lower_bound(pending.begin(), pending.end(), *cand, cmp);
            if (pos != pending.end() && *pos == *cand) continue;
            pending.insert(pos, std::move(*cand));
        }
        if (pending.empty()) break;
        result.paths.push_back(std::move(pending.front()));
        pending.erase(pending.begin());
    }
    return result;
}

CandidateSets build_candidate_sets(const Topology& topology, std::span<const Demand> demands, std::size_t k) {
    CandidateSets out;
    out.sets.reserve(demands.size());
    std::map<std::pair<NodeId, NodeId>, std::vector<Path>> cache;
    for (const auto& d : demands) {
        auto key = std::make_pair(d.source, d.destination);
        auto it = cache.find(key);
        if (it == cache.end()) {
            it = cache.emplace(key, k_shortest_paths(topology, d.source, d.destination, k).paths).first;
        }
        out.sets.push_back({d.id, it->second});
        if (it->second.empty()) out.unroutable.push_back(d.id);
    }
    return out;
}

}  // namespace risflow
