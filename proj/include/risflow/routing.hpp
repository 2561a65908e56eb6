#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "risflow/demand.hpp"
#include "risflow/topology.hpp"

namespace risflow {

struct Path {
    std::vector<NodeId> nodes;
    std::vector<LinkId> links;
    double total_distance = 0.0;

    std::size_t hop_count() const { return links.size(); }
    bool operator==(const Path& other) const { return nodes == other.nodes; }
};

/// Path order: fewer hops first, then shorter total distance, then the
/// lexicographically smaller node sequence.
bool path_less(const Path& a, const Path& b);

/// Builds a Path from a node sequence. Returns nullopt if some consecutive
/// pair is not a link of the topology or a node repeats.
std::optional<Path> make_path(const Topology& topology, std::span<const NodeId> nodes);

struct CandidatePathSet {
    std::size_t demand_id = 0;
    std::vector<Path> paths;
};

std::optional<Path> shortest_path(const Topology& topology, NodeId src, NodeId dst);

/// Loopless k shortest paths (Yen) under path_less. Fewer than k paths are
/// returned when fewer simple paths exist; empty when dst is unreachable.
CandidatePathSet k_shortest_paths(const Topology& topology, NodeId src, NodeId dst, std::size_t k);

struct CandidateSets {
    std::vector<CandidatePathSet> sets;     // one per demand, same order as input
    std::vector<std::size_t> unroutable;   // demand ids with an empty set
};

CandidateSets build_candidate_sets(const Topology& topology, std::span<const Demand> demands, std::size_t k);

}  // namespace risflow
