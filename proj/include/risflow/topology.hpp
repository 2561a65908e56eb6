#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace risflow {

using NodeId = std::size_t;
using LinkId = std::size_t;

enum class NodeKind { BaseStation, Ris, VrUser };

std::string_view to_string(NodeKind kind);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

double distance(Vec2 a, Vec2 b);

struct Node {
    NodeId id = 0;
    NodeKind kind = NodeKind::BaseStation;
    Vec2 position;
};

struct DirectedLink {
    NodeId from = 0;
    NodeId to = 0;
    double distance = 0.0;
};

struct NodeCounts {
    int bs = 7;
    int ris = 7;
    int vr = 7;
};

/// Axis-aligned square a sampler draws positions from, [lo, hi]^2 in meters.
struct RoleBox {
    double lo;
    double hi;
};

inline constexpr RoleBox kBaseStationBox{1.0, 10.0};
inline constexpr RoleBox kRisBox{11.0, 21.0};
inline constexpr RoleBox kVrUserBox{22.0, 32.0};
inline constexpr double kDefaultRange = 20.0;

/// Whether a directed link from a node of kind `from` to one of kind `to` is
/// permitted. Base stations only transmit, VR users only receive, RISs relay.
bool role_allows(NodeKind from, NodeKind to);

/// Immutable node layout plus the directed connectivity graph derived from it.
///
/// Node ids are dense indices into nodes(). Links are kept sorted by
/// (from, to); there is exactly one link for every ordered role-compatible
/// pair whose Euclidean distance is within range().
class Topology {
public:
    Topology() = default;
    Topology(std::vector<Node> nodes, double range);

    std::span<const Node> nodes() const { return nodes_; }
    std::span<const DirectedLink> links() const { return links_; }
    double range() const { return range_; }

    const Node& node(NodeId id) const { return nodes_.at(id); }
    const DirectedLink& link(LinkId id) const { return links_.at(id); }

    std::span<const LinkId> out_links(NodeId id) const { return out_.at(id); }
    std::span<const LinkId> in_links(NodeId id) const { return in_.at(id); }
    std::optional<LinkId> find_link(NodeId from, NodeId to) const;

    std::vector<NodeId> ids_of(NodeKind kind) const;

private:
    std::vector<Node> nodes_;
    std::vector<DirectedLink> links_;
    std::vector<std::vector<LinkId>> out_;
    std::vector<std::vector<LinkId>> in_;
    double range_ = kDefaultRange;
};

/// Uniform positions per role box. Ids are assigned base stations first, then
/// RISs, then VR users; each node draws x then y from the seeded stream.
Topology sample_topology(NodeCounts counts, double range, std::uint64_t seed);

Topology rebuild_links(const Topology& topology);

/// Redraws every VR user uniformly in its role box and rebuilds the links.
/// Base station and RIS positions are copied unchanged.
Topology move_users(const Topology& topology, std::uint64_t seed);

/// Canonical text dump: `id,kind,x,y` per node then `from,to,distance` per
/// link, all reals with 6 decimals.
std::string dump_topology(const Topology& topology);

}  // namespace risflow
