#include "risflow/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace risflow {

using std::numbers::pi;

void ChannelParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be positive");
    };
    positive(bandwidth_w, "bandwidth_w");
    positive(freq_f, "freq_f");
    positive(k_abs, "k_abs");
    positive(temp_t0, "temp_t0");
    positive(p_bs, "p_bs");
    positive(p_ris, "p_ris");
    positive(boltzmann_kb, "boltzmann_kb");
    positive(light_c, "light_c");
    if (n_elements < 1) throw std::invalid_argument("n_elements must be at least 1");
    if (!optimal_phase) throw std::invalid_argument("only optimal_phase = true is supported");
}

namespace {

void require_positive_distance(double d) {
    if (!(d > 0.0)) throw std::domain_error("distance must be positive");
}

double spreading(double d, const ChannelParams& p) {
    const double a = p.light_c / (4.0 * pi * d * p.freq_f);
    return a * a;
}

}  // namespace

double absorption_gain(double d, const ChannelParams& params) {
    require_positive_distance(d);
    // -expm1(-kd) == 1 - exp(-kd) without cancellation at small kd.
    return spreading(d, params) * -std::expm1(-params.k_abs * d);
}

double channel_gain(double d, const ChannelParams& params) {
    require_positive_distance(d);
    return spreading(d, params) * std::exp(-d * params.k_abs);
}

double thermal_noise(const ChannelParams& params) {
    const double c = params.light_c;
    const double f = params.freq_f;
    return params.bandwidth_w * c * c / (4.0 * pi * f * f) * params.boltzmann_kb * params.temp_t0;
}

int UsageSets::z_count(LinkId out_link) const {
    auto it = z_counts.find(out_link);
    return it == z_counts.end() ? 0 : it->second;
}

UsageSets derive_usage_sets(std::span<const CandidatePathSet> candidate_sets, const Topology& topology,
                            const ChannelParams& params) {
    UsageSets u;
    for (const auto& set : candidate_sets) {
        for (const auto& path : set.paths) {
            for (NodeId id : path.nodes) {
                const auto kind = topology.node(id).kind;
                if (kind == NodeKind::Ris) u.i_ris.insert(id);
                if (kind == NodeKind::BaseStation) u.j_bs.insert(id);
            }
            for (std::size_t h = 0; h < path.links.size(); ++h) {
                const LinkId out = path.links[h];
                const NodeId from = topology.link(out).from;
                if (topology.node(from).kind != NodeKind::Ris) continue;
                u.x_links[from].insert(out);
                auto& feeders = u.y_links[out];
                // A RIS is never the first node of a downlink path, so h >= 1.
                if (h > 0) feeders.insert(path.links[h - 1]);
            }
        }
    }
    for (const auto& [out, feeders] : u.y_links) {
        u.z_counts[out] = std::min(static_cast<int>(feeders.size()), params.n_elements);
    }
    return u;
}

double noise_power(NodeId receiver, const UsageSets& usage, const Topology& topology, const ChannelParams& params,
                   std::optional<NodeId> transmitter) {
    const Vec2 at = topology.node(receiver).position;
    auto interference = [&](const std::set<NodeId>& nodes) {
        double sum = 0.0;
        for (NodeId i : nodes) {
            if (i == receiver || (transmitter && i == *transmitter)) continue;
            const double d = distance(topology.node(i).position, at);
            if (d <= 0.0) continue;
            sum += absorption_gain(d, params);
        }
        return sum;
    };
    return thermal_noise(params) + params.p_ris * interference(usage.i_ris) + params.p_bs * interference(usage.j_bs);
}

double link_capacity(LinkId link, const UsageSets& usage, const Topology& topology, const ChannelParams& params) {
    const auto& l = topology.link(link);
    if (topology.node(l.from).kind != NodeKind::Ris) throw std::invalid_argument("capacity link must start at a RIS");
    const int z = usage.z_count(link);
    if (z <= 0) return 0.0;
    const double noise = noise_power(l.to, usage, topology, params, l.from);
    const double snr = params.p_ris * channel_gain(l.distance, params) * z / noise;
    return params.bandwidth_w * std::log2(1.0 + snr);
}

double ris_speed(NodeId ris, const UsageSets& usage, const Topology& topology, const ChannelParams& params) {
    auto it = usage.x_links.find(ris);
    if (it == usage.x_links.end() || it->second.empty()) return 0.0;
    double sum = 0.0;
    for (LinkId l : it->second) sum += link_capacity(l, usage, topology, params);
    return sum / static_cast<double>(it->second.size());
}

}  // namespace risflow
