#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>

#include "risflow/routing.hpp"
#include "risflow/topology.hpp"

namespace risflow {

/// Physical constants of the THz downlink. SI units throughout.
struct ChannelParams {
    double bandwidth_w = 3e9;          // Hz
    double freq_f = 1e12;              // Hz
    double k_abs = 0.0016;             // molecular absorption coefficient, 1/m
    double temp_t0 = 300.0;            // K
    double p_bs = 10.0;                // W
    double p_ris = 1.0;                // W
    int n_elements = 16;               // reflecting elements per RIS
    double boltzmann_kb = 1.380649e-23;  // J/K
    double light_c = 3e8;              // m/s
    bool optimal_phase = true;

    /// Throws std::invalid_argument naming the first offending field.
    void validate() const;
};

/// Molecular absorption noise factor c^2/(16 pi^2 f^2 d^2) * (1 - exp(-k d)).
double absorption_gain(double d, const ChannelParams& params);

/// Free-space spreading with absorption loss, (c/(4 pi d f))^2 * exp(-k d).
double channel_gain(double d, const ChannelParams& params);

/// Johnson-Nyquist term as written in the capacity model,
/// W c^2/(4 pi f^2) * k_B * T0. Its dimensions differ from the textbook
/// k_B T0 W; kept verbatim so capacities line up with the reference model.
double thermal_noise(const ChannelParams& params);

/// Usage sets derived from the full candidate path collection. They are upper
/// bounds on what the LP will actually route.
struct UsageSets {
    std::map<NodeId, std::set<LinkId>> x_links;   // RIS -> used outgoing links
    std::map<LinkId, std::set<LinkId>> y_links;   // RIS outgoing link -> feeding incoming links
    std::map<LinkId, int> z_counts;               // RIS outgoing link -> min(|Y|, |N|)
    std::set<NodeId> i_ris;                       // RISs on any candidate path
    std::set<NodeId> j_bs;                        // BSs on any candidate path

    int z_count(LinkId out_link) const;
};

UsageSets derive_usage_sets(std::span<const CandidatePathSet> candidate_sets, const Topology& topology,
                            const ChannelParams& params);

/// Total noise at `receiver`: thermal plus absorption noise from every RIS in
/// I (at P_RIS) and BS in J (at P_BS). The receiver itself and `transmitter`
/// are skipped.
double noise_power(NodeId receiver, const UsageSets& usage, const Topology& topology, const ChannelParams& params,
                   std::optional<NodeId> transmitter = std::nullopt);

/// W log2(1 + P_RIS H(d) |Z| / noise). With optimal phases every reflecting
/// element contributes a unit phase term, so the element sum is z_count.
/// Throws std::invalid_argument if the link does not start at a RIS.
double link_capacity(LinkId link, const UsageSets& usage, const Topology& topology, const ChannelParams& params);

/// Mean capacity over the RIS's used outgoing links; 0 for an unused RIS.
double ris_speed(NodeId ris, const UsageSets& usage, const Topology& topology, const ChannelParams& params);

}  // namespace risflow
