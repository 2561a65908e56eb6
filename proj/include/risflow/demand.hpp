#pragma once

#include <cstddef>

#include "risflow/topology.hpp"

namespace risflow {

/// One traffic chunk: `chunk_gbit` to be delivered from a source base station
/// to a destination VR user, optionally split across several paths.
struct Demand {
    std::size_t id = 0;
    std::size_t app = 0;
    NodeId source = 0;
    NodeId destination = 0;
    double chunk_gbit = 0.5;
};

}  // namespace risflow
