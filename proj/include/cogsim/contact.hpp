#pragma once

#include <cstdint>

namespace cogsim {

using NodeId = std::uint32_t;

/// One contact interval [start, end) between two nodes, node_a < node_b.
struct ContactEvent {
    NodeId node_a = 0;
    NodeId node_b = 0;
    double start = 0.0;
    double end = 0.0;

    double duration() const noexcept { return end - start; }
    friend bool operator==(const ContactEvent&, const ContactEvent&) = default;
};

}  // namespace cogsim
