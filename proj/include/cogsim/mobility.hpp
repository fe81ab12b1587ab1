#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "cogsim/contact.hpp"
#include "cogsim/rng.hpp"

namespace cogsim {

/// Community-based waypoint mobility on a grid of square-ish cells. Each
/// community lives in one cell; non-travellers roam their home cell, while
/// travellers occasionally head for a foreign community and come back.
struct MobilityConfig {
    double area_width = 1000.0;   ///< meters
    double area_height = 1000.0;  ///< meters
    std::uint32_t grid = 1;       ///< cells per side
    std::uint32_t num_nodes = 99;
    std::uint32_t num_communities = 1;
    std::uint32_t travellers_per_community = 0;
    double speed_min = 1.0;  ///< m/s
    double speed_max = 1.86;
    double tx_range = 20.0;  ///< meters
    double time_step = 1.0;  ///< seconds
    double duration = 25000.0;
    /// Chance, per reached waypoint, that a traveller at home picks its next
    /// waypoint in a foreign community.
    double travel_probability = 0.1;
    std::uint64_t seed = 1;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

struct GridCell {
    std::uint32_t col = 0;
    std::uint32_t row = 0;
    friend bool operator==(const GridCell&, const GridCell&) = default;
};

/// Picks one cell per community such that no two are adjacent (including
/// diagonally). Throws ConfigError when impossible.
std::vector<GridCell> place_communities(const MobilityConfig& cfg, Rng& rng);

/// Community of each node: contiguous blocks of ids.
std::vector<std::uint32_t> assign_communities(std::uint32_t num_nodes, std::uint32_t num_communities);

/// Draws a speed uniformly in [speed_min, speed_max].
double sample_speed(const MobilityConfig& cfg, Rng& rng);

/// Turns sampled positions into contact intervals. A contact opens at the
/// first sample with distance <= range and closes at the first sample where
/// it exceeds the range.
class ContactTracker {
public:
    ContactTracker(std::size_t num_nodes, double tx_range);

    /// Positions of all nodes at time t (t strictly increasing across calls).
    void observe(double t, std::span<const double> xs, std::span<const double> ys);

    /// Closes contacts still open at t_end and returns all events sorted by
    /// (start, node_a, node_b).
    std::vector<ContactEvent> finish(double t_end);

private:
    std::size_t pair_index(std::size_t i, std::size_t j) const;

    std::size_t n_;
    double range_sq_;
    std::vector<double> open_since_;  // NaN when closed
    std::vector<std::uint8_t> flags_;
    std::vector<ContactEvent> events_;
};

struct MobilityTrace {
    std::vector<ContactEvent> contacts;
    std::vector<std::uint32_t> community;  ///< per node
    std::vector<bool> traveller;           ///< per node
    std::vector<GridCell> community_cells;
};

/// Optional observer of every sampled position.
using PositionSink = std::function<void(double t, NodeId node, double x, double y)>;

/// Deterministic in cfg (seed included).
MobilityTrace generate_trace(const MobilityConfig& cfg, const PositionSink& sink = {});

// Contact-trace file: one `<node_a> <node_b> <start_s> <end_s>` per line,
// '#' comments, sorted by start time.

void save_trace(std::ostream& out, std::span<const ContactEvent> events);
void save_trace(const std::filesystem::path& path, std::span<const ContactEvent> events);

/// Parses, validates and time-sorts a trace. ParseError carries the line
/// number; ValidationError flags invariant violations (overlaps, a >= b, ...).
std::vector<ContactEvent> load_trace(std::istream& in);
std::vector<ContactEvent> load_trace(const std::filesystem::path& path);

/// Throws ValidationError if any event has node_a >= node_b or end <= start,
/// or if two events of the same pair overlap.
void validate_contacts(std::span<const ContactEvent> events);

}  // namespace cogsim
