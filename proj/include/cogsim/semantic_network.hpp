#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "cogsim/catalog.hpp"

namespace cogsim {

/// Unordered tag pair, stored with lo < hi.
struct EdgeKey {
    TagId lo{};
    TagId hi{};

    EdgeKey() = default;
    EdgeKey(TagId a, TagId b) : lo(a < b ? a : b), hi(a < b ? b : a) {}

    TagId other(TagId end) const noexcept { return end == lo ? hi : lo; }
    std::uint64_t packed() const noexcept {
        return (std::uint64_t{index_of(lo)} << 32) | index_of(hi);
    }
    friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

/// Activation state backing the forgetting curve of one edge.
struct EdgeState {
    double last_activation = 0.0;  ///< t*, seconds
    std::uint32_t popularity = 1;  ///< p, number of uses (>= 1)

    friend bool operator==(const EdgeState&, const EdgeState&) = default;
};

/// Memory strength of an edge at `now`:
///     f(e, now) = exp(-(gamma / p) * (now - t*))
/// Requires now >= t* and gamma > 0. Equals 1 exactly at now == t*.
double edge_weight(const EdgeState& edge, double now, double gamma) noexcept;

/// True when the edge is forgotten at `now` under the forget threshold
/// expressed as f_min seconds: f(e, now) <= exp(-gamma * f_min), which reduces
/// to (now - t*) >= p * f_min for every gamma > 0.
bool is_forgotten(const EdgeState& edge, double now, double f_min) noexcept;

class ContributedNetwork;

/// A node's associative memory: a dynamic undirected weighted tag graph.
/// Weights are never stored; they are evaluated lazily from EdgeState.
///
/// Iteration order is deterministic: vertices and neighbor lists ascend by
/// TagId (label order).
class SemanticNetwork {
public:
    SemanticNetwork() = default;

    std::size_t vertex_count() const noexcept { return adjacency_.size(); }
    std::size_t edge_count() const noexcept { return keys_.size(); }
    bool empty() const noexcept { return adjacency_.empty(); }

    bool has_vertex(TagId v) const { return adjacency_.contains(v); }
    bool has_edge(TagId a, TagId b) const { return slot_.contains(EdgeKey{a, b}.packed()); }

    /// Sorted vertex list.
    std::vector<TagId> vertices() const;
    /// Sorted neighbors of v. Throws LookupError for unknown vertices.
    std::span<const TagId> neighbors(TagId v) const;
    std::size_t degree(TagId v) const { return neighbors(v).size(); }

    /// Throws LookupError for unknown edges.
    EdgeState edge(TagId a, TagId b) const;
    std::optional<EdgeState> find_edge(TagId a, TagId b) const;

    /// All edges in ascending key order.
    std::vector<std::pair<EdgeKey, EdgeState>> edges() const;
    /// All edges in storage order (the order of insertion, compacted by
    /// pruning). Re-adding edges in this order rebuilds a network whose
    /// weight sums round identically.
    std::vector<std::pair<EdgeKey, EdgeState>> edges_in_storage_order() const;

    /// Adds an isolated vertex (no-op if present).
    void add_vertex(TagId v);
    /// Adds an edge and any missing endpoints. Returns false (leaving the
    /// existing state untouched) if the edge already exists. Self-loops are
    /// rejected with ConfigError.
    bool add_edge(TagId a, TagId b, EdgeState state);

    /// f(e, now). Throws LookupError for unknown edges.
    double weight(TagId a, TagId b, double now, double gamma) const;

    /// Sets t* = now (weight back to 1) and increments popularity.
    void activate_edge(TagId a, TagId b, double now);
    /// Increments popularity without touching t*.
    void boost_popularity(TagId a, TagId b, std::uint32_t by = 1);

    /// Removes every edge with (now - t*) >= p * f_min, then every vertex of
    /// degree 0. Returns the number of edges removed.
    std::size_t prune_forgotten(double now, double f_min);

    /// Adds missing vertices and edges of `contrib` and activates every
    /// contributed edge at `now`. New edges start at popularity 1 before the
    /// activation increment.
    void merge(const ContributedNetwork& contrib, double now);

    /// Mean of f(e, now) over all edges; 0 for an edgeless network.
    double mean_edge_weight(double now, double gamma) const;
    /// Sum of f(e, now) over all edges.
    double total_edge_weight(double now, double gamma) const;

    friend bool operator==(const SemanticNetwork& a, const SemanticNetwork& b);

private:
    std::size_t slot_of(TagId a, TagId b) const;
    void remove_edges(std::span<const std::uint8_t> doomed);

    std::map<TagId, std::vector<TagId>> adjacency_;
    std::unordered_map<std::uint64_t, std::uint32_t> slot_;
    // Structure-of-arrays edge storage feeding the SIMD kernels.
    std::vector<EdgeKey> keys_;
    std::vector<double> last_;
    std::vector<std::uint32_t> popularity_;
};

/// Builds a node's network at t0: the tags of each item form a clique,
/// equal labels across cliques are merged. Every edge gets (t0, 1).
/// Throws ConfigError for an empty item list.
SemanticNetwork build_initial(std::span<const TaggedItem> items, double t0);
SemanticNetwork build_initial(std::span<const TaggedItem* const> items, double t0);

/// Label-wise union of networks with every EdgeState reset to (t0, 1).
SemanticNetwork union_of(std::span<const SemanticNetwork> networks, double t0);

/// Summary of a network at one instant.
struct NetworkStats {
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
    double mean_edge_weight = 0.0;
    std::map<std::size_t, std::size_t> degree_histogram;  ///< degree -> vertex count
    std::optional<std::size_t> diameter;                  ///< empty for an empty network
};

NetworkStats snapshot_stats(const SemanticNetwork& net, double now, double gamma);

/// Hop-count diameter of the largest connected component (ties: the
/// component holding the smallest TagId). Empty optional for empty networks.
std::optional<std::size_t> diameter(const SemanticNetwork& net);

/// Vertex degrees in ascending vertex order.
std::vector<std::size_t> degree_sequence(const SemanticNetwork& net);

}  // namespace cogsim
