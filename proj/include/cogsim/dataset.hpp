#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cogsim/catalog.hpp"
#include "cogsim/contact.hpp"
#include "cogsim/semantic_network.hpp"

namespace cogsim {

enum class Regime {
    d1,  ///< few tags per item, clustered around a handful of main concepts
    d2,  ///< many tags per item from one heavy-tailed vocabulary
};

std::string_view regime_name(Regime r) noexcept;
/// Accepts "d1", "d2", "d1-like", "d2-like". Throws ConfigError.
Regime parse_regime(std::string_view text);

struct DatasetConfig {
    Regime regime = Regime::d1;
    /// 0: sized from the node count (see items_for).
    std::uint32_t num_items = 0;
    std::uint32_t items_per_node = 4;
    std::uint32_t tags_per_item_lo = 2;
    std::uint32_t tags_per_item_hi = 4;
    /// d1 only. Number of topic clusters; see clusters_of.
    std::uint32_t num_main_concepts = 3;
    /// d1: local vocabulary size of each cluster (cycled if shorter than
    /// num_main_concepts). d2: first entry is the global vocabulary size.
    std::vector<std::uint32_t> tag_pool_sizes = {115, 115, 115};
    /// d1: share of each cluster's vocabulary drawn from a pool common to all
    /// clusters.
    double cross_cluster_tag_fraction = 0.08;
    /// Exponent of the power-law rank distribution tags are drawn from.
    double zipf_exponent = 0.5;
    /// Whether one item may be assigned to several nodes. Unset: off for d1,
    /// on for d2.
    std::optional<bool> duplicate_assignment;
    std::uint64_t seed = 1;

    bool duplicates() const noexcept { return duplicate_assignment.value_or(regime == Regime::d2); }

    /// Items to generate for `num_nodes` nodes: num_items when set, else
    /// enough for every node to get items_per_node distinct items (d1) or a
    /// shared pool of a quarter of that (d2).
    std::uint32_t items_for(std::size_t num_nodes) const;

    /// Throws ConfigError naming the offending field.
    void validate() const;

    /// Regime-specific defaults. The d1 set gives roughly 210 vertices, 460
    /// edges and diameter 4 for 50 nodes; the d2 set roughly 1200 vertices and
    /// 9000 edges.
    static DatasetConfig defaults(Regime regime);
};

/// Items plus the initial owner(s) of each.
struct Dataset {
    Catalog catalog;
    std::vector<std::vector<ItemId>> assignment;  ///< per node, ascending ids
};

/// Draws items and deals them to nodes. `node_community[n]` is node n's
/// community; its size is the number of nodes. Items no node receives are
/// discarded, so every catalog item has an initial owner.
Dataset generate_dataset(const DatasetConfig& cfg, std::span<const std::uint32_t> node_community);

/// Clusters whose d1 items a community draws from: cluster c belongs to
/// community (c mod num_communities) when there are more clusters than
/// communities, else community k draws from cluster (k mod num_main_concepts).
std::vector<std::uint32_t> clusters_of(std::uint32_t community, std::uint32_t num_communities,
                                       std::uint32_t num_main_concepts);

/// Label of main concept c / of local tag k of cluster c / of shared tag k
/// (d1), and of tag k (d2).
std::string main_concept_label(std::uint32_t c);
std::string local_tag_label(std::uint32_t c, std::uint32_t k);
std::string shared_tag_label(std::uint32_t k);
std::string global_tag_label(std::uint32_t k);

/// Zipf(s) over ranks 1..n by inverse-CDF lookup. Returns a rank in [0, n).
class ZipfSampler {
public:
    ZipfSampler(std::uint32_t n, double exponent);
    template <class R>
    std::uint32_t operator()(R& rng) const {
        return draw(rng.uniform01());
    }
    std::uint32_t draw(double u) const;
    double probability(std::uint32_t rank) const;

private:
    std::vector<double> cdf_;
};

/// Union graph of every node's initial network.
struct GlobalGraph {
    SemanticNetwork graph;
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
    std::optional<std::size_t> diameter;
};

GlobalGraph global_graph(std::span<const SemanticNetwork> initial_networks, double t0);

/// Initial networks built from a dataset's assignment.
std::vector<SemanticNetwork> initial_networks(const Dataset& data, double t0);

/// How strongly d1 clusters stay apart in the global graph. Vertices are
/// classed by cluster (main concept or cluster-local tag) or as shared.
struct ClusterReport {
    std::size_t cross_edges = 0;     ///< edges joining two different clusters
    std::size_t bridging_edges = 0;  ///< edges touching a shared tag
    /// Bound on bridging edges implied by the shared vocabulary: each shared
    /// tag can only co-occur with the tags of items that carry it.
    std::size_t bridging_bound = 0;
};

ClusterReport cluster_report(const Dataset& data, const SemanticNetwork& global);

// Files: dataset `<item_id> <tag> <tag> ...`, assignment `<node_id> <item_id> ...`,
// '#' comments allowed in both.

void save_items(std::ostream& out, const Catalog& catalog);
void save_assignment(std::ostream& out, const std::vector<std::vector<ItemId>>& assignment);
std::vector<RawItem> load_items(std::istream& in);
/// Node ids must be 0..n-1 (each at most once); missing nodes own nothing.
std::vector<std::vector<ItemId>> load_assignment(std::istream& in);

/// Loads both files and checks that every assigned id exists.
Dataset load_dataset(const std::filesystem::path& items, const std::filesystem::path& assignment);
void save_dataset(const Dataset& data, const std::filesystem::path& items,
                  const std::filesystem::path& assignment);

}  // namespace cogsim
